/* Copyright 2026 The adastoch Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include "adastoch/core/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "adastoch/error.hpp"

namespace adastoch {

namespace {

constexpr double kRelativeTolerance = 1e-12;
// Plain power steps allowed before switching to a full Krylov Ritz solve.
constexpr Index kPowerStepsPerDim = 40;

void require_same_dim(const SymMatrix& a, const ParamVector& v,
                      const char* what) {
  if (a.dim() != v.size()) {
    throw ContractViolation(std::string(what) + ": dimension mismatch (" +
                            std::to_string(a.dim()) + " vs " +
                            std::to_string(v.size()) + ")");
  }
}

ParamVector canonical_start(Index d) {
  ParamVector v = ParamVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  v(0) += 1e-9;
  return v;
}

// Max |eigenvalue| of [[a, b], [b, c]] and a matching unit eigenvector.
double max_abs_eig_2x2(double a, double b, double c, double& y0, double& y1) {
  const double mean = 0.5 * (a + c);
  const double radius = std::hypot(0.5 * (a - c), b);
  const double lambda = mean >= 0.0 ? mean + radius : mean - radius;
  // (T - lambda I) y = 0; pick the better-conditioned row.
  const double r0a = b, r0b = lambda - a;
  const double r1a = lambda - c, r1b = b;
  if (std::hypot(r0a, r0b) >= std::hypot(r1a, r1b)) {
    y0 = r0a;
    y1 = r0b;
  } else {
    y0 = r1a;
    y1 = r1b;
  }
  const double n = std::hypot(y0, y1);
  if (n == 0.0) {
    y0 = 1.0;
    y1 = 0.0;
  } else {
    y0 /= n;
    y1 /= n;
  }
  return std::abs(lambda);
}

// Rayleigh-Ritz over the Krylov space of v (full reorthogonalization). When
// the space reaches dimension d the Ritz values are the eigenvalues of a, so
// the result does not depend on the spectral gap.
double krylov_ritz(const SymMatrix& a, ParamVector& v) {
  const Index d = a.dim();
  Eigen::MatrixXd q(d, d);
  q.col(0) = v.normalized();
  ParamVector w(d);
  Index k = 1;
  for (; k < d; ++k) {
    a.multiply(q.col(k - 1), w);
    const double scale = w.norm();
    for (int pass = 0; pass < 2; ++pass) {
      w -= q.leftCols(k) * (q.leftCols(k).transpose() * w);
    }
    const double norm = w.norm();
    if (!(norm > 1e-13 * scale)) break;  // invariant subspace reached
    q.col(k) = w / norm;
  }
  const auto basis = q.leftCols(k);
  Eigen::MatrixXd t = basis.transpose() * a.dense() * basis;
  t = 0.5 * (t + t.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  if (es.info() != Eigen::Success) {
    throw NumericalError("spectral_norm: Krylov eigen solve failed");
  }
  Index best = 0;
  es.eigenvalues().cwiseAbs().maxCoeff(&best);
  v = basis * es.eigenvectors().col(best);
  v.normalize();
  return std::abs(es.eigenvalues()(best));
}

}  // namespace

SymMatrix::SymMatrix(Index dim) : a_(Eigen::MatrixXd::Zero(dim, dim)) {
  if (dim < 1) throw ContractViolation("SymMatrix: dimension must be >= 1");
}

SymMatrix SymMatrix::identity(Index dim) {
  SymMatrix m(dim);
  m.a_.diagonal().setOnes();
  return m;
}

SymMatrix SymMatrix::diagonal(const ParamVector& diag) {
  SymMatrix m(diag.size());
  m.a_.diagonal() = diag;
  return m;
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& dense) {
  if (dense.rows() != dense.cols() || dense.rows() < 1) {
    throw ContractViolation("SymMatrix: input must be square and non-empty");
  }
  if (dense != dense.transpose()) {
    throw ContractViolation("SymMatrix: input is not exactly symmetric");
  }
  SymMatrix m;
  m.a_ = dense;
  return m;
}

void SymMatrix::multiply(const ParamVector& v, ParamVector& out) const {
  out.resize(a_.rows());
  out.noalias() = a_ * v;
}

ParamVector SymMatrix::operator*(const ParamVector& v) const {
  require_same_dim(*this, v, "SymMatrix::operator*");
  ParamVector out;
  multiply(v, out);
  return out;
}

SymMatrix SymMatrix::scaled(double factor) const {
  SymMatrix m = *this;
  m.scale(factor);
  return m;
}

void SymMatrix::scale(double factor) { a_ *= factor; }

void SymMatrix::add_to_diagonal(double value) {
  a_.diagonal().array() += value;
}

void SymMatrix::add_outer(double c, const ParamVector& w) {
  const Index d = a_.rows();
  for (Index j = 0; j < d; ++j) {
    const double wj = w(j);
    a_(j, j) += c * (wj * wj);
    for (Index i = j + 1; i < d; ++i) {
      const double value = a_(i, j) + c * (w(i) * wj);
      a_(i, j) = value;
      a_(j, i) = value;
    }
  }
}

bool SymMatrix::is_diagonal() const {
  const Index d = a_.rows();
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      if (i != j && a_(i, j) != 0.0) return false;
    }
  }
  return true;
}

bool SymMatrix::all_finite() const { return a_.allFinite(); }

double spectral_norm(const SymMatrix& a) {
  ParamVector start = canonical_start(a.dim());
  return spectral_norm(a, start);
}

double spectral_norm(const SymMatrix& a, ParamVector& start) {
  const Index d = a.dim();
  if (d < 1) throw ContractViolation("spectral_norm: empty matrix");
  require_same_dim(a, start, "spectral_norm");
  if (!a.all_finite()) throw NumericalError("spectral_norm: non-finite input");
  if (a.is_diagonal()) {
    Index k = 0;
    const double value = a.dense().diagonal().cwiseAbs().maxCoeff(&k);
    start.setZero();
    start(k) = 1.0;
    return value;
  }

  ParamVector v = start;
  double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    v = canonical_start(d);
    norm = v.norm();
  }
  v /= norm;

  ParamVector w(d);
  double previous = -1.0;
  double estimate = 0.0;
  bool converged = false;
  const Index cap = kPowerStepsPerDim * d;
  for (Index it = 0; it < cap; ++it) {
    a.multiply(v, w);
    estimate = w.norm();
    if (estimate == 0.0) {
      // v fell into the null space of a non-zero matrix; restart elsewhere.
      v.setZero();
      v(it % d) = 1.0;
      continue;
    }
    v = w / estimate;
    if (std::abs(estimate - previous) <= kRelativeTolerance * estimate) {
      converged = true;
      break;
    }
    previous = estimate;
  }
  if (!converged) {
    // Slow convergence means nearly tied top eigenvalues.
    estimate = krylov_ritz(a, v);
    if (!std::isfinite(estimate)) {
      throw NumericalError("spectral_norm: no convergence (non-finite estimate)");
    }
  }

  // Rayleigh-Ritz on span{v, A v}. Ritz values never leave the spectrum's
  // hull, so this can only move the estimate towards the true norm.
  a.multiply(v, w);
  const double alpha = v.dot(w);
  ParamVector q2 = w - alpha * v;
  q2 -= v.dot(q2) * v;
  const double q2_norm = q2.norm();
  if (q2_norm > 1e-14 * estimate) {
    q2 /= q2_norm;
    ParamVector aq2(d);
    a.multiply(q2, aq2);
    double y0 = 1.0, y1 = 0.0;
    const double ritz =
        max_abs_eig_2x2(alpha, v.dot(aq2), q2.dot(aq2), y0, y1);
    if (ritz > estimate) {
      estimate = ritz;
      v = y0 * v + y1 * q2;
      v.normalize();
    }
  }
  start = v;
  return estimate;
}

double min_eigenvalue(const SymMatrix& a) {
  if (a.is_diagonal()) return a.dense().diagonal().minCoeff();
  const double top = spectral_norm(a);
  SymMatrix shifted = a.scaled(-1.0);
  shifted.add_to_diagonal(top);
  return top - spectral_norm(shifted);
}

SymMatrix truncate_spectral(const SymMatrix& a, double bound) {
  if (!(bound > 0.0)) {
    throw ContractViolation("truncate_spectral: bound must be > 0");
  }
  const double norm = spectral_norm(a);
  if (norm == 0.0 || norm <= bound) return a;
  return a.scaled(bound / norm);
}

void rank_one_inverse_update_in_place(SymMatrix& s_inv, const ParamVector& u,
                                      double c, ParamVector& work) {
  require_same_dim(s_inv, u, "rank_one_inverse_update");
  if (!(c >= 0.0)) {
    throw ContractViolation("rank_one_inverse_update: c must be >= 0");
  }
  if (c == 0.0) return;
  s_inv.multiply(u, work);
  const double denom = 1.0 + c * u.dot(work);
  s_inv.add_outer(-c / denom, work);
}

void rank_one_inverse_update_basis(SymMatrix& s_inv, Index k, double c,
                                   ParamVector& work) {
  if (k < 0 || k >= s_inv.dim()) {
    throw ContractViolation("rank_one_inverse_update: basis index out of range");
  }
  if (!(c >= 0.0)) {
    throw ContractViolation("rank_one_inverse_update: c must be >= 0");
  }
  if (c == 0.0) return;
  work = s_inv.dense().col(k);
  const double denom = 1.0 + c * work(k);
  s_inv.add_outer(-c / denom, work);
}

SymMatrix rank_one_inverse_update(const SymMatrix& s_inv, const ParamVector& u,
                                  double c) {
  SymMatrix out = s_inv;
  ParamVector work;
  rank_one_inverse_update_in_place(out, u, c, work);
  return out;
}

}  // namespace adastoch
