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

#include "adastoch/models.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "adastoch/error.hpp"

namespace adastoch {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dim(Index expected, Index got, const char* what) {
  if (expected != got) {
    throw ContractViolation(std::string(what) + ": dimension mismatch (" +
                            std::to_string(expected) + " vs " +
                            std::to_string(got) + ")");
  }
}

SymMatrix symmetrized(const Eigen::MatrixXd& m) {
  // (a + b) and (b + a) round identically, so the result is exactly symmetric.
  return SymMatrix::from_dense(0.5 * (m + m.transpose()));
}

void draw_design(const Design& design, RngStream& stream, ParamVector& x) {
  thread_local ParamVector scaled;
  const Index d = design.sqrt_eigs.size();
  scaled.resize(d);
  for (Index k = 0; k < d; ++k) scaled(k) = design.sqrt_eigs(k) * stream.gaussian();
  design.rotation.multiply(scaled, x);
}

double draw_noise(const LinearModelSpec& spec, RngStream& stream) {
  if (spec.noise_kind == NoiseKind::gaussian) {
    return spec.noise_std * stream.gaussian();
  }
  const double z = stream.gaussian();
  double chi2 = 0.0;
  for (int i = 0; i < spec.noise_df; ++i) {
    const double g = stream.gaussian();
    chi2 += g * g;
  }
  const double df = spec.noise_df;
  const double t = z / std::sqrt(chi2 / df);
  return spec.noise_std * t * std::sqrt((df - 2.0) / df);
}

}  // namespace

Design make_design(Index d, double kappa) {
  if (d < 1) throw ContractViolation("make_design: d must be >= 1");
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
    throw ContractViolation("make_design: kappa must be >= 1");
  }
  ParamVector eigs(d);
  for (Index k = 0; k < d; ++k) {
    eigs(k) = d == 1 ? 1.0
                     : std::pow(kappa, -static_cast<double>(k) /
                                           static_cast<double>(d - 1));
  }
  Eigen::MatrixXd q(d, d);
  const double off = 2.0 / static_cast<double>(d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) q(i, j) = (i == j ? 1.0 : 0.0) - off;
  }
  return make_design(SymMatrix::from_dense(q), eigs);
}

Design make_design(const SymMatrix& rotation, const ParamVector& eigs) {
  const Index d = rotation.dim();
  require_dim(d, eigs.size(), "make_design");
  if (!(eigs.array() > 0.0).all() || !eigs.allFinite()) {
    throw ContractViolation("make_design: eigenvalues must be positive");
  }
  const Eigen::MatrixXd& q = rotation.dense();
  if (!(q * q - Eigen::MatrixXd::Identity(d, d)).isZero(1e-12)) {
    throw ContractViolation("make_design: rotation is not orthogonal");
  }
  Design design{rotation, eigs.cwiseSqrt(),
                symmetrized(q * eigs.asDiagonal() * q)};
  Eigen::LLT<Eigen::MatrixXd> chol(design.covariance.dense());
  if (chol.info() != Eigen::Success) {
    throw ContractViolation("make_design: covariance is not positive definite");
  }
  return design;
}

LinearModelSpec make_linear_model(ParamVector theta_star, Design design,
                                  double noise_std, NoiseKind noise_kind,
                                  int noise_df) {
  require_dim(design.covariance.dim(), theta_star.size(), "make_linear_model");
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) {
    throw ContractViolation("make_linear_model: noise_std must be >= 0");
  }
  if (noise_kind == NoiseKind::student_t && noise_df <= 4) {
    throw ContractViolation(
        "make_linear_model: Student-t noise needs df > 4 (finite 4th moment)");
  }
  return LinearModelSpec{std::move(theta_star), std::move(design), noise_std,
                         noise_kind, noise_df};
}

GlmRidgeSpec make_glm_model(ParamVector theta_gen, Design design,
                            double sigma) {
  require_dim(design.covariance.dim(), theta_gen.size(), "make_glm_model");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ContractViolation("make_glm_model: sigma must be > 0");
  }
  return GlmRidgeSpec{std::move(theta_gen), std::move(design), sigma,
                      std::nullopt};
}

Index dim(const ModelSpec& model) {
  return std::visit(
      Overloaded{
          [](const LinearModelSpec& m) { return m.theta_star.size(); },
          [](const GlmRidgeSpec& m) { return m.theta_gen.size(); },
          [](const FloorPathSpec&) { return Index{1}; },
      },
      model);
}

void sample_into(const ModelSpec& model, RngStream& stream, Sample& out) {
  std::visit(
      Overloaded{
          [&](const LinearModelSpec& m) {
            draw_design(m.design, stream, out.x);
            out.y = out.x.dot(m.theta_star) + draw_noise(m, stream);
          },
          [&](const GlmRidgeSpec& m) {
            draw_design(m.design, stream, out.x);
            const double p = 1.0 / (1.0 + std::exp(-m.theta_gen.dot(out.x)));
            out.y = stream.uniform() < p ? 1.0 : -1.0;
          },
          [&](const FloorPathSpec&) {
            out.x.resize(1);
            out.x(0) = stream.uniform() < 0.5 ? 1.0 : 0.0;
            out.y = stream.uniform() < 0.5 ? 1.0 : -1.0;
          },
      },
      model);
}

Sample sample(const ModelSpec& model, RngStream& stream) {
  Sample s;
  sample_into(model, stream, s);
  return s;
}

double logistic_loss(double y, double margin) {
  const double z = -y * margin;
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double logistic_grad(double y, double margin) {
  return -y / (1.0 + std::exp(y * margin));
}

double logistic_hess_weight(double margin) {
  const double w =
      (1.0 / (1.0 + std::exp(margin))) * (1.0 / (1.0 + std::exp(-margin)));
  return std::max(w, 1e-300);
}

double loss(const ModelSpec& model, const Sample& s, const ParamVector& h) {
  require_dim(dim(model), h.size(), "loss");
  require_dim(dim(model), s.x.size(), "loss");
  return std::visit(
      Overloaded{
          [&](const LinearModelSpec&) {
            const double r = s.y - s.x.dot(h);
            return 0.5 * r * r;
          },
          [&](const GlmRidgeSpec& m) {
            return logistic_loss(s.y, s.x.dot(h)) + 0.5 * m.sigma * h.squaredNorm();
          },
          [&](const FloorPathSpec&) {
            const double xh = s.x(0) * h(0);
            return xh * xh + s.y * std::floor(h(0)) * h(0);
          },
      },
      model);
}

void stoch_grad_into(const ModelSpec& model, const Sample& s,
                     const ParamVector& h, ParamVector& out) {
  const Index d = dim(model);
  require_dim(d, h.size(), "stoch_grad");
  require_dim(d, s.x.size(), "stoch_grad");
  out.resize(d);
  std::visit(
      Overloaded{
          [&](const LinearModelSpec&) {
            out = -(s.y - s.x.dot(h)) * s.x;
          },
          [&](const GlmRidgeSpec& m) {
            out = logistic_grad(s.y, s.x.dot(h)) * s.x + m.sigma * h;
          },
          [&](const FloorPathSpec&) {
            out(0) = 2.0 * s.x(0) * s.x(0) * h(0) + s.y * std::floor(h(0));
          },
      },
      model);
}

ParamVector stoch_grad(const ModelSpec& model, const Sample& s,
                       const ParamVector& h) {
  ParamVector out;
  stoch_grad_into(model, s, h, out);
  return out;
}

double hess_weight(const GlmRidgeSpec& spec, const Sample& s,
                   const ParamVector& h) {
  require_dim(spec.theta_gen.size(), h.size(), "hess_weight");
  return logistic_hess_weight(s.x.dot(h));
}

double curvature_weight(const ModelSpec& model, const Sample& s,
                        const ParamVector& h) {
  return std::visit(
      Overloaded{
          [](const LinearModelSpec&) { return 1.0; },
          [&](const GlmRidgeSpec& m) { return hess_weight(m, s, h); },
          [](const FloorPathSpec&) { return 2.0; },
      },
      model);
}

ParamVector risk_minimizer(const ModelSpec& model) {
  return std::visit(
      Overloaded{
          [](const LinearModelSpec& m) { return ParamVector(m.theta_star); },
          [](const GlmRidgeSpec& m) {
            if (!m.reference) {
              throw ContractViolation(
                  "risk_minimizer: GLM spec has no pinned reference minimizer");
            }
            return ParamVector(m.reference->theta);
          },
          [](const FloorPathSpec&) { return ParamVector(ParamVector::Zero(1)); },
      },
      model);
}

MinimizerReference minimizer_reference(const GlmRidgeSpec& spec,
                                       std::uint64_t n_ref,
                                       std::uint64_t seed) {
  if (n_ref < 100000) {
    throw ContractViolation("minimizer_reference: n_ref must be >= 1e5");
  }
  const Index d = spec.theta_gen.size();
  const Index n = static_cast<Index>(n_ref);
  const ModelSpec model = spec;

  Eigen::MatrixXd xs(d, n);
  Eigen::VectorXd ys(n);
  {
    RngStream stream(seed, 0);
    Sample s;
    for (Index i = 0; i < n; ++i) {
      sample_into(model, stream, s);
      xs.col(i) = s.x;
      ys(i) = s.y;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);

  auto objective = [&](const ParamVector& theta) {
    const Eigen::VectorXd margins = xs.transpose() * theta;
    double total = 0.0;
    for (Index i = 0; i < n; ++i) total += logistic_loss(ys(i), margins(i));
    return total * inv_n + 0.5 * spec.sigma * theta.squaredNorm();
  };
  // Per-sample loss derivatives in the margin, and Hessian weights.
  Eigen::VectorXd dl(n), w(n);
  auto derivatives = [&](const ParamVector& theta) {
    const Eigen::VectorXd margins = xs.transpose() * theta;
    for (Index i = 0; i < n; ++i) {
      dl(i) = logistic_grad(ys(i), margins(i));
      w(i) = logistic_hess_weight(margins(i));
    }
  };
  auto hessian = [&](const ParamVector&) {
    Eigen::MatrixXd h = inv_n * (xs * w.asDiagonal() * xs.transpose());
    h.diagonal().array() += spec.sigma;
    return h;
  };

  ParamVector theta = ParamVector::Zero(d);
  constexpr int kMaxSteps = 200;
  int steps = 0;
  for (;; ++steps) {
    derivatives(theta);
    const ParamVector grad = inv_n * (xs * dl) + spec.sigma * theta;
    const double grad_norm = grad.norm();
    if (grad_norm < 1e-10) break;
    if (steps == kMaxSteps) {
      throw NumericalError(
          "minimizer_reference: damped Newton did not converge in 200 steps "
          "(gradient norm " + std::to_string(grad_norm) + ")");
    }
    const Eigen::MatrixXd h = hessian(theta);
    const ParamVector direction = -h.llt().solve(grad);
    double t = 1.0;
    // Near the optimum objective differences drown in rounding, so the
    // line search only guards the global phase.
    if (grad_norm > 1e-6) {
      const double f0 = objective(theta);
      const double slope = grad.dot(direction);
      while (t > 1e-12 && objective(theta + t * direction) > f0 + 1e-4 * t * slope) {
        t *= 0.5;
      }
    }
    theta += t * direction;
  }

  derivatives(theta);
  const Eigen::MatrixXd h = hessian(theta);
  Eigen::MatrixXd per_sample = xs * dl.asDiagonal();
  per_sample.colwise() += spec.sigma * theta;
  const Eigen::MatrixXd sigma_hat = inv_n * (per_sample * per_sample.transpose());
  const Eigen::MatrixXd h_inv = h.llt().solve(Eigen::MatrixXd::Identity(d, d));
  const double trace = (h_inv * sigma_hat * h_inv).trace();
  return MinimizerReference{theta, 3.0 * std::sqrt(trace * inv_n), steps};
}

LinearDiagnostics model_diagnostics(const LinearModelSpec& spec) {
  const SymMatrix& h = spec.design.covariance;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h.dense(),
                                                     Eigen::EigenvaluesOnly);
  const ParamVector& values = eig.eigenvalues();
  return LinearDiagnostics{
      values.minCoeff(), values.maxCoeff(), h,
      spec.noise_std * spec.noise_std * values.cwiseInverse().sum()};
}

}  // namespace adastoch
