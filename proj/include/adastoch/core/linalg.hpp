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

#pragma once

#include <Eigen/Core>

namespace adastoch {

using Index = Eigen::Index;

// Dense parameter-space vector (iterates, samples, gradients).
using ParamVector = Eigen::VectorXd;

// Dense symmetric matrix in full square storage.
//
// Symmetry is maintained exactly: every mutator writes the (i, j) and (j, i)
// entries from the same computed value, so a(i, j) == a(j, i) bit-for-bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Index dim);

  static SymMatrix identity(Index dim);
  static SymMatrix diagonal(const ParamVector& diag);
  // Throws ContractViolation unless `dense` is square and exactly symmetric.
  static SymMatrix from_dense(const Eigen::MatrixXd& dense);

  Index dim() const { return a_.rows(); }
  double operator()(Index i, Index j) const { return a_(i, j); }
  const Eigen::MatrixXd& dense() const { return a_; }

  // out = A v. `out` must not alias `v`.
  void multiply(const ParamVector& v, ParamVector& out) const;
  ParamVector operator*(const ParamVector& v) const;

  SymMatrix scaled(double factor) const;
  void scale(double factor);
  void add_to_diagonal(double value);
  // A += c * w w^T.
  void add_outer(double c, const ParamVector& w);

  bool is_diagonal() const;
  bool all_finite() const;

  friend bool operator==(const SymMatrix& x, const SymMatrix& y) {
    return x.a_.rows() == y.a_.rows() && x.a_ == y.a_;
  }

 private:
  Eigen::MatrixXd a_;
};

/// Largest eigenvalue magnitude of a symmetric matrix by power iteration.
///
/// The iteration starts from the normalized all-ones vector with 1e-9 added
/// to coordinate 0, tracks ||A v|| for unit v, and stops once successive
/// estimates agree to 1e-12 relative. A final Rayleigh-Ritz step on
/// span{v, A v} sharpens the estimate. Diagonal inputs short-circuit to the
/// exact max |a_ii|. If 40 d power steps do not settle (nearly tied top
/// eigenvalues), the estimate comes from a Rayleigh-Ritz solve over the full
/// Krylov space of the iterate instead. Throws NumericalError on non-finite
/// input.
double spectral_norm(const SymMatrix& a);

// Same as above, but starts from `start` (any non-zero vector) and overwrites
// it with the final unit iterate so that a slowly changing matrix can be
// re-normed in a few iterations.
double spectral_norm(const SymMatrix& a, ParamVector& start);

// Smallest eigenvalue of a positive semidefinite matrix: power iteration on
// lambda_max I - A.
double min_eigenvalue(const SymMatrix& a);

// Rescales A by min(||A||, bound) / ||A||. Returns A unchanged (bit-for-bit)
// when ||A|| <= bound or A is zero. Requires bound > 0.
SymMatrix truncate_spectral(const SymMatrix& a, double bound);

/// Inverse of S + c u u^T given S^{-1}, via Sherman-Morrison:
///
///   (S + c u u^T)^{-1} = S^{-1} - c / (1 + c u^T S^{-1} u) (S^{-1} u)(S^{-1} u)^T
///
/// For positive definite S and c >= 0 the denominator is at least one.
SymMatrix rank_one_inverse_update(const SymMatrix& s_inv, const ParamVector& u,
                                  double c);

// In-place form used on hot paths. `work` is scratch space of any size.
void rank_one_inverse_update_in_place(SymMatrix& s_inv, const ParamVector& u,
                                      double c, ParamVector& work);

// Unit-vector-free variant for u = e_k: O(d^2) with no matvec.
void rank_one_inverse_update_basis(SymMatrix& s_inv, Index k, double c,
                                   ParamVector& work);

}  // namespace adastoch
