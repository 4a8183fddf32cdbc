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

#include <cstdint>
#include <string_view>
#include <variant>

#include "adastoch/core/linalg.hpp"
#include "adastoch/core/schedules.hpp"
#include "adastoch/models.hpp"

namespace adastoch {

struct IdentityKind {};

// Diagonal Adagrad with per-coordinate seeds a_k > 0.
struct AdagradKind {
  ParamVector a;
};

// Inverse of the running average of curvature_weight * x x^T, seeded by S0.
struct NewtonLinearKind {
  SymMatrix s0;
};

// As NewtonLinearKind plus a ridge injection sigma * d on one canonical
// coordinate per step, cycling through the coordinates.
struct NewtonGlmKind {
  SymMatrix s0;
  double sigma = 0.0;
};

// Inverse of the running average of gradient outer products, seeded by A0.
struct GaussNewtonKind {
  SymMatrix a0;
};

// As NewtonLinearKind plus a decaying ridge c_tilde * k^{-ridge_beta} on
// coordinate k mod d at the k-th update.
struct NewtonDecayingRidgeKind {
  SymMatrix s0;
  double c_tilde_beta = 0.0;
  double ridge_beta = 0.0;
};

using ConditionerKind =
    std::variant<IdentityKind, AdagradKind, NewtonLinearKind, NewtonGlmKind,
                 GaussNewtonKind, NewtonDecayingRidgeKind>;

std::string_view kind_name(const ConditionerKind& kind);
bool is_newton_family(const ConditionerKind& kind);

/// Running state behind the conditioning matrix A_n.
///
/// After n calls to update() the state represents A_n, built from samples
/// 1..n only. Newton-type kinds keep S_n^{-1}, the inverse of the
/// unnormalized sum S_n = S0 + sum of rank-one terms, so that
/// A_n = (n + 1) S_n^{-1}; every update is an exact Sherman-Morrison step.
/// Adagrad keeps accum_k = a_k + sum of squared gradient coordinates.
///
/// The effective matrix used by apply():
///   * Newton: s ((n+1) S_n^{-1} + shift I), with s = min(m, beta_{n+1}) / m
///     and m the norm of the bracket. `shift` is the eigenvalue-floor
///     correction, refreshed every 16 steps when a floor schedule is given.
///   * Adagrad: diag(1 / D_k) with
///       D_k = min(max(sqrt(accum_k / (n+1)), N^{-beta} / c_beta),
///                 N^{lambda'} / lambda'_0),   N = max(n, 1),
///     dropping the lower clip without truncation and the upper clip without
///     a floor schedule.
class ConditionerState {
 public:
  static constexpr std::uint64_t kFloorCheckInterval = 16;

  ConditionerState(ConditionerKind kind, Index dim);

  const ConditionerKind& kind() const { return kind_; }
  Index dim() const { return dim_; }
  std::uint64_t step_count() const { return count_; }

  // out = A_n v. May refresh the internal warm-start vector and, on floor
  // check steps, the floor shift.
  void apply(const ParamVector& v, std::uint64_t n, const Schedules& schedules,
             ParamVector& out);
  ParamVector apply(const ParamVector& v, std::uint64_t n,
                    const Schedules& schedules);

  // Advances A_n to A_{n+1}. `theta_pre` is the iterate at which `grad` was
  // evaluated on `s`, i.e. before the step that consumed `s`.
  void update(const Sample& s, const ParamVector& theta_pre,
              const ParamVector& grad, const ModelSpec& model);

  // Identity: 1. Adagrad: smallest effective diagonal entry (exact). Newton
  // family: smallest eigenvalue of the maintained (n+1) S_n^{-1} before
  // truncation, by power iteration on lambda_max I - A.
  double min_eigen_estimate(std::uint64_t n, const Schedules& schedules) const;

  // Dense copy of the matrix apply() multiplies by.
  SymMatrix effective_matrix(std::uint64_t n, const Schedules& schedules) const;

  // Newton family only.
  const SymMatrix& inverse_sum() const;
  Index ridge_index() const { return ridge_index_; }
  double floor_shift() const { return floor_shift_; }
  // Adagrad only.
  const ParamVector& accumulators() const;

 private:
  double adagrad_divisor(Index k, std::uint64_t n,
                         const Schedules& schedules) const;
  void refresh_floor(std::uint64_t n, const FloorSchedule& floor);

  ConditionerKind kind_;
  Index dim_;
  std::uint64_t count_ = 0;
  ParamVector accum_;
  SymMatrix s_inv_;
  Index ridge_index_ = 0;
  double floor_shift_ = 0.0;
  ParamVector top_vector_;
  ParamVector work_;
};

}  // namespace adastoch
