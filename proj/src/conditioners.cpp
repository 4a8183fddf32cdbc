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

#include "adastoch/conditioners.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
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

SymMatrix checked_inverse(const SymMatrix& s0, Index dim, const char* what) {
  if (s0.dim() != dim) {
    throw ContractViolation(std::string(what) + ": initial matrix has dimension " +
                            std::to_string(s0.dim()) + ", expected " +
                            std::to_string(dim));
  }
  Eigen::LLT<Eigen::MatrixXd> chol(s0.dense());
  if (chol.info() != Eigen::Success || !s0.all_finite()) {
    throw ContractViolation(std::string(what) +
                            ": initial matrix must be symmetric positive definite");
  }
  const Eigen::MatrixXd inv = chol.solve(Eigen::MatrixXd::Identity(dim, dim));
  return SymMatrix::from_dense(0.5 * (inv + inv.transpose()));
}

}  // namespace

std::string_view kind_name(const ConditionerKind& kind) {
  return std::visit(
      Overloaded{
          [](const IdentityKind&) { return std::string_view("identity"); },
          [](const AdagradKind&) { return std::string_view("adagrad"); },
          [](const NewtonLinearKind&) { return std::string_view("newton_linear"); },
          [](const NewtonGlmKind&) { return std::string_view("newton_glm"); },
          [](const GaussNewtonKind&) { return std::string_view("gauss_newton"); },
          [](const NewtonDecayingRidgeKind&) {
            return std::string_view("newton_decaying_ridge");
          },
      },
      kind);
}

bool is_newton_family(const ConditionerKind& kind) {
  return !std::holds_alternative<IdentityKind>(kind) &&
         !std::holds_alternative<AdagradKind>(kind);
}

ConditionerState::ConditionerState(ConditionerKind kind, Index dim)
    : kind_(std::move(kind)), dim_(dim) {
  if (dim < 1) throw ContractViolation("conditioner: dimension must be >= 1");
  std::visit(
      Overloaded{
          [](const IdentityKind&) {},
          [&](const AdagradKind& k) {
            if (k.a.size() != dim) {
              throw ContractViolation("adagrad: seed vector has wrong dimension");
            }
            if (!(k.a.array() > 0.0).all() || !k.a.allFinite()) {
              throw ContractViolation("adagrad: seeds a_k must be > 0");
            }
            accum_ = k.a;
          },
          [&](const NewtonLinearKind& k) {
            s_inv_ = checked_inverse(k.s0, dim, "newton_linear");
          },
          [&](const NewtonGlmKind& k) {
            if (!(k.sigma > 0.0)) {
              throw ContractViolation("newton_glm: sigma must be > 0");
            }
            s_inv_ = checked_inverse(k.s0, dim, "newton_glm");
          },
          [&](const GaussNewtonKind& k) {
            s_inv_ = checked_inverse(k.a0, dim, "gauss_newton");
          },
          [&](const NewtonDecayingRidgeKind& k) {
            if (!(k.c_tilde_beta > 0.0) || !(k.ridge_beta > 0.0)) {
              throw ContractViolation(
                  "newton_decaying_ridge: c_tilde_beta and ridge_beta must be > 0");
            }
            s_inv_ = checked_inverse(k.s0, dim, "newton_decaying_ridge");
          },
      },
      kind_);
  top_vector_ = ParamVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  top_vector_(0) += 1e-9;
  work_.resize(dim);
}

double ConditionerState::adagrad_divisor(Index k, std::uint64_t n,
                                         const Schedules& schedules) const {
  double divisor = std::sqrt(accum_(k) / (static_cast<double>(n) + 1.0));
  const double clip_index = static_cast<double>(std::max<std::uint64_t>(n, 1));
  if (schedules.trunc) {
    const double lower = std::pow(clip_index, -schedules.trunc->beta()) /
                         schedules.trunc->c_beta();
    divisor = std::max(divisor, lower);
  }
  if (schedules.floor) {
    const double upper = std::pow(clip_index, schedules.floor->lambda_prime()) /
                         schedules.floor->lambda0_prime();
    divisor = std::min(divisor, upper);
  }
  return divisor;
}

void ConditionerState::refresh_floor(std::uint64_t n, const FloorSchedule& floor) {
  const double lambda_min =
      min_eigenvalue(s_inv_.scaled(static_cast<double>(n) + 1.0));
  floor_shift_ = std::max(0.0, floor_at(floor, n) - lambda_min);
}

void ConditionerState::apply(const ParamVector& v, std::uint64_t n,
                             const Schedules& schedules, ParamVector& out) {
  if (v.size() != dim_) throw ContractViolation("apply: dimension mismatch");
  out.resize(dim_);
  if (std::holds_alternative<IdentityKind>(kind_)) {
    out = v;
    return;
  }
  if (std::holds_alternative<AdagradKind>(kind_)) {
    for (Index k = 0; k < dim_; ++k) out(k) = v(k) / adagrad_divisor(k, n, schedules);
    return;
  }

  if (schedules.floor && n % kFloorCheckInterval == 0) {
    refresh_floor(n, *schedules.floor);
  }
  const double base = static_cast<double>(n) + 1.0;
  s_inv_.multiply(v, out);
  out *= base;
  if (floor_shift_ > 0.0) out += floor_shift_ * v;
  if (schedules.trunc) {
    const double m = base * spectral_norm(s_inv_, top_vector_) + floor_shift_;
    const double bound = trunc_bound_at(*schedules.trunc, n + 1);
    if (m > bound) out *= bound / m;
  }
}

ParamVector ConditionerState::apply(const ParamVector& v, std::uint64_t n,
                                    const Schedules& schedules) {
  ParamVector out;
  apply(v, n, schedules, out);
  return out;
}

void ConditionerState::update(const Sample& s, const ParamVector& theta_pre,
                              const ParamVector& grad, const ModelSpec& model) {
  if (grad.size() != dim_ || s.x.size() != dim_) {
    throw ContractViolation("conditioner update: dimension mismatch");
  }
  ++count_;
  std::visit(
      Overloaded{
          [](const IdentityKind&) {},
          [&](const AdagradKind&) { accum_.array() += grad.array().square(); },
          [&](const NewtonLinearKind&) {
            rank_one_inverse_update_in_place(
                s_inv_, s.x, curvature_weight(model, s, theta_pre), work_);
          },
          [&](const NewtonGlmKind& k) {
            rank_one_inverse_update_in_place(
                s_inv_, s.x, curvature_weight(model, s, theta_pre), work_);
            rank_one_inverse_update_basis(
                s_inv_, ridge_index_, k.sigma * static_cast<double>(dim_), work_);
            ridge_index_ = (ridge_index_ + 1) % dim_;
          },
          [&](const GaussNewtonKind&) {
            rank_one_inverse_update_in_place(s_inv_, grad, 1.0, work_);
          },
          [&](const NewtonDecayingRidgeKind& k) {
            rank_one_inverse_update_in_place(
                s_inv_, s.x, curvature_weight(model, s, theta_pre), work_);
            const double step = static_cast<double>(count_);
            rank_one_inverse_update_basis(
                s_inv_, static_cast<Index>(count_ % static_cast<std::uint64_t>(dim_)),
                k.c_tilde_beta * std::pow(step, -k.ridge_beta), work_);
          },
      },
      kind_);
}

double ConditionerState::min_eigen_estimate(std::uint64_t n,
                                            const Schedules& schedules) const {
  if (std::holds_alternative<IdentityKind>(kind_)) return 1.0;
  if (std::holds_alternative<AdagradKind>(kind_)) {
    double smallest = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < dim_; ++k) {
      smallest = std::min(smallest, 1.0 / adagrad_divisor(k, n, schedules));
    }
    return smallest;
  }
  return min_eigenvalue(s_inv_.scaled(static_cast<double>(n) + 1.0));
}

SymMatrix ConditionerState::effective_matrix(std::uint64_t n,
                                             const Schedules& schedules) const {
  if (std::holds_alternative<IdentityKind>(kind_)) return SymMatrix::identity(dim_);
  if (std::holds_alternative<AdagradKind>(kind_)) {
    ParamVector diag(dim_);
    for (Index k = 0; k < dim_; ++k) diag(k) = 1.0 / adagrad_divisor(k, n, schedules);
    return SymMatrix::diagonal(diag);
  }
  const double base = static_cast<double>(n) + 1.0;
  SymMatrix a = s_inv_.scaled(base);
  a.add_to_diagonal(floor_shift_);
  if (schedules.trunc) {
    ParamVector start = top_vector_;
    const double m = base * spectral_norm(s_inv_, start) + floor_shift_;
    const double bound = trunc_bound_at(*schedules.trunc, n + 1);
    if (m > bound) a.scale(bound / m);
  }
  return a;
}

const SymMatrix& ConditionerState::inverse_sum() const {
  if (!is_newton_family(kind_)) {
    throw ContractViolation("inverse_sum: not a Newton-type conditioner");
  }
  return s_inv_;
}

const ParamVector& ConditionerState::accumulators() const {
  if (!std::holds_alternative<AdagradKind>(kind_)) {
    throw ContractViolation("accumulators: not an Adagrad conditioner");
  }
  return accum_;
}

}  // namespace adastoch
