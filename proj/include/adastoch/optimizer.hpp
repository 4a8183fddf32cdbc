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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "adastoch/conditioners.hpp"
#include "adastoch/core/linalg.hpp"
#include "adastoch/core/rng.hpp"
#include "adastoch/core/schedules.hpp"
#include "adastoch/models.hpp"

namespace adastoch {

enum class RiskReference { theta_star, reference_minimizer, none };

struct RunOptions {
  std::uint64_t n_steps = 1;
  ParamVector theta0;
  bool averaging = false;
  // Strictly increasing, each in [1, n_steps].
  std::vector<std::uint64_t> checkpoints;
  RiskReference record_risk_against = RiskReference::theta_star;
};

/// Squared distances to the reference minimizer at each checkpoint.
///
/// A run whose iterate leaves the finite range (any |component| > 1e100 or
/// non-finite) stops there: `diverged_at` holds that step index and every
/// remaining checkpoint reads +infinity. With RiskReference::none the
/// distance arrays stay empty.
struct Trajectory {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> sq_dist;
  std::optional<std::vector<double>> sq_dist_avg;
  ParamVector final_theta;
  std::optional<ParamVector> final_theta_avg;
  std::optional<std::uint64_t> diverged_at;

  bool diverged() const { return diverged_at.has_value(); }
};

// What an observer sees after step n (theta is theta_n, state is A_n).
struct StepView {
  std::uint64_t n;
  const ParamVector& theta;
  const ConditionerState& state;
  const Schedules& schedules;
};
using StepObserver = std::function<void(const StepView&)>;

// Geometric checkpoint grid: round(start * factor^k), deduplicated, capped at
// `max`, and always ending at `max`.
std::vector<std::uint64_t> geometric_checkpoints(double start, double factor,
                                                 std::uint64_t max);

/// The adaptive recursion
///
///   theta_{n+1} = theta_n - gamma_{n+1} A_n grad g(X_{n+1}, theta_n),
///
/// for n = 0 .. n_steps - 1. Each step draws the sample, evaluates the
/// gradient, moves the iterate with the current A_n, updates the optional
/// average (theta_bar_{n+1} = theta_bar_n + (theta_{n+1} - theta_bar_n)/(n+2))
/// and only then feeds the sample to the conditioner, so A_n never sees
/// X_{n+1}.
Trajectory run(const ModelSpec& model, const ConditionerKind& kind,
               const Schedules& schedules, const RunOptions& opts,
               RngStream& stream, const StepObserver& observer = {});

// Same recursion on a fixed sample sequence; needs samples.size() >= n_steps.
Trajectory run_scripted(const ModelSpec& model, const ConditionerKind& kind,
                        const Schedules& schedules, const RunOptions& opts,
                        std::span<const Sample> samples,
                        const StepObserver& observer = {});

}  // namespace adastoch
