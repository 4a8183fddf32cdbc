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

#include "adastoch/optimizer.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "adastoch/error.hpp"

namespace adastoch {

namespace {

constexpr double kDivergenceThreshold = 1e100;

void validate_options(const RunOptions& opts, Index d) {
  if (opts.n_steps < 1) throw ContractViolation("run: n_steps must be >= 1");
  if (opts.theta0.size() != d) {
    throw ContractViolation("run: theta0 has dimension " +
                            std::to_string(opts.theta0.size()) + ", model has " +
                            std::to_string(d));
  }
  std::uint64_t previous = 0;
  for (std::uint64_t c : opts.checkpoints) {
    if (c <= previous || c > opts.n_steps) {
      throw ContractViolation(
          "run: checkpoints must be strictly increasing within [1, n_steps]");
    }
    previous = c;
  }
}

bool out_of_range(const ParamVector& theta) {
  if (!theta.allFinite()) return true;
  return theta.size() > 0 && theta.cwiseAbs().maxCoeff() > kDivergenceThreshold;
}

template <class DrawSample>
Trajectory run_impl(const ModelSpec& model, const ConditionerKind& kind,
                    const Schedules& schedules, const RunOptions& opts,
                    DrawSample&& draw, const StepObserver& observer) {
  const Index d = dim(model);
  validate_options(opts, d);

  const bool record = opts.record_risk_against != RiskReference::none;
  const ParamVector reference = record ? risk_minimizer(model) : ParamVector();

  Trajectory traj;
  if (record) {
    traj.checkpoints = opts.checkpoints;
    traj.sq_dist.reserve(opts.checkpoints.size());
    if (opts.averaging) traj.sq_dist_avg.emplace().reserve(opts.checkpoints.size());
  }

  ConditionerState state(kind, d);
  ParamVector theta = opts.theta0;
  ParamVector next(d), grad(d), direction(d);
  ParamVector average = opts.theta0;
  Sample s;
  std::size_t next_checkpoint = 0;

  for (std::uint64_t n = 0; n < opts.n_steps; ++n) {
    draw(n, s);
    stoch_grad_into(model, s, theta, grad);
    state.apply(grad, n, schedules, direction);
    next = theta - step_at(schedules.step, n + 1) * direction;
    if (opts.averaging) {
      average += (next - average) / (static_cast<double>(n) + 2.0);
    }
    state.update(s, theta, grad, model);
    std::swap(theta, next);

    if (out_of_range(theta)) {
      traj.diverged_at = n + 1;
      break;
    }
    if (record && next_checkpoint < opts.checkpoints.size() &&
        opts.checkpoints[next_checkpoint] == n + 1) {
      traj.sq_dist.push_back((theta - reference).squaredNorm());
      if (opts.averaging) {
        traj.sq_dist_avg->push_back((average - reference).squaredNorm());
      }
      ++next_checkpoint;
    }
    if (observer) observer(StepView{n + 1, theta, state, schedules});
  }

  if (record) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    traj.sq_dist.resize(opts.checkpoints.size(), kInf);
    if (opts.averaging) traj.sq_dist_avg->resize(opts.checkpoints.size(), kInf);
  }
  traj.final_theta = std::move(theta);
  if (opts.averaging) traj.final_theta_avg = std::move(average);
  return traj;
}

}  // namespace

std::vector<std::uint64_t> geometric_checkpoints(double start, double factor,
                                                 std::uint64_t max) {
  if (!(start >= 1.0) || !(factor > 1.0) || max < 1) {
    throw ContractViolation(
        "geometric checkpoints need start >= 1, factor > 1 and max >= 1");
  }
  std::vector<std::uint64_t> out;
  for (double v = start; v <= static_cast<double>(max); v *= factor) {
    const auto c = static_cast<std::uint64_t>(std::llround(v));
    if (c > max) break;
    if (out.empty() || c > out.back()) out.push_back(c);
  }
  if (out.empty() || out.back() != max) out.push_back(max);
  return out;
}

Trajectory run(const ModelSpec& model, const ConditionerKind& kind,
               const Schedules& schedules, const RunOptions& opts,
               RngStream& stream, const StepObserver& observer) {
  return run_impl(
      model, kind, schedules, opts,
      [&](std::uint64_t, Sample& s) { sample_into(model, stream, s); },
      observer);
}

Trajectory run_scripted(const ModelSpec& model, const ConditionerKind& kind,
                        const Schedules& schedules, const RunOptions& opts,
                        std::span<const Sample> samples,
                        const StepObserver& observer) {
  if (samples.size() < opts.n_steps) {
    throw ContractViolation("run_scripted: fewer samples than steps");
  }
  return run_impl(
      model, kind, schedules, opts,
      [&](std::uint64_t n, Sample& s) { s = samples[n]; }, observer);
}

}  // namespace adastoch
