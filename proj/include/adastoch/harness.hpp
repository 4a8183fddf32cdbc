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
#include <string>
#include <vector>

#include "adastoch/conditioners.hpp"
#include "adastoch/core/schedules.hpp"
#include "adastoch/models.hpp"
#include "adastoch/optimizer.hpp"

namespace adastoch {

// A fully resolved experiment: one replication is run(model, conditioner,
// schedules, options, stream(base_seed, rep)).
struct Experiment {
  ModelSpec model;
  ConditionerKind conditioner;
  Schedules schedules;
  RunOptions options;
};

/// Monte-Carlo estimate of E||theta_n - theta||^2 at each checkpoint.
///
/// A replication that diverged before checkpoint c is left out of the mean at
/// c and counted in diverged_fraction_at[c]. std_err is the unbiased sample
/// standard deviation over the kept replications divided by sqrt(kept).
struct RiskCurve {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> mean_sq_dist;
  std::vector<double> std_err;
  std::optional<std::vector<double>> mean_sq_dist_avg;
  std::optional<std::vector<double>> std_err_avg;
  std::vector<double> diverged_fraction_at;
  std::uint64_t n_reps = 0;
  double diverged_fraction = 0.0;  // over the whole run
  bool usable = true;              // false when every replication diverged
  bool single_replication = false; // std_err is reported as 0
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  std::size_t points = 0;
};

struct FitWindow {
  std::uint64_t lo;
  std::uint64_t hi;
};

// Calls body(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). The first exception thrown by any call is rethrown.
void parallel_for(std::uint64_t count, unsigned threads,
                  const std::function<void(std::uint64_t)>& body);

// Results come back in replication order whatever the interleaving.
template <class T, class F>
std::vector<T> run_replications(std::uint64_t n_reps, unsigned threads,
                                F&& replication) {
  std::vector<T> out(n_reps);
  parallel_for(n_reps, threads,
               [&](std::uint64_t rep) { out[rep] = replication(rep); });
  return out;
}

RiskCurve mc_risk_curve(const Experiment& experiment, std::uint64_t n_reps,
                        std::uint64_t base_seed, unsigned threads = 0);

// Folds already computed trajectories (in replication order) into a curve.
RiskCurve aggregate_risk(std::span<const Trajectory> runs);

/// Ordinary least squares of log(value) on log(n) over checkpoints in the
/// window. Defaults to the top decade [n_max / 10, n_max]. Needs at least five
/// points with finite positive values; throws ContractViolation otherwise.
RateFit rate_fit(const RiskCurve& curve,
                 std::optional<FitWindow> window = std::nullopt);
RateFit rate_fit(std::span<const std::uint64_t> n, std::span<const double> values,
                 std::optional<FitWindow> window = std::nullopt);

struct TailProbeTable {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> thresholds;
  // probability[c][t]: fraction of replications with min-eigen estimate
  // strictly below thresholds[t] at checkpoints[c].
  std::vector<std::vector<double>> probability;
};

TailProbeTable lambda_tail_probe(const Experiment& experiment,
                                 std::span<const double> thresholds,
                                 std::span<const std::uint64_t> checkpoints,
                                 std::uint64_t n_reps, std::uint64_t seed,
                                 unsigned threads = 0);

/// Forced path of the naive Newton recursion on the floor model: on the event
/// x_k = 0, y_k = -1 the recursion reads
///
///   theta_k = theta_{k-1} + k gamma_k floor(theta_{k-1}),   gamma_k = k^{-alpha},
///
/// which outgrows (k!)^{1-alpha} 2^{-k}. theta0 must be non-integral in (1, 2]
/// and alpha in (0, 1).
struct ForcedPath {
  std::vector<double> theta;        // theta_0 .. theta_n
  std::vector<double> lower_bound;  // (k!)^{1-alpha} 2^{-k}
  bool bound_held = true;
};

ForcedPath forced_counterexample(double theta0, double alpha, std::uint64_t n_steps);

// The sample script (x = 0, y = -1) realizing the forced event.
std::vector<Sample> forced_sample_script(std::uint64_t n_steps);

// The same construction as an Experiment: floor model, untruncated Newton
// with S0 = 1, c_gamma = 1, gamma = alpha.
Experiment forced_path_experiment(double theta0, double alpha, std::uint64_t n_steps);

struct RatioColumn {
  std::size_t numerator;
  std::size_t denominator;
  // NaN where both means are zero (0/0).
  std::vector<double> ratio;
  std::vector<double> ratio_stderr;
};

struct Comparison {
  std::vector<std::uint64_t> checkpoints;
  std::vector<RiskCurve> curves;
  std::vector<RatioColumn> ratios;  // every pair i < j, as curves[i] / curves[j]
};

Comparison compare_runs(std::span<const Experiment> experiments,
                        std::uint64_t n_reps, std::uint64_t seed,
                        unsigned threads = 0);

}  // namespace adastoch
