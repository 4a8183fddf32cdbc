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

#include "adastoch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "adastoch/error.hpp"

namespace adastoch {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Moments {
  double mean = kNaN;
  double std_err = kNaN;
  std::uint64_t kept = 0;
};

// Unbiased moments of the finite entries, accumulated in index order.
Moments moments(const std::vector<double>& values) {
  Moments m;
  double sum = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) {
      sum += v;
      ++m.kept;
    }
  }
  if (m.kept == 0) return m;
  m.mean = sum / static_cast<double>(m.kept);
  if (m.kept == 1) {
    m.std_err = 0.0;
    return m;
  }
  double ss = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) ss += (v - m.mean) * (v - m.mean);
  }
  const double var = ss / static_cast<double>(m.kept - 1);
  m.std_err = std::sqrt(var / static_cast<double>(m.kept));
  return m;
}

}  // namespace

void parallel_for(std::uint64_t count, unsigned threads,
                  const std::function<void(std::uint64_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto workers =
      static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

RiskCurve aggregate_risk(std::span<const Trajectory> runs) {
  if (runs.empty()) throw ContractViolation("aggregate_risk: no replications");
  RiskCurve curve;
  curve.checkpoints = runs.front().checkpoints;
  curve.n_reps = runs.size();
  curve.single_replication = runs.size() == 1;
  const std::size_t n_check = curve.checkpoints.size();
  const bool averaged = runs.front().sq_dist_avg.has_value();
  for (const Trajectory& t : runs) {
    if (t.checkpoints != curve.checkpoints ||
        t.sq_dist_avg.has_value() != averaged) {
      throw ContractViolation("aggregate_risk: replications disagree on layout");
    }
  }

  std::uint64_t diverged = 0;
  for (const Trajectory& t : runs) diverged += t.diverged() ? 1 : 0;
  curve.diverged_fraction =
      static_cast<double>(diverged) / static_cast<double>(runs.size());
  curve.usable = diverged < runs.size();

  if (averaged) {
    curve.mean_sq_dist_avg.emplace();
    curve.std_err_avg.emplace();
  }
  std::vector<double> column(runs.size());
  for (std::size_t c = 0; c < n_check; ++c) {
    for (std::size_t r = 0; r < runs.size(); ++r) column[r] = runs[r].sq_dist[c];
    Moments m = moments(column);
    curve.mean_sq_dist.push_back(m.mean);
    curve.std_err.push_back(m.std_err);
    curve.diverged_fraction_at.push_back(
        static_cast<double>(runs.size() - m.kept) /
        static_cast<double>(runs.size()));
    if (averaged) {
      for (std::size_t r = 0; r < runs.size(); ++r) {
        column[r] = (*runs[r].sq_dist_avg)[c];
      }
      m = moments(column);
      curve.mean_sq_dist_avg->push_back(m.mean);
      curve.std_err_avg->push_back(m.std_err);
    }
  }
  return curve;
}

RiskCurve mc_risk_curve(const Experiment& experiment, std::uint64_t n_reps,
                        std::uint64_t base_seed, unsigned threads) {
  if (n_reps < 1) throw ContractViolation("mc_risk_curve: n_reps must be >= 1");
  if (experiment.options.record_risk_against == RiskReference::none) {
    throw ContractViolation("mc_risk_curve: experiment records no risk");
  }
  const auto runs = run_replications<Trajectory>(
      n_reps, threads, [&](std::uint64_t rep) {
        RngStream stream(base_seed, rep);
        return run(experiment.model, experiment.conditioner,
                   experiment.schedules, experiment.options, stream);
      });
  return aggregate_risk(runs);
}

RateFit rate_fit(std::span<const std::uint64_t> n, std::span<const double> values,
                 std::optional<FitWindow> window) {
  if (n.size() != values.size()) {
    throw ContractViolation("rate_fit: checkpoint and value counts differ");
  }
  if (n.empty()) throw ContractViolation("rate_fit: empty curve");
  if (!window) {
    const std::uint64_t top = *std::max_element(n.begin(), n.end());
    window = FitWindow{top / 10, top};
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < window->lo || n[i] > window->hi) continue;
    if (!std::isfinite(values[i]) || !(values[i] > 0.0)) continue;
    xs.push_back(std::log(static_cast<double>(n[i])));
    ys.push_back(std::log(values[i]));
  }
  if (xs.size() < 5) {
    throw ContractViolation("rate_fit: need at least 5 usable points in [" +
                            std::to_string(window->lo) + ", " +
                            std::to_string(window->hi) + "], found " +
                            std::to_string(xs.size()));
  }
  const double k = static_cast<double>(xs.size());
  double x_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= k;
  y_mean /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = y_mean - fit.slope * x_mean;
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ssr += r * r;
  }
  fit.slope_stderr = std::sqrt(ssr / (k - 2.0) / sxx);
  fit.n_lo = window->lo;
  fit.n_hi = window->hi;
  fit.points = xs.size();
  return fit;
}

RateFit rate_fit(const RiskCurve& curve, std::optional<FitWindow> window) {
  return rate_fit(curve.checkpoints, curve.mean_sq_dist, window);
}

TailProbeTable lambda_tail_probe(const Experiment& experiment,
                                 std::span<const double> thresholds,
                                 std::span<const std::uint64_t> checkpoints,
                                 std::uint64_t n_reps, std::uint64_t seed,
                                 unsigned threads) {
  if (checkpoints.empty() || n_reps < 1) {
    throw ContractViolation("lambda_tail_probe: need checkpoints and n_reps >= 1");
  }
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw ContractViolation(
          "lambda_tail_probe: checkpoints must be strictly increasing and >= 1");
    }
  }
  RunOptions opts = experiment.options;
  opts.n_steps = checkpoints.back();
  opts.checkpoints.clear();
  opts.record_risk_against = RiskReference::none;

  const auto estimates = run_replications<std::vector<double>>(
      n_reps, threads, [&](std::uint64_t rep) {
        std::vector<double> est(checkpoints.size(), kNaN);
        std::size_t next = 0;
        RngStream stream(seed, rep);
        run(experiment.model, experiment.conditioner, experiment.schedules, opts,
            stream, [&](const StepView& view) {
              if (next < checkpoints.size() && view.n == checkpoints[next]) {
                est[next++] = view.state.min_eigen_estimate(view.n, view.schedules);
              }
            });
        return est;
      });

  TailProbeTable table;
  table.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  table.thresholds.assign(thresholds.begin(), thresholds.end());
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    std::vector<double> row;
    for (double t : thresholds) {
      std::uint64_t reached = 0, below = 0;
      for (const auto& est : estimates) {
        if (std::isnan(est[c])) continue;
        ++reached;
        if (est[c] < t) ++below;
      }
      row.push_back(reached == 0 ? kNaN
                                 : static_cast<double>(below) /
                                       static_cast<double>(reached));
    }
    table.probability.push_back(std::move(row));
  }
  return table;
}

ForcedPath forced_counterexample(double theta0, double alpha,
                                 std::uint64_t n_steps) {
  if (!(theta0 > 1.0 && theta0 <= 2.0)) {
    throw ContractViolation("forced_counterexample: theta0 must lie in (1, 2]");
  }
  if (theta0 == std::floor(theta0)) {
    throw ContractViolation(
        "forced_counterexample: theta0 must not be an integer (the forced "
        "path needs non-integral iterates)");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ContractViolation("forced_counterexample: alpha must lie in (0, 1)");
  }
  ForcedPath path;
  path.theta.reserve(n_steps + 1);
  path.lower_bound.reserve(n_steps + 1);
  path.theta.push_back(theta0);
  path.lower_bound.push_back(1.0);
  path.bound_held = theta0 >= 1.0;
  for (std::uint64_t k = 1; k <= n_steps; ++k) {
    const double kd = static_cast<double>(k);
    const double previous = path.theta.back();
    const double gamma_k = std::pow(kd, -alpha);
    const double theta = previous + gamma_k * (kd * std::floor(previous));
    const double bound =
        std::exp((1.0 - alpha) * std::lgamma(kd + 1.0) - kd * std::log(2.0));
    path.theta.push_back(theta);
    path.lower_bound.push_back(bound);
    if (!(theta >= bound)) path.bound_held = false;
  }
  return path;
}

std::vector<Sample> forced_sample_script(std::uint64_t n_steps) {
  std::vector<Sample> script(n_steps);
  for (Sample& s : script) {
    s.x = ParamVector::Zero(1);
    s.y = -1.0;
  }
  return script;
}

Experiment forced_path_experiment(double theta0, double alpha,
                                  std::uint64_t n_steps) {
  RunOptions opts;
  opts.n_steps = n_steps;
  opts.theta0 = ParamVector::Constant(1, theta0);
  for (std::uint64_t k = 1; k <= n_steps; ++k) opts.checkpoints.push_back(k);
  return Experiment{FloorPathSpec{}, NewtonLinearKind{SymMatrix::identity(1)},
                    Schedules{StepSchedule(1.0, alpha), std::nullopt, std::nullopt},
                    std::move(opts)};
}

Comparison compare_runs(std::span<const Experiment> experiments,
                        std::uint64_t n_reps, std::uint64_t seed,
                        unsigned threads) {
  if (experiments.empty()) throw ContractViolation("compare_runs: nothing to compare");
  const auto& reference = experiments.front();
  for (const Experiment& e : experiments) {
    if (e.options.checkpoints != reference.options.checkpoints) {
      throw ContractViolation("compare_runs: mismatched checkpoints");
    }
    if (dim(e.model) != dim(reference.model) ||
        e.model.index() != reference.model.index()) {
      throw ContractViolation("compare_runs: experiments use different models");
    }
  }
  Comparison out;
  out.checkpoints = reference.options.checkpoints;
  for (const Experiment& e : experiments) {
    out.curves.push_back(mc_risk_curve(e, n_reps, seed, threads));
  }
  for (std::size_t i = 0; i < out.curves.size(); ++i) {
    for (std::size_t j = i + 1; j < out.curves.size(); ++j) {
      RatioColumn col{i, j, {}, {}};
      const RiskCurve& a = out.curves[i];
      const RiskCurve& b = out.curves[j];
      for (std::size_t c = 0; c < out.checkpoints.size(); ++c) {
        const double ma = a.mean_sq_dist[c], mb = b.mean_sq_dist[c];
        const double sa = a.std_err[c], sb = b.std_err[c];
        if (ma == 0.0 && mb == 0.0) {
          col.ratio.push_back(kNaN);
          col.ratio_stderr.push_back(kNaN);
          continue;
        }
        const double r = ma / mb;
        double se = 0.0;
        if (ma == 0.0) {
          se = sa / mb;
        } else {
          se = std::abs(r) * std::hypot(sa / ma, sb / mb);
        }
        col.ratio.push_back(r);
        col.ratio_stderr.push_back(se);
      }
      out.ratios.push_back(std::move(col));
    }
  }
  return out;
}

}  // namespace adastoch
