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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "adastoch/error.hpp"
#include "adastoch/harness.hpp"

namespace adastoch {

namespace {

Experiment linear_experiment(ConditionerKind kind, double noise, std::uint64_t n,
                             ParamVector theta0) {
  Experiment e{make_linear_model(ParamVector{{1.0, -0.5, 0.25}}, make_design(3, 10.0), noise),
               std::move(kind),
               Schedules{StepSchedule(1.0, 0.75), TruncationSchedule(1.0, 0.2), std::nullopt},
               RunOptions{}};
  e.options.n_steps = n;
  e.options.theta0 = std::move(theta0);
  e.options.checkpoints = geometric_checkpoints(1.0, 1.5, n);
  return e;
}

TEST(RiskCurve, NoiseFreeStartAtOptimumIsZero) {
  const ParamVector star{{1.0, -0.5, 0.25}};
  const Experiment e = linear_experiment(NewtonLinearKind{SymMatrix::identity(3)}, 0.0, 300, star);
  const RiskCurve c = mc_risk_curve(e, 6, 1, 2);
  for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
    EXPECT_EQ(c.mean_sq_dist[i], 0.0);
    EXPECT_EQ(c.std_err[i], 0.0);
  }
  EXPECT_EQ(c.diverged_fraction, 0.0);
  EXPECT_FALSE(c.single_replication);
}

TEST(RiskCurve, SingleReplicationIsFlagged) {
  const Experiment e = linear_experiment(IdentityKind{}, 1.0, 100, ParamVector::Zero(3));
  const RiskCurve c = mc_risk_curve(e, 1, 3);
  EXPECT_TRUE(c.single_replication);
  for (double se : c.std_err) EXPECT_EQ(se, 0.0);
}

TEST(RiskCurve, SeedControlsOutput) {
  const Experiment e = linear_experiment(AdagradKind{ParamVector::Ones(3)}, 1.0, 200,
                                         ParamVector::Zero(3));
  const RiskCurve a = mc_risk_curve(e, 8, 5, 1);
  const RiskCurve b = mc_risk_curve(e, 8, 5, 1);
  const RiskCurve c = mc_risk_curve(e, 8, 6, 1);
  EXPECT_EQ(a.mean_sq_dist, b.mean_sq_dist);
  EXPECT_EQ(a.std_err, b.std_err);
  EXPECT_NE(a.mean_sq_dist, c.mean_sq_dist);
}

TEST(RiskCurve, ThreadCountDoesNotChangeResult) {
  Experiment e = linear_experiment(NewtonLinearKind{SymMatrix::identity(3)}, 1.0, 500,
                                   ParamVector::Zero(3));
  e.options.averaging = true;
  const RiskCurve a = mc_risk_curve(e, 24, 9, 1);
  const RiskCurve b = mc_risk_curve(e, 24, 9, 8);
  EXPECT_EQ(a.mean_sq_dist, b.mean_sq_dist);
  EXPECT_EQ(a.std_err, b.std_err);
  EXPECT_EQ(*a.mean_sq_dist_avg, *b.mean_sq_dist_avg);
}

TEST(RiskCurve, AggregationIsPermutationInvariant) {
  const Experiment e = linear_experiment(IdentityKind{}, 1.0, 200, ParamVector::Zero(3));
  std::vector<Trajectory> runs;
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    RngStream stream(17, rep);
    runs.push_back(run(e.model, e.conditioner, e.schedules, e.options, stream));
  }
  const RiskCurve a = aggregate_risk(runs);
  std::mt19937_64 gen(4);
  std::shuffle(runs.begin(), runs.end(), gen);
  const RiskCurve b = aggregate_risk(runs);
  for (std::size_t i = 0; i < a.checkpoints.size(); ++i) {
    EXPECT_NEAR(a.mean_sq_dist[i], b.mean_sq_dist[i], 1e-12 * a.mean_sq_dist[i]);
    EXPECT_NEAR(a.std_err[i], b.std_err[i], 1e-12 * a.std_err[i] + 1e-300);
  }
}

TEST(RiskCurve, DivergedReplicationsAreExcludedPerCheckpoint) {
  Trajectory ok, bad;
  ok.checkpoints = bad.checkpoints = {1, 2, 3};
  ok.sq_dist = {4.0, 2.0, 1.0};
  bad.sq_dist = {6.0, std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity()};
  bad.diverged_at = 2;
  const std::vector<Trajectory> runs{ok, bad};
  const RiskCurve c = aggregate_risk(runs);
  EXPECT_EQ(c.mean_sq_dist, (std::vector<double>{5.0, 2.0, 1.0}));
  EXPECT_EQ(c.diverged_fraction_at, (std::vector<double>{0.0, 0.5, 0.5}));
  EXPECT_EQ(c.diverged_fraction, 0.5);
  EXPECT_TRUE(c.usable);
}

TEST(RateFit, RecoversExactPowerLaws) {
  std::vector<std::uint64_t> n;
  for (std::uint64_t v = 10; v <= 100000; v *= 2) n.push_back(v);
  for (double s : {0.25, 0.5, 0.75, 1.0}) {
    std::vector<double> values;
    for (auto v : n) values.push_back(3.0 * std::pow(static_cast<double>(v), -s));
    const RateFit fit = rate_fit(n, values, FitWindow{1, 1000000});
    EXPECT_NEAR(fit.slope, -s, 1e-10);
    EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-10);
    EXPECT_NEAR(fit.slope_stderr, 0.0, 1e-10);
    EXPECT_EQ(fit.points, n.size());
  }
}

TEST(RateFit, DefaultWindowIsLastDecade) {
  std::vector<std::uint64_t> n;
  std::vector<double> values;
  for (std::uint64_t v = 1; v <= 1000; ++v) {
    n.push_back(v);
    values.push_back(v < 100 ? 1.0 : std::pow(static_cast<double>(v), -0.5));
  }
  const RateFit fit = rate_fit(n, values);
  EXPECT_EQ(fit.n_lo, 100u);
  EXPECT_EQ(fit.n_hi, 1000u);
  EXPECT_NEAR(fit.slope, -0.5, 1e-10);
}

TEST(RateFit, NeedsFivePoints) {
  const std::vector<std::uint64_t> n{1, 2, 3, 4};
  const std::vector<double> values{1.0, 0.5, 0.3, 0.25};
  EXPECT_THROW(rate_fit(n, values, FitWindow{1, 4}), ContractViolation);
}

TEST(Counterexample, FirstSteps) {
  const ForcedPath p = forced_counterexample(1.5, 0.75, 30);
  ASSERT_EQ(p.theta.size(), 31u);
  EXPECT_EQ(p.theta[0], 1.5);
  EXPECT_DOUBLE_EQ(p.theta[1], 2.5);
  EXPECT_NEAR(p.theta[2], 2.5 + 2.0 * std::pow(2.0, 0.25), 1e-12);
  EXPECT_NEAR(p.theta[2], 4.87841, 1e-5);
  EXPECT_GT(p.theta[30], 1e6);
  EXPECT_TRUE(p.bound_held);
}

TEST(Counterexample, PerStepGrowthBound) {
  for (double alpha : {0.1, 0.5, 0.75, 0.95}) {
    for (double theta0 : {1.01, 1.5, 1.99, 2.0 - 1e-9}) {
      const ForcedPath p = forced_counterexample(theta0, alpha, 40);
      for (std::size_t k = 1; k < p.theta.size(); ++k) {
        const double kk = static_cast<double>(k);
        ASSERT_GE(p.theta[k], p.theta[k - 1] * (1.0 + std::pow(kk, 1.0 - alpha) / 2.0))
            << alpha << " " << theta0 << " " << k;
      }
    }
  }
}

TEST(Counterexample, RejectsOutOfDomain) {
  EXPECT_THROW(forced_counterexample(2.0, 0.5, 5), ContractViolation);
  EXPECT_THROW(forced_counterexample(1.0, 0.5, 5), ContractViolation);
  EXPECT_THROW(forced_counterexample(1.5, 1.0, 5), ContractViolation);
  EXPECT_THROW(forced_counterexample(1.5, 0.0, 5), ContractViolation);
}

TEST(Counterexample, OptimizerReproducesPath) {
  const ForcedPath p = forced_counterexample(1.5, 0.75, 30);
  const Experiment e = forced_path_experiment(1.5, 0.75, 30);
  const auto script = forced_sample_script(30);
  std::vector<double> seen{1.5};
  run_scripted(e.model, e.conditioner, e.schedules, e.options, script,
               [&](const StepView& v) { seen.push_back(v.theta(0)); });
  ASSERT_EQ(seen.size(), p.theta.size());
  for (std::size_t k = 0; k < seen.size(); ++k) {
    EXPECT_NEAR(seen[k], p.theta[k], 1e-10 * std::max(1.0, std::abs(p.theta[k])));
  }
}

TEST(TailProbe, IdentityGivesDegenerateProbabilities) {
  const Experiment e = linear_experiment(IdentityKind{}, 1.0, 100, ParamVector::Zero(3));
  const std::vector<double> thresholds{0.5, 2.0};
  const std::vector<std::uint64_t> checkpoints{1, 10, 100};
  const TailProbeTable t = lambda_tail_probe(e, thresholds, checkpoints, 10, 1, 2);
  for (const auto& row : t.probability) {
    EXPECT_EQ(row[0], 0.0);
    EXPECT_EQ(row[1], 1.0);
  }
}

TEST(TailProbe, RejectsBadCheckpoints) {
  const Experiment e = linear_experiment(IdentityKind{}, 1.0, 100, ParamVector::Zero(3));
  const std::vector<double> thresholds{0.5};
  const std::vector<std::uint64_t> bad{10, 5};
  EXPECT_THROW(lambda_tail_probe(e, thresholds, bad, 2, 1), ContractViolation);
}

TEST(Compare, SameExperimentGivesUnitRatio) {
  const Experiment e = linear_experiment(IdentityKind{}, 1.0, 200, ParamVector::Zero(3));
  const std::vector<Experiment> es{e, e};
  const Comparison c = compare_runs(es, 10, 3, 2);
  ASSERT_EQ(c.ratios.size(), 1u);
  for (double r : c.ratios[0].ratio) EXPECT_DOUBLE_EQ(r, 1.0);
}

TEST(Compare, ZeroOverZeroIsNaN) {
  const ParamVector star{{1.0, -0.5, 0.25}};
  const Experiment a = linear_experiment(IdentityKind{}, 0.0, 50, star);
  const Experiment b = linear_experiment(NewtonLinearKind{SymMatrix::identity(3)}, 0.0, 50, star);
  const std::vector<Experiment> es{a, b};
  const Comparison c = compare_runs(es, 3, 3);
  for (double r : c.ratios[0].ratio) EXPECT_TRUE(std::isnan(r));
}

TEST(Compare, RejectsMismatchedCheckpoints) {
  Experiment a = linear_experiment(IdentityKind{}, 1.0, 50, ParamVector::Zero(3));
  Experiment b = a;
  b.options.checkpoints = {1, 50};
  const std::vector<Experiment> es{a, b};
  EXPECT_THROW(compare_runs(es, 2, 1), ContractViolation);
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::uint64_t i) {
                              if (i == 37) throw NumericalError("boom");
                            }),
               NumericalError);
}

}  // namespace
}  // namespace adastoch
