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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adastoch/harness.hpp"
#include "adastoch/models.hpp"

namespace adastoch::cli {

// Experiment configuration in flat `section.key = value` form.
//
//   key                         default              notes
//   model.kind                  linear               linear | glm
//   model.d                     5
//   model.kappa                 100                  condition number of E[XX^T]
//   model.noise_std             1                    linear only
//   model.noise_kind            gaussian             gaussian | student_t
//   model.noise_df              0                    integer > 4 for student_t
//   model.sigma                 0.1                  glm ridge weight
//   model.theta_seed            1                    seed of the drawn parameter
//   model.theta                 auto                 auto | comma list of d reals
//   model.reference_n           100000               glm reference sample size
//   model.reference_seed        7                    glm reference seed
//   algorithm.conditioner       newton_linear        identity | adagrad |
//                                                    newton_linear | newton_glm |
//                                                    gauss_newton |
//                                                    newton_decaying_ridge
//   algorithm.s0_scale          1                    S0 = s0_scale * I
//   algorithm.adagrad_a         1                    initial accumulators
//   algorithm.ridge_c           1                    decaying ridge constant
//   algorithm.ridge_beta        0.25                 decaying ridge exponent
//   algorithm.c_gamma           1
//   algorithm.gamma             0.75
//   algorithm.truncation        true
//   algorithm.c_beta            1
//   algorithm.beta              0.2
//   algorithm.floor             false
//   algorithm.lambda0_prime     1
//   algorithm.lambda_prime      0.25
//   algorithm.averaging         false
//   run.n_steps                 100000
//   run.n_reps                  200
//   run.base_seed               1
//   run.checkpoints             geometric(1, 1.25, 100000)   or a comma list
//   run.theta0                  zero                 zero | star | comma list
//   output.csv                  risk.csv
//   output.verbosity            1                    0 | 1 | 2
//
// An auto parameter is a standard Gaussian vector drawn from stream
// (theta_seed, 0) and scaled to unit length.

enum class ModelKind { linear, glm };

enum class ConditionerName {
  identity,
  adagrad,
  newton_linear,
  newton_glm,
  gauss_newton,
  newton_decaying_ridge
};

struct ModelConfig {
  ModelKind kind = ModelKind::linear;
  std::int64_t d = 5;
  double kappa = 100.0;
  double noise_std = 1.0;
  NoiseKind noise_kind = NoiseKind::gaussian;
  std::int64_t noise_df = 0;
  double sigma = 0.1;
  std::uint64_t theta_seed = 1;
  std::optional<std::vector<double>> theta;  // nullopt = auto
  std::uint64_t reference_n = 100000;
  std::uint64_t reference_seed = 7;

  bool operator==(const ModelConfig&) const = default;
};

struct AlgorithmConfig {
  ConditionerName conditioner = ConditionerName::newton_linear;
  double s0_scale = 1.0;
  double adagrad_a = 1.0;
  double ridge_c = 1.0;
  double ridge_beta = 0.25;
  double c_gamma = 1.0;
  double gamma = 0.75;
  bool truncation = true;
  double c_beta = 1.0;
  double beta = 0.2;
  bool floor = false;
  double lambda0_prime = 1.0;
  double lambda_prime = 0.25;
  bool averaging = false;

  bool operator==(const AlgorithmConfig&) const = default;
};

struct CheckpointSpec {
  bool geometric = true;
  double start = 1.0;
  double factor = 1.25;
  std::uint64_t max = 100000;
  std::vector<std::uint64_t> list;  // used when !geometric

  bool operator==(const CheckpointSpec&) const = default;
};

enum class Theta0Kind { zero, star, list };

struct RunConfig {
  std::uint64_t n_steps = 100000;
  std::uint64_t n_reps = 200;
  std::uint64_t base_seed = 1;
  CheckpointSpec checkpoints;
  Theta0Kind theta0 = Theta0Kind::zero;
  std::vector<double> theta0_values;  // used when theta0 == list

  bool operator==(const RunConfig&) const = default;
};

struct OutputConfig {
  std::string csv = "risk.csv";
  int verbosity = 1;

  bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
  ModelConfig model;
  AlgorithmConfig algorithm;
  RunConfig run;
  OutputConfig output;

  bool operator==(const ExperimentConfig&) const = default;
};

struct ConfigError {
  int line = 0;  // 0 for errors not tied to a line (e.g. defaults conflicting)
  std::string message;
};

struct ParseResult {
  std::optional<ExperimentConfig> config;  // set iff errors is empty
  std::vector<ConfigError> errors;
};

ParseResult parse_config(std::string_view text);

// Canonical text form; parse_config(render(c)) yields c.
std::string render(const ExperimentConfig& config);

std::string format_error(const ConfigError& error);

std::string_view name_of(ModelKind kind);
std::string_view name_of(ConditionerName name);

std::vector<std::uint64_t> resolve_checkpoints(const CheckpointSpec& spec);

// Materializes the model (and, for glm, its pinned reference minimizer),
// conditioner, schedules and run options.
Experiment build_experiment(const ExperimentConfig& config);

// One-line description of the regime a configuration falls in.
std::string regime_summary(const ExperimentConfig& config);

}  // namespace adastoch::cli
