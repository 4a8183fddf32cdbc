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

namespace adastoch {

// gamma_n = c_gamma * n^{-gamma}, c_gamma > 0, gamma in (0, 1).
class StepSchedule {
 public:
  StepSchedule(double c_gamma, double gamma);
  double c_gamma() const { return c_gamma_; }
  double gamma() const { return gamma_; }

 private:
  double c_gamma_;
  double gamma_;
};

// Operator-norm growth bound beta_n = c_beta * n^{beta}.
class TruncationSchedule {
 public:
  TruncationSchedule(double c_beta, double beta);
  double c_beta() const { return c_beta_; }
  double beta() const { return beta_; }

 private:
  double c_beta_;
  double beta_;
};

// Eigenvalue floor lambda'_n = lambda'_0 * (n + 1)^{-lambda'}; only
// meaningful for gamma <= 1/2.
class FloorSchedule {
 public:
  FloorSchedule(double lambda0_prime, double lambda_prime);
  double lambda0_prime() const { return lambda0_prime_; }
  double lambda_prime() const { return lambda_prime_; }

 private:
  double lambda0_prime_;
  double lambda_prime_;
};

// Everything the recursion needs besides the conditioner itself. A missing
// truncation schedule means A_n is applied untruncated.
struct Schedules {
  StepSchedule step;
  std::optional<TruncationSchedule> trunc;
  std::optional<FloorSchedule> floor;
};

// Requires n >= 1.
double step_at(const StepSchedule& sched, std::uint64_t n);
// Requires n >= 1.
double trunc_bound_at(const TruncationSchedule& sched, std::uint64_t n);
double floor_at(const FloorSchedule& sched, std::uint64_t n);

// Cross-checks the exponents. Throws ContractViolation with messages of the
// form "H1b violated: beta >= gamma - 1/2".
//   gamma <= 1/2: beta < gamma / 2, floor present, lambda' < gamma
//   gamma >  1/2: beta < gamma - 1/2, no floor
void validate_schedules(const Schedules& schedules);

}  // namespace adastoch
