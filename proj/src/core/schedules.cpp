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

#include "adastoch/core/schedules.hpp"

#include <cmath>

#include "adastoch/error.hpp"

namespace adastoch {

StepSchedule::StepSchedule(double c_gamma, double gamma)
    : c_gamma_(c_gamma), gamma_(gamma) {
  if (!(c_gamma > 0.0) || !std::isfinite(c_gamma)) {
    throw ContractViolation("step schedule: c_gamma must be > 0");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ContractViolation("step schedule: gamma must lie in (0, 1)");
  }
}

TruncationSchedule::TruncationSchedule(double c_beta, double beta)
    : c_beta_(c_beta), beta_(beta) {
  if (!(c_beta >= 0.0) || !std::isfinite(c_beta)) {
    throw ContractViolation("truncation schedule: c_beta must be >= 0");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ContractViolation("truncation schedule: beta must be >= 0");
  }
}

FloorSchedule::FloorSchedule(double lambda0_prime, double lambda_prime)
    : lambda0_prime_(lambda0_prime), lambda_prime_(lambda_prime) {
  if (!(lambda0_prime > 0.0) || !std::isfinite(lambda0_prime)) {
    throw ContractViolation("floor schedule: lambda0_prime must be > 0");
  }
  if (!(lambda_prime >= 0.0) || !std::isfinite(lambda_prime)) {
    throw ContractViolation("floor schedule: lambda_prime must be >= 0");
  }
}

double step_at(const StepSchedule& sched, std::uint64_t n) {
  if (n == 0) throw ContractViolation("step_at: n must be >= 1");
  return sched.c_gamma() * std::pow(static_cast<double>(n), -sched.gamma());
}

double trunc_bound_at(const TruncationSchedule& sched, std::uint64_t n) {
  if (n == 0) throw ContractViolation("trunc_bound_at: n must be >= 1");
  return sched.c_beta() * std::pow(static_cast<double>(n), sched.beta());
}

double floor_at(const FloorSchedule& sched, std::uint64_t n) {
  return sched.lambda0_prime() *
         std::pow(static_cast<double>(n) + 1.0, -sched.lambda_prime());
}

void validate_schedules(const Schedules& schedules) {
  const double gamma = schedules.step.gamma();
  const bool slow = gamma <= 0.5;
  if (schedules.trunc) {
    const double beta = schedules.trunc->beta();
    if (slow && !(beta < gamma / 2.0)) {
      throw ContractViolation("H1b violated: beta >= gamma/2");
    }
    if (!slow && !(beta < gamma - 0.5)) {
      throw ContractViolation("H1b violated: beta >= gamma - 1/2");
    }
  }
  if (slow && !schedules.floor) {
    throw ContractViolation(
        "H1a violated: gamma <= 1/2 requires an eigenvalue floor schedule");
  }
  if (!slow && schedules.floor) {
    throw ContractViolation(
        "floor schedule only applies when gamma <= 1/2");
  }
  if (schedules.floor && !(schedules.floor->lambda_prime() < gamma)) {
    throw ContractViolation("H1a violated: lambda_prime >= gamma");
  }
}

}  // namespace adastoch
