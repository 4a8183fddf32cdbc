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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace adastoch::cli {

// Exit codes. They are the only success/failure channel.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;      // I/O or numerical failure
inline constexpr int kExitConfig = 2;       // invalid config or flags
inline constexpr int kExitDiverged = 3;     // every replication diverged
inline constexpr int kExitBoundFailed = 4;  // counterexample bound broken

struct CommonFlags {
  std::optional<std::uint64_t> seed;  // overrides run.base_seed
  std::optional<std::string> out;     // overrides output.csv
  unsigned threads = 0;               // 0 = machine parallelism
};

int cmd_run(const std::string& config_path, const CommonFlags& flags,
            std::ostream& out, std::ostream& err);

// Prints "k,theta_k,bound_k" for k = 0..n.
int cmd_counterexample(double theta0, double alpha, std::uint64_t n,
                       std::ostream& out, std::ostream& err);

// `thresholds` is a comma list; the token `auto` stands for 1 / (2 E||X||^2)
// of the configured design. Checkpoints and n_reps come from the config.
int cmd_probe(const std::string& config_path, const std::string& thresholds,
              const CommonFlags& flags, std::ostream& out, std::ostream& err);

// Seed, n_reps and output path come from the first config unless overridden.
int cmd_compare(const std::vector<std::string>& config_paths,
                const CommonFlags& flags, std::ostream& out, std::ostream& err);

}  // namespace adastoch::cli
