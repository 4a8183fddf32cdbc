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

// Command-line front end: run, counterexample, probe, compare.

#include <CLI11.hpp>

#include <iostream>

#include "adastoch/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace adastoch::cli;
  CLI::App app{"adastoch: adaptive stochastic gradient experiments"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string config_path;
  std::vector<std::string> config_paths;
  std::string thresholds;
  double theta0 = 1.5;
  double alpha = 0.75;
  std::uint64_t n = 30;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", flags.seed, "override run.base_seed");
    sub->add_option("--out", flags.out, "override output.csv");
    sub->add_option("--threads", flags.threads, "cap replication parallelism")
        ->check(CLI::NonNegativeNumber);
  };

  auto* run = app.add_subcommand("run", "Monte-Carlo risk curve of one config");
  run->add_option("--config", config_path, "config file")->required();
  add_common(run);

  auto* counter = app.add_subcommand("counterexample",
                                     "forced divergence of the untruncated recursion");
  counter->add_option("--theta0", theta0, "non-integral start in (1, 2]");
  counter->add_option("--alpha", alpha, "step exponent in (0, 1)");
  counter->add_option("--n", n, "number of steps");

  auto* probe = app.add_subcommand("probe", "tail probe of the smallest eigenvalue");
  probe->add_option("--config", config_path, "config file")->required();
  probe->add_option("--thresholds", thresholds, "comma list; 'auto' = 1/(2 E|X|^2)")
      ->required();
  add_common(probe);

  auto* compare = app.add_subcommand("compare", "side-by-side risk curves");
  compare->add_option("--config", config_paths, "config files (repeat)")->required();
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (run->parsed()) return cmd_run(config_path, flags, std::cout, std::cerr);
  if (counter->parsed()) return cmd_counterexample(theta0, alpha, n, std::cout, std::cerr);
  if (probe->parsed()) return cmd_probe(config_path, thresholds, flags, std::cout, std::cerr);
  return cmd_compare(config_paths, flags, std::cout, std::cerr);
}
