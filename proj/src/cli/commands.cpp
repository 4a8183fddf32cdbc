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

#include "adastoch/cli/commands.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include "adastoch/cli/config.hpp"
#include "adastoch/cli/csv.hpp"
#include "adastoch/error.hpp"
#include "adastoch/harness.hpp"

namespace adastoch::cli {

namespace {

struct Loaded {
  std::optional<ExperimentConfig> config;
  int exit_code = kExitOk;
};

Loaded load(const std::string& path, const CommonFlags& flags, std::ostream& err) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot read config " << path << '\n';
    return {std::nullopt, kExitConfig};
  }
  std::ostringstream text;
  text << f.rdbuf();
  ParseResult parsed = parse_config(text.str());
  if (!parsed.config) {
    for (const auto& e : parsed.errors) err << path << ": " << format_error(e) << '\n';
    return {std::nullopt, kExitConfig};
  }
  if (flags.seed) parsed.config->run.base_seed = *flags.seed;
  if (flags.out) parsed.config->output.csv = *flags.out;
  return {std::move(parsed.config), kExitOk};
}

void print_fit(std::ostream& out, const char* label, const std::vector<std::uint64_t>& n,
               const std::vector<double>& values) {
  try {
    const RateFit fit = rate_fit(n, values);
    out << label << "slope=" << format_real(fit.slope) << " +/- "
        << format_real(fit.slope_stderr) << " window=[" << fit.n_lo << ", "
        << fit.n_hi << "] points=" << fit.points << '\n';
  } catch (const ContractViolation& e) {
    out << label << "slope=unavailable (" << e.what() << ")\n";
  }
}

double trace_of(const SymMatrix& m) {
  double t = 0.0;
  for (Index i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

std::optional<double> auto_threshold(const Experiment& e) {
  if (const auto* lin = std::get_if<LinearModelSpec>(&e.model)) {
    return 1.0 / (2.0 * trace_of(lin->design.covariance));
  }
  if (const auto* glm = std::get_if<GlmRidgeSpec>(&e.model)) {
    return 1.0 / (2.0 * trace_of(glm->design.covariance));
  }
  return std::nullopt;
}

// Runs `body`, mapping library exceptions onto exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int cmd_run(const std::string& config_path, const CommonFlags& flags,
            std::ostream& out, std::ostream& err) {
  Loaded loaded = load(config_path, flags, err);
  if (!loaded.config) return loaded.exit_code;
  const ExperimentConfig& config = *loaded.config;
  return guarded(err, [&] {
    const Experiment experiment = build_experiment(config);
    const RiskCurve curve =
        mc_risk_curve(experiment, config.run.n_reps, config.run.base_seed, flags.threads);
    out << "regime: " << regime_summary(config) << '\n';
    if (config.output.verbosity >= 1) {
      std::istringstream lines(render(config));
      for (std::string line; std::getline(lines, line);) {
        if (!line.empty()) out << "  " << line << '\n';
      }
    }
    if (!curve.usable) {
      err << "error: all " << curve.n_reps << " replications diverged\n";
      return kExitDiverged;
    }
    write_file_atomic(config.output.csv, risk_csv(curve));
    print_fit(out, "", curve.checkpoints, curve.mean_sq_dist);
    if (curve.mean_sq_dist_avg) {
      print_fit(out, "averaged: ", curve.checkpoints, *curve.mean_sq_dist_avg);
    }
    if (curve.single_replication) {
      out << "warning: single replication, std_err reported as 0\n";
    }
    out << "diverged_fraction=" << format_real(curve.diverged_fraction) << '\n';
    if (config.output.verbosity >= 2) {
      out << "final mean_sq_dist=" << format_real(curve.mean_sq_dist.back())
          << " std_err=" << format_real(curve.std_err.back()) << '\n';
    }
    out << "wrote " << config.output.csv << '\n';
    return kExitOk;
  });
}

int cmd_counterexample(double theta0, double alpha, std::uint64_t n,
                       std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ForcedPath path = forced_counterexample(theta0, alpha, n);
    for (std::size_t k = 0; k < path.theta.size(); ++k) {
      out << k << ',' << format_real(path.theta[k]) << ','
          << format_real(path.lower_bound[k]) << '\n';
    }
    return path.bound_held ? kExitOk : kExitBoundFailed;
  });
}

int cmd_probe(const std::string& config_path, const std::string& thresholds,
              const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  Loaded loaded = load(config_path, flags, err);
  if (!loaded.config) return loaded.exit_code;
  const ExperimentConfig& config = *loaded.config;
  return guarded(err, [&] {
    const Experiment experiment = build_experiment(config);
    std::vector<double> values;
    std::string_view rest = thresholds;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string_view token = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      if (token == "auto") {
        const auto t = auto_threshold(experiment);
        if (!t) throw ContractViolation("auto threshold needs a model with a design");
        values.push_back(*t);
        continue;
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ContractViolation("invalid threshold '" + std::string(token) + "'");
      }
      values.push_back(v);
    }
    if (values.empty()) throw ContractViolation("--thresholds is empty");
    const auto table =
        lambda_tail_probe(experiment, values, experiment.options.checkpoints,
                          config.run.n_reps, config.run.base_seed, flags.threads);
    write_file_atomic(config.output.csv, probe_csv(table));
    out << "regime: " << regime_summary(config) << '\n';
    out << "wrote " << config.output.csv << '\n';
    return kExitOk;
  });
}

int cmd_compare(const std::vector<std::string>& config_paths, const CommonFlags& flags,
                std::ostream& out, std::ostream& err) {
  if (config_paths.empty()) {
    err << "error: compare needs at least one --config\n";
    return kExitConfig;
  }
  std::vector<ExperimentConfig> configs;
  for (const auto& path : config_paths) {
    Loaded loaded = load(path, flags, err);
    if (!loaded.config) return loaded.exit_code;
    configs.push_back(std::move(*loaded.config));
  }
  for (std::size_t i = 1; i < configs.size(); ++i) {
    if (!(configs[i].model == configs[0].model)) {
      err << "error: " << config_paths[i] << " uses a different model than "
          << config_paths[0] << '\n';
      return kExitConfig;
    }
    if (resolve_checkpoints(configs[i].run.checkpoints) !=
        resolve_checkpoints(configs[0].run.checkpoints)) {
      err << "error: " << config_paths[i] << " uses different checkpoints than "
          << config_paths[0] << '\n';
      return kExitConfig;
    }
  }
  return guarded(err, [&] {
    std::vector<Experiment> experiments;
    for (const auto& c : configs) experiments.push_back(build_experiment(c));
    const Comparison cmp = compare_runs(experiments, configs[0].run.n_reps,
                                        configs[0].run.base_seed, flags.threads);
    for (std::size_t i = 0; i < configs.size(); ++i) {
      out << "[" << i << "] " << config_paths[i] << ": " << regime_summary(configs[i])
          << '\n';
      print_fit(out, "    ", cmp.curves[i].checkpoints, cmp.curves[i].mean_sq_dist);
    }
    for (const auto& r : cmp.ratios) {
      out << "ratio " << r.numerator << "/" << r.denominator
          << " at n=" << cmp.checkpoints.back() << ": " << format_real(r.ratio.back())
          << " +/- " << format_real(r.ratio_stderr.back()) << '\n';
    }
    write_file_atomic(configs[0].output.csv, comparison_csv(cmp));
    out << "wrote " << configs[0].output.csv << '\n';
    return kExitOk;
  });
}

}  // namespace adastoch::cli
