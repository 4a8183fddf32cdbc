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

#include "adastoch/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <type_traits>

#include "adastoch/core/schedules.hpp"
#include "adastoch/error.hpp"

namespace adastoch::cli {

namespace {

using Setter = std::function<std::optional<std::string>(ExperimentConfig&,
                                                        std::string_view)>;
using Getter = std::function<std::string(const ExperimentConfig&)>;

struct Field {
  std::string key;
  Setter set;
  Getter get;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

template <class Int>
std::optional<Int> to_int(std::string_view s) {
  s = trim(s);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_list(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    s = trim(s.substr(1, s.size() - 2));
  }
  std::vector<std::string_view> items;
  if (s.empty()) return items;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    items.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

std::optional<std::vector<double>> to_double_list(std::string_view s) {
  std::vector<double> out;
  for (auto item : split_list(s)) {
    auto v = to_double(item);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt(values[i]);
  }
  return out;
}

std::string mismatch(std::string_view expected, std::string_view got) {
  return "expected " + std::string(expected) + ", got '" + std::string(got) + "'";
}

template <class Ref>
Field real(std::string key, Ref ref) {
  return {std::move(key),
          [ref](ExperimentConfig& c, std::string_view v) -> std::optional<std::string> {
            auto x = to_double(v);
            if (!x) return mismatch("a finite real number", v);
            ref(c) = *x;
            return std::nullopt;
          },
          [ref](const ExperimentConfig& c) {
            return fmt(ref(const_cast<ExperimentConfig&>(c)));
          }};
}

template <class Int, class Ref>
Field integer(std::string key, Ref ref) {
  return {std::move(key),
          [ref](ExperimentConfig& c, std::string_view v) -> std::optional<std::string> {
            auto x = to_int<Int>(v);
            if (!x) {
              return mismatch(std::is_signed_v<Int> ? "an integer"
                                                    : "a non-negative integer",
                              v);
            }
            ref(c) = *x;
            return std::nullopt;
          },
          [ref](const ExperimentConfig& c) {
            return std::to_string(ref(const_cast<ExperimentConfig&>(c)));
          }};
}

template <class Ref>
Field boolean(std::string key, Ref ref) {
  return {std::move(key),
          [ref](ExperimentConfig& c, std::string_view v) -> std::optional<std::string> {
            v = trim(v);
            if (v == "true") {
              ref(c) = true;
            } else if (v == "false") {
              ref(c) = false;
            } else {
              return mismatch("true or false", v);
            }
            return std::nullopt;
          },
          [ref](const ExperimentConfig& c) {
            return std::string(ref(const_cast<ExperimentConfig&>(c)) ? "true"
                                                                      : "false");
          }};
}

template <class Enum, class Ref>
Field choice(std::string key, Ref ref,
             std::vector<std::pair<std::string_view, Enum>> names) {
  std::string expected;
  for (const auto& [name, value] : names) {
    if (!expected.empty()) expected += " | ";
    expected += name;
  }
  return {std::move(key),
          [ref, names, expected](ExperimentConfig& c,
                                 std::string_view v) -> std::optional<std::string> {
            v = trim(v);
            for (const auto& [name, value] : names) {
              if (v == name) {
                ref(c) = value;
                return std::nullopt;
              }
            }
            return mismatch(expected, v);
          },
          [ref, names](const ExperimentConfig& c) {
            const Enum value = ref(const_cast<ExperimentConfig&>(c));
            for (const auto& [name, candidate] : names) {
              if (candidate == value) return std::string(name);
            }
            return std::string("?");
          }};
}

std::optional<std::string> set_checkpoints(CheckpointSpec& spec, std::string_view v) {
  v = trim(v);
  constexpr std::string_view prefix = "geometric(";
  if (v.substr(0, prefix.size()) == prefix) {
    if (v.back() != ')') return mismatch("geometric(start, factor, max)", v);
    const auto args = split_list(v.substr(prefix.size(), v.size() - prefix.size() - 1));
    if (args.size() != 3) return mismatch("geometric(start, factor, max)", v);
    auto start = to_double(args[0]);
    auto factor = to_double(args[1]);
    auto max = to_int<std::uint64_t>(args[2]);
    if (!start || !factor || !max) return mismatch("geometric(start, factor, max)", v);
    spec = CheckpointSpec{true, *start, *factor, *max, {}};
    return std::nullopt;
  }
  std::vector<std::uint64_t> list;
  for (auto item : split_list(v)) {
    auto n = to_int<std::uint64_t>(item);
    if (!n) return mismatch("geometric(start, factor, max) or a list of integers", v);
    list.push_back(*n);
  }
  if (list.empty()) return mismatch("geometric(start, factor, max) or a list of integers", v);
  spec = CheckpointSpec{false, 1.0, 1.25, 0, std::move(list)};
  return std::nullopt;
}

std::string get_checkpoints(const CheckpointSpec& spec) {
  if (spec.geometric) {
    return "geometric(" + fmt(spec.start) + ", " + fmt(spec.factor) + ", " +
           std::to_string(spec.max) + ")";
  }
  std::string out;
  for (std::size_t i = 0; i < spec.list.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(spec.list[i]);
  }
  return out;
}

const std::vector<Field>& fields() {
  using C = ExperimentConfig;
  static const std::vector<Field> table = {
      choice<ModelKind>("model.kind", [](C& c) -> auto& { return c.model.kind; },
                        {{"linear", ModelKind::linear}, {"glm", ModelKind::glm}}),
      integer<std::int64_t>("model.d", [](C& c) -> auto& { return c.model.d; }),
      real("model.kappa", [](C& c) -> auto& { return c.model.kappa; }),
      real("model.noise_std", [](C& c) -> auto& { return c.model.noise_std; }),
      choice<NoiseKind>("model.noise_kind",
                        [](C& c) -> auto& { return c.model.noise_kind; },
                        {{"gaussian", NoiseKind::gaussian},
                         {"student_t", NoiseKind::student_t}}),
      integer<std::int64_t>("model.noise_df",
                            [](C& c) -> auto& { return c.model.noise_df; }),
      real("model.sigma", [](C& c) -> auto& { return c.model.sigma; }),
      integer<std::uint64_t>("model.theta_seed",
                             [](C& c) -> auto& { return c.model.theta_seed; }),
      {"model.theta",
       [](C& c, std::string_view v) -> std::optional<std::string> {
         if (trim(v) == "auto") {
           c.model.theta.reset();
           return std::nullopt;
         }
         auto list = to_double_list(v);
         if (!list) return mismatch("auto or a list of reals", v);
         c.model.theta = std::move(*list);
         return std::nullopt;
       },
       [](const C& c) {
         return c.model.theta ? fmt_list(*c.model.theta) : std::string("auto");
       }},
      integer<std::uint64_t>("model.reference_n",
                             [](C& c) -> auto& { return c.model.reference_n; }),
      integer<std::uint64_t>("model.reference_seed",
                             [](C& c) -> auto& { return c.model.reference_seed; }),
      choice<ConditionerName>(
          "algorithm.conditioner",
          [](C& c) -> auto& { return c.algorithm.conditioner; },
          {{"identity", ConditionerName::identity},
           {"adagrad", ConditionerName::adagrad},
           {"newton_linear", ConditionerName::newton_linear},
           {"newton_glm", ConditionerName::newton_glm},
           {"gauss_newton", ConditionerName::gauss_newton},
           {"newton_decaying_ridge", ConditionerName::newton_decaying_ridge}}),
      real("algorithm.s0_scale", [](C& c) -> auto& { return c.algorithm.s0_scale; }),
      real("algorithm.adagrad_a", [](C& c) -> auto& { return c.algorithm.adagrad_a; }),
      real("algorithm.ridge_c", [](C& c) -> auto& { return c.algorithm.ridge_c; }),
      real("algorithm.ridge_beta", [](C& c) -> auto& { return c.algorithm.ridge_beta; }),
      real("algorithm.c_gamma", [](C& c) -> auto& { return c.algorithm.c_gamma; }),
      real("algorithm.gamma", [](C& c) -> auto& { return c.algorithm.gamma; }),
      boolean("algorithm.truncation", [](C& c) -> auto& { return c.algorithm.truncation; }),
      real("algorithm.c_beta", [](C& c) -> auto& { return c.algorithm.c_beta; }),
      real("algorithm.beta", [](C& c) -> auto& { return c.algorithm.beta; }),
      boolean("algorithm.floor", [](C& c) -> auto& { return c.algorithm.floor; }),
      real("algorithm.lambda0_prime",
           [](C& c) -> auto& { return c.algorithm.lambda0_prime; }),
      real("algorithm.lambda_prime",
           [](C& c) -> auto& { return c.algorithm.lambda_prime; }),
      boolean("algorithm.averaging", [](C& c) -> auto& { return c.algorithm.averaging; }),
      integer<std::uint64_t>("run.n_steps", [](C& c) -> auto& { return c.run.n_steps; }),
      integer<std::uint64_t>("run.n_reps", [](C& c) -> auto& { return c.run.n_reps; }),
      integer<std::uint64_t>("run.base_seed", [](C& c) -> auto& { return c.run.base_seed; }),
      {"run.checkpoints",
       [](C& c, std::string_view v) { return set_checkpoints(c.run.checkpoints, v); },
       [](const C& c) { return get_checkpoints(c.run.checkpoints); }},
      {"run.theta0",
       [](C& c, std::string_view v) -> std::optional<std::string> {
         const auto t = trim(v);
         if (t == "zero" || t == "star") {
           c.run.theta0 = t == "zero" ? Theta0Kind::zero : Theta0Kind::star;
           c.run.theta0_values.clear();
           return std::nullopt;
         }
         auto list = to_double_list(v);
         if (!list) return mismatch("zero, star or a list of reals", v);
         c.run.theta0 = Theta0Kind::list;
         c.run.theta0_values = std::move(*list);
         return std::nullopt;
       },
       [](const C& c) {
         switch (c.run.theta0) {
           case Theta0Kind::zero: return std::string("zero");
           case Theta0Kind::star: return std::string("star");
           case Theta0Kind::list: break;
         }
         return fmt_list(c.run.theta0_values);
       }},
      {"output.csv",
       [](C& c, std::string_view v) -> std::optional<std::string> {
         c.output.csv = std::string(trim(v));
         return std::nullopt;
       },
       [](const C& c) { return c.output.csv; }},
      integer<int>("output.verbosity", [](C& c) -> auto& { return c.output.verbosity; }),
  };
  return table;
}

class Validator {
 public:
  Validator(const ExperimentConfig& c, const std::map<std::string, int>& lines)
      : c_(c), lines_(lines) {}

  std::vector<ConfigError> run() {
    const auto& m = c_.model;
    const auto& a = c_.algorithm;
    const auto& r = c_.run;
    check(m.d >= 1, "model.d", "model.d must be >= 1");
    check(m.kappa >= 1.0, "model.kappa", "model.kappa must be >= 1");
    check(m.noise_std >= 0.0, "model.noise_std", "model.noise_std must be >= 0");
    if (m.noise_kind == NoiseKind::student_t) {
      check(m.noise_df > 4, "model.noise_df",
            "student_t noise needs model.noise_df > 4 (finite fourth moment)");
    }
    if (m.kind == ModelKind::glm) {
      check(m.sigma > 0.0, "model.sigma", "model.sigma must be > 0");
      check(m.reference_n >= 100000, "model.reference_n",
            "model.reference_n must be >= 100000");
    }
    if (m.theta && m.d >= 1) {
      check(static_cast<std::int64_t>(m.theta->size()) == m.d, "model.theta",
            "model.theta has " + std::to_string(m.theta->size()) +
                " entries, expected model.d = " + std::to_string(m.d));
    }

    check(a.s0_scale > 0.0, "algorithm.s0_scale", "algorithm.s0_scale must be > 0");
    check(a.adagrad_a > 0.0, "algorithm.adagrad_a", "algorithm.adagrad_a must be > 0");
    check(a.ridge_c > 0.0, "algorithm.ridge_c", "algorithm.ridge_c must be > 0");
    check(a.ridge_beta > 0.0, "algorithm.ridge_beta", "algorithm.ridge_beta must be > 0");
    if (a.conditioner == ConditionerName::newton_glm) {
      check(m.kind == ModelKind::glm, "algorithm.conditioner",
            "newton_glm needs model.kind = glm");
    }
    if (a.truncation) {
      check(a.c_beta > 0.0, "algorithm.c_beta", "algorithm.c_beta must be > 0");
    }
    check_schedules();

    check(r.n_steps >= 1, "run.n_steps", "run.n_steps must be >= 1");
    check(r.n_reps >= 1, "run.n_reps", "run.n_reps must be >= 1");
    const auto& cp = r.checkpoints;
    if (cp.geometric) {
      check(cp.start >= 1.0, "run.checkpoints", "geometric start must be >= 1");
      check(cp.factor > 1.0, "run.checkpoints", "geometric factor must be > 1");
      check(cp.max >= 1 && cp.max <= r.n_steps, "run.checkpoints",
            "geometric max must lie in [1, run.n_steps]");
    } else {
      bool ordered = true;
      for (std::size_t i = 0; i < cp.list.size(); ++i) {
        if (cp.list[i] < 1 || (i > 0 && cp.list[i] <= cp.list[i - 1])) ordered = false;
      }
      check(ordered, "run.checkpoints", "checkpoints must be strictly increasing and >= 1");
      check(cp.list.empty() || cp.list.back() <= r.n_steps, "run.checkpoints",
            "checkpoints must not exceed run.n_steps");
    }
    if (r.theta0 == Theta0Kind::list) {
      check(static_cast<std::int64_t>(r.theta0_values.size()) == m.d, "run.theta0",
            "run.theta0 has " + std::to_string(r.theta0_values.size()) +
                " entries, expected model.d = " + std::to_string(m.d));
    }
    check(!c_.output.csv.empty(), "output.csv", "output.csv must not be empty");
    check(c_.output.verbosity >= 0 && c_.output.verbosity <= 2, "output.verbosity",
          "output.verbosity must be 0, 1 or 2");
    return std::move(errors_);
  }

 private:
  int line_of(const std::string& key) const {
    auto it = lines_.find(key);
    return it == lines_.end() ? 0 : it->second;
  }

  void check(bool ok, const std::string& key, const std::string& message) {
    if (!ok) errors_.push_back({line_of(key), message});
  }

  void check_schedules() {
    const auto& a = c_.algorithm;
    try {
      Schedules s{StepSchedule(a.c_gamma, a.gamma), std::nullopt, std::nullopt};
      if (a.truncation && a.c_beta > 0.0) s.trunc.emplace(a.c_beta, a.beta);
      if (a.floor) s.floor.emplace(a.lambda0_prime, a.lambda_prime);
      validate_schedules(s);
    } catch (const ContractViolation& e) {
      const std::string what = e.what();
      std::string key = "algorithm.gamma";
      if (what.find("lambda_prime") != std::string::npos) {
        key = "algorithm.lambda_prime";
      } else if (what.find("lambda0_prime") != std::string::npos) {
        key = "algorithm.lambda0_prime";
      } else if (what.find("floor") != std::string::npos) {
        key = "algorithm.floor";
      } else if (what.find("c_beta") != std::string::npos) {
        key = "algorithm.c_beta";
      } else if (what.find("beta") != std::string::npos) {
        key = "algorithm.beta";
      } else if (what.find("c_gamma") != std::string::npos) {
        key = "algorithm.c_gamma";
      }
      errors_.push_back({line_of(key), what});
    }
  }

  const ExperimentConfig& c_;
  const std::map<std::string, int>& lines_;
  std::vector<ConfigError> errors_;
};

ParamVector auto_parameter(Index d, std::uint64_t seed) {
  RngStream stream(seed, 0);
  ParamVector v(d);
  for (Index i = 0; i < d; ++i) v[i] = stream.gaussian();
  return v / v.norm();
}

ParamVector to_vector(const std::vector<double>& values) {
  ParamVector v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Index>(i)] = values[i];
  return v;
}

}  // namespace

std::string format_error(const ConfigError& error) {
  if (error.line == 0) return "config: " + error.message;
  return "config line " + std::to_string(error.line) + ": " + error.message;
}

ParseResult parse_config(std::string_view text) {
  ParseResult result;
  ExperimentConfig config;
  std::map<std::string, int> lines;
  std::map<std::string, const Field*> by_key;
  for (const Field& f : fields()) by_key[f.key] = &f;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      result.errors.push_back({line_no, "expected 'section.key = value'"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    auto field = by_key.find(key);
    if (field == by_key.end()) {
      result.errors.push_back({line_no, "unknown key '" + key + "'"});
      continue;
    }
    if (auto seen = lines.find(key); seen != lines.end()) {
      result.errors.push_back({line_no, "duplicate key '" + key + "' (lines " +
                                            std::to_string(seen->second) + " and " +
                                            std::to_string(line_no) + ")"});
      continue;
    }
    lines[key] = line_no;
    if (value.empty()) {
      result.errors.push_back({line_no, key + ": missing value"});
      continue;
    }
    if (auto err = field->second->set(config, value)) {
      result.errors.push_back({line_no, key + ": " + *err});
    }
  }
  if (!result.errors.empty()) return result;

  result.errors = Validator(config, lines).run();
  if (result.errors.empty()) result.config = std::move(config);
  return result;
}

std::string render(const ExperimentConfig& config) {
  std::ostringstream out;
  std::string section;
  for (const Field& f : fields()) {
    const std::string head = f.key.substr(0, f.key.find('.'));
    if (head != section) {
      if (!section.empty()) out << '\n';
      section = head;
    }
    out << f.key << " = " << f.get(config) << '\n';
  }
  return out.str();
}

std::string_view name_of(ModelKind kind) {
  return kind == ModelKind::linear ? "linear" : "glm";
}

std::string_view name_of(ConditionerName name) {
  switch (name) {
    case ConditionerName::identity: return "identity";
    case ConditionerName::adagrad: return "adagrad";
    case ConditionerName::newton_linear: return "newton_linear";
    case ConditionerName::newton_glm: return "newton_glm";
    case ConditionerName::gauss_newton: return "gauss_newton";
    case ConditionerName::newton_decaying_ridge: return "newton_decaying_ridge";
  }
  return "?";
}

std::vector<std::uint64_t> resolve_checkpoints(const CheckpointSpec& spec) {
  if (!spec.geometric) return spec.list;
  return geometric_checkpoints(spec.start, spec.factor, spec.max);
}

Experiment build_experiment(const ExperimentConfig& config) {
  const auto& m = config.model;
  const auto& a = config.algorithm;
  const Index d = static_cast<Index>(m.d);
  const ParamVector theta = m.theta ? to_vector(*m.theta) : auto_parameter(d, m.theta_seed);
  Design design = make_design(d, m.kappa);

  ModelSpec model;
  RiskReference reference = RiskReference::theta_star;
  if (m.kind == ModelKind::linear) {
    model = make_linear_model(theta, std::move(design), m.noise_std, m.noise_kind,
                              static_cast<int>(m.noise_df));
  } else {
    GlmRidgeSpec glm = make_glm_model(theta, std::move(design), m.sigma);
    glm.reference = minimizer_reference(glm, m.reference_n, m.reference_seed);
    model = std::move(glm);
    reference = RiskReference::reference_minimizer;
  }

  const SymMatrix s0 = SymMatrix::identity(d).scaled(a.s0_scale);
  ConditionerKind kind;
  switch (a.conditioner) {
    case ConditionerName::identity: kind = IdentityKind{}; break;
    case ConditionerName::adagrad:
      kind = AdagradKind{ParamVector::Constant(d, a.adagrad_a)};
      break;
    case ConditionerName::newton_linear: kind = NewtonLinearKind{s0}; break;
    case ConditionerName::newton_glm: kind = NewtonGlmKind{s0, m.sigma}; break;
    case ConditionerName::gauss_newton: kind = GaussNewtonKind{s0}; break;
    case ConditionerName::newton_decaying_ridge:
      kind = NewtonDecayingRidgeKind{s0, a.ridge_c, a.ridge_beta};
      break;
  }

  Schedules schedules{StepSchedule(a.c_gamma, a.gamma), std::nullopt, std::nullopt};
  if (a.truncation) schedules.trunc.emplace(a.c_beta, a.beta);
  if (a.floor) schedules.floor.emplace(a.lambda0_prime, a.lambda_prime);
  validate_schedules(schedules);

  RunOptions opts;
  opts.n_steps = config.run.n_steps;
  opts.averaging = a.averaging;
  opts.checkpoints = resolve_checkpoints(config.run.checkpoints);
  opts.record_risk_against = reference;
  switch (config.run.theta0) {
    case Theta0Kind::zero: opts.theta0 = ParamVector::Zero(d); break;
    case Theta0Kind::star: opts.theta0 = theta; break;
    case Theta0Kind::list: opts.theta0 = to_vector(config.run.theta0_values); break;
  }
  return Experiment{std::move(model), std::move(kind), std::move(schedules),
                    std::move(opts)};
}

std::string regime_summary(const ExperimentConfig& config) {
  const auto& a = config.algorithm;
  const std::string g = fmt(a.gamma);
  const bool fast = a.gamma > 0.5;
  std::string out;
  switch (a.conditioner) {
    case ConditionerName::identity:
      out = a.averaging ? "averaged SGD, gamma=" + g +
                              ": averaged iterate at the 1/n rate, last iterate n^-gamma"
                        : "plain SGD, gamma=" + g + ": last iterate at rate n^-gamma";
      return out;
    case ConditionerName::adagrad:
      out = "truncated Adagrad, gamma=" + g;
      out += fast ? ": rate n^-gamma" : " with clipped and floored diagonal: usual 1/sqrt(n) rate";
      break;
    case ConditionerName::newton_glm:
      out = "stochastic Newton for ridge logistic regression, gamma=" + g;
      out += fast ? ": rate n^-gamma towards the ridge minimizer"
                  : " with eigenvalue floor: rate n^-gamma towards the ridge minimizer";
      break;
    default:
      out = std::string(name_of(a.conditioner)) + ", gamma=" + g;
      out += fast ? ": truncated Newton-type regime, rate n^-gamma"
                  : " with eigenvalue floor: rate n^-gamma";
      break;
  }
  if (!a.truncation) {
    out += " (untruncated: no convergence guarantee in quadratic mean)";
  }
  if (a.averaging) out += "; averaged iterate at the 1/n rate";
  return out;
}

}  // namespace adastoch::cli
