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

#include "adastoch/cli/csv.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace adastoch::cli {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string risk_csv(const RiskCurve& curve) {
  const bool averaged = curve.mean_sq_dist_avg.has_value();
  std::string out = "n,mean_sq_dist,std_err";
  if (averaged) out += ",mean_sq_dist_avg,std_err_avg";
  out += ",diverged_fraction\n";
  for (std::size_t c = 0; c < curve.checkpoints.size(); ++c) {
    out += std::to_string(curve.checkpoints[c]);
    out += ',' + format_real(curve.mean_sq_dist[c]);
    out += ',' + format_real(curve.std_err[c]);
    if (averaged) {
      out += ',' + format_real((*curve.mean_sq_dist_avg)[c]);
      out += ',' + format_real((*curve.std_err_avg)[c]);
    }
    out += ',' + format_real(curve.diverged_fraction_at[c]);
    out += '\n';
  }
  return out;
}

std::string probe_csv(const TailProbeTable& table) {
  std::string out = "n,threshold,empirical_prob\n";
  for (std::size_t c = 0; c < table.checkpoints.size(); ++c) {
    for (std::size_t t = 0; t < table.thresholds.size(); ++t) {
      out += std::to_string(table.checkpoints[c]) + ',' +
             format_real(table.thresholds[t]) + ',' +
             format_real(table.probability[c][t]) + '\n';
    }
  }
  return out;
}

std::string comparison_csv(const Comparison& comparison) {
  std::string out = "n";
  for (std::size_t i = 0; i < comparison.curves.size(); ++i) {
    const auto s = std::to_string(i);
    out += ",mean_sq_dist_" + s + ",std_err_" + s;
  }
  for (const auto& r : comparison.ratios) {
    const auto s = std::to_string(r.numerator) + '_' + std::to_string(r.denominator);
    out += ",ratio_" + s + ",ratio_stderr_" + s;
  }
  out += '\n';
  for (std::size_t c = 0; c < comparison.checkpoints.size(); ++c) {
    out += std::to_string(comparison.checkpoints[c]);
    for (const auto& curve : comparison.curves) {
      out += ',' + format_real(curve.mean_sq_dist[c]);
      out += ',' + format_real(curve.std_err[c]);
    }
    for (const auto& r : comparison.ratios) {
      out += ',' + format_real(r.ratio[c]);
      out += ',' + format_real(r.ratio_stderr[c]);
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (f) f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (f) f.flush();
    if (!f) {
      std::remove(tmp.c_str());
      throw std::runtime_error("cannot write " + path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot write " + path + ": " + ec.message());
  }
}

}  // namespace adastoch::cli
