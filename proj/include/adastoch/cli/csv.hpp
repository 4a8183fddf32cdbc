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

#include <string>

#include "adastoch/harness.hpp"

namespace adastoch::cli {

// Shortest text that parses back to the same double; '.' separator always.
std::string format_real(double v);

// n,mean_sq_dist,std_err[,mean_sq_dist_avg,std_err_avg],diverged_fraction
std::string risk_csv(const RiskCurve& curve);

// n,threshold,empirical_prob
std::string probe_csv(const TailProbeTable& table);

// n, then mean_sq_dist_i,std_err_i per run, then ratio_i_j,ratio_stderr_i_j.
std::string comparison_csv(const Comparison& comparison);

// Writes through a temporary sibling and renames it into place, so a failed
// write never leaves a partial file at `path`. Throws std::runtime_error.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace adastoch::cli
