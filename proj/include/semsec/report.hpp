// Copyright 2026 The semsec Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEMSEC_REPORT_HPP_
#define SEMSEC_REPORT_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "semsec/channel_model.hpp"
#include "semsec/experiment.hpp"

namespace semsec {

inline constexpr const char* kSweepCsvHeader =
    "scheme,p_bar_w,k,ergodic_secrecy_rate_bps_hz,avg_power_w,duality_gap,wall_ms,seed";

/// Fixed (non-exponent) notation rounded to six significant digits.
std::string format_sig6(double value);

/// Writes the sweep table. Throws std::runtime_error naming the path on I/O
/// failure.
void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);

/// Parses a file written by emit_csv.
std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path);

/// Per-state audit dump: gains, allocation and secrecy rate at full precision.
void emit_allocations(const SweepCell& cell, std::span<const FadingState> states,
                      const std::filesystem::path& path);

/// SVG line chart, P_avg on a log axis, one series per (scheme, K).
void emit_plot(std::span<const SweepRow> rows, const std::filesystem::path& path,
               const std::string& title);

}  // namespace semsec

#endif  // SEMSEC_REPORT_HPP_
