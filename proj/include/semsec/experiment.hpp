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

#ifndef SEMSEC_EXPERIMENT_HPP_
#define SEMSEC_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semsec/channel_model.hpp"
#include "semsec/optimal_solver.hpp"
#include "semsec/rate_engine.hpp"
#include "semsec/sca_solver.hpp"
#include "semsec/semantic_rate.hpp"

namespace semsec {

/// Everything a sweep needs. Defaults reproduce the reference setup: 30 m
/// links, -30 dB at 1 m, exponent 4, -80 dBm noise, 10 W peak, K = 5 fit.
struct ExperimentConfig {
  ChannelConfig channel;
  SemanticParams semantic;
  /// Logistic fits for other K. Any K without an entry reuses the base
  /// similarity curve and only changes the rho/K prefactor.
  std::vector<SemanticParams> semantic_overrides;
  std::vector<int> k_sweep{3, 5, 8};
  SchemeKind k_sweep_scheme = SchemeKind::kScSca;
  double peak_w = 10.0;
  std::vector<double> average_w{0.1, 0.5, 1.0, 5.0, 10.0};
  std::vector<SchemeKind> schemes{SchemeKind::kScOptimal, SchemeKind::kScSca,
                                  SchemeKind::kBitAn, SchemeKind::kBitOnly};
  std::size_t n_states = 1000;
  DualConfig solver;
  ScaConfig sca;
  std::filesystem::path output_dir = "results";
  bool record_wall_time = false;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// Semantic parameters used for a given K.
  SemanticParams semantic_for(int k) const;
};

/// Parses the JSON config text. Missing fields keep their defaults; unknown
/// keys, wrong types and invariant violations throw ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct SweepRow {
  SchemeKind scheme = SchemeKind::kScOptimal;
  double p_bar = 0.0;
  int k = 5;
  double ergodic_rate = 0.0;
  double avg_power = 0.0;
  std::optional<double> duality_gap;  // dual-method schemes only
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
};

struct SweepCell {
  SweepRow row;
  std::vector<Allocation> allocations;
  std::vector<double> rates;
  std::vector<double> sca_objective;  // sc_sca only
  bool sca_converged = false;
  double lambda = 0.0;
  std::size_t zero_power_states = 0;
};

struct SweepResult {
  std::vector<FadingState> states;  // shared by every cell
  std::vector<SweepCell> cells;

  std::vector<SweepRow> rows() const;
};

/// Failure of one sweep cell, tagged with its scheme and budget.
class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs every (scheme, P_avg) cell at the base K, then the K sweep for
/// k_sweep_scheme. One fading-state set is drawn and reused by all cells.
SweepResult run_sweep(const ExperimentConfig& cfg,
                      const std::function<void(const SweepCell&)>& on_cell = {});

}  // namespace semsec

#endif  // SEMSEC_EXPERIMENT_HPP_
