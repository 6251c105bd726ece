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

#include "semsec/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <string>

namespace semsec {
namespace {

using Clock = std::chrono::steady_clock;

SweepCell run_cell(const ExperimentConfig& cfg, const std::vector<FadingState>& states,
                   SchemeKind scheme, double p_bar, const SemanticParams& sp) {
  const PowerBudget budget{cfg.peak_w, p_bar};
  SweepCell cell;
  cell.row.scheme = scheme;
  cell.row.p_bar = p_bar;
  cell.row.k = sp.k;
  cell.row.seed = cfg.channel.seed;

  const auto start = Clock::now();
  try {
    if (scheme == SchemeKind::kScSca) {
      ScaResult r = sca::run(states, budget, sp, cfg.sca);
      cell.row.ergodic_rate = r.ergodic_rate;
      cell.row.avg_power = r.avg_power;
      cell.allocations = std::move(r.allocations);
      cell.rates = std::move(r.rates);
      cell.sca_objective = std::move(r.objective_history);
      cell.sca_converged = r.converged;
      cell.lambda = r.lambda;
      // The semantic stream keeps a floor power, so "off" means at the floor.
      const double off = 2.0 * cfg.sca.p_floor;
      cell.zero_power_states = static_cast<std::size_t>(std::count_if(
          cell.allocations.begin(), cell.allocations.end(),
          [off](const Allocation& a) { return a.p <= off; }));
    } else {
      DualSolution r = optimal::solve(states, budget, sp, cfg.solver, scheme);
      cell.row.ergodic_rate = r.ergodic_rate;
      cell.row.avg_power = r.avg_power;
      cell.row.duality_gap = r.duality_gap();
      cell.allocations = std::move(r.allocations);
      cell.rates = std::move(r.rates);
      cell.lambda = r.lambda;
      cell.zero_power_states = r.zero_power_states;
    }
  } catch (const std::exception& e) {
    throw SweepError(std::string(to_string(scheme)) + " at P_avg=" + std::to_string(p_bar) +
                     " W, K=" + std::to_string(sp.k) + ": " + e.what());
  }
  if (cfg.record_wall_time) {
    cell.row.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
  return cell;
}

}  // namespace

std::vector<SweepRow> SweepResult::rows() const {
  std::vector<SweepRow> out;
  out.reserve(cells.size());
  for (const SweepCell& c : cells) out.push_back(c.row);
  return out;
}

SweepResult run_sweep(const ExperimentConfig& cfg,
                      const std::function<void(const SweepCell&)>& on_cell) {
  cfg.validate();
  SweepResult result;
  result.states = sample_states(cfg.channel, cfg.n_states);

  auto emit = [&](SweepCell cell) {
    if (on_cell) on_cell(cell);
    result.cells.push_back(std::move(cell));
  };

  for (double p_bar : cfg.average_w) {
    for (SchemeKind scheme : cfg.schemes) {
      emit(run_cell(cfg, result.states, scheme, p_bar, cfg.semantic));
    }
  }

  // The K sweep adds only the K values not already covered above.
  std::vector<int> extra;
  for (int k : cfg.k_sweep) {
    if (k != cfg.semantic.k && std::find(extra.begin(), extra.end(), k) == extra.end()) {
      extra.push_back(k);
    }
  }
  const bool base_has_scheme = std::find(cfg.schemes.begin(), cfg.schemes.end(),
                                         cfg.k_sweep_scheme) != cfg.schemes.end();
  const bool need_base = !base_has_scheme && !cfg.k_sweep.empty() &&
                         std::find(cfg.k_sweep.begin(), cfg.k_sweep.end(), cfg.semantic.k) !=
                             cfg.k_sweep.end();
  for (double p_bar : cfg.average_w) {
    if (need_base) emit(run_cell(cfg, result.states, cfg.k_sweep_scheme, p_bar, cfg.semantic));
    for (int k : extra) {
      emit(run_cell(cfg, result.states, cfg.k_sweep_scheme, p_bar, cfg.semantic_for(k)));
    }
  }
  return result;
}

}  // namespace semsec
