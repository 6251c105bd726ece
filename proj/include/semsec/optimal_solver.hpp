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

#ifndef SEMSEC_OPTIMAL_SOLVER_HPP_
#define SEMSEC_OPTIMAL_SOLVER_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "semsec/channel_model.hpp"
#include "semsec/rate_engine.hpp"
#include "semsec/rate_kernels.hpp"
#include "semsec/semantic_rate.hpp"

namespace semsec {

/// Peak (per state) and long-term average transmit power, watts.
struct PowerBudget {
  double peak = 10.0;
  double average = 1.0;

  /// Requires 0 < average <= peak.
  void validate() const;
};

/// Resolution and stopping rules for the dual method. The per-state search is
/// a uniform (p, beta) grid followed by refine_rounds zoomed grids of
/// refine_points^2 around the incumbent, each shrinking the cell by
/// (refine_points - 1) / 2.
struct DualConfig {
  int grid_p = 64;
  int grid_beta = 64;
  int refine_rounds = 6;
  int refine_points = 9;
  double lambda_lo = 0.0;
  double lambda_hi = 1.0;
  double lambda_tol = 1e-6;  // relative residual of the average-power constraint
  int max_bisections = 200;
  std::optional<KernelIsa> isa;  // empty: widest available

  void validate() const;
};

struct StateOptimum {
  double utility = 0.0;  // rate - lambda * p
  double rate = 0.0;
  Allocation allocation;
};

struct DualSolution {
  std::vector<Allocation> allocations;
  std::vector<double> rates;  // clamped per-state secrecy rate
  double lambda = 0.0;
  double ergodic_rate = 0.0;
  double avg_power = 0.0;
  double dual_value = 0.0;
  bool apc_binding = false;
  int bisection_steps = 0;
  std::size_t zero_power_states = 0;

  /// (dual_value - ergodic_rate) / dual_value.
  double duality_gap() const;
};

namespace optimal {

/// Lagrangian of one fading state: secrecy_rate - lambda * p.
double per_state_objective(const Allocation& a, const FadingState& s, double lambda,
                           const SemanticParams& sp);

/// Exhaustive search of one state's subproblem for one scheme. The coarse
/// grid does not depend on lambda, so it is evaluated once at construction
/// and reused across the whole bisection.
class StateSearch {
 public:
  /// scheme must be kScOptimal, kBitOnly or kBitAn.
  StateSearch(const FadingState& state, SchemeKind scheme, const SemanticParams& sp,
              double peak, const DualConfig& cfg);

  StateOptimum solve(double lambda) const;

  /// Exact (scalar) clamped secrecy rate of an allocation under this scheme.
  double rate(const Allocation& a) const;

 private:
  struct Envelope {
    DecodeOrder mu;
    std::vector<double> best_rate;  // max over the beta grid, per p grid point
    std::vector<double> best_beta;
  };

  StateOptimum search_order(const Envelope& env, double lambda) const;

  FadingState state_;
  SchemeKind scheme_;
  SemanticParams sp_;
  double peak_;
  DualConfig cfg_;
  KernelIsa isa_;
  std::vector<double> p_grid_;
  std::vector<double> beta_grid_;
  std::vector<Envelope> envelopes_;  // one per admissible decoding order
};

/// Best (utility, allocation) of one state at multiplier lambda. When
/// g_L <= g_E only the semantic-first order is searched.
StateOptimum solve_state(const FadingState& s, double lambda, const SemanticParams& sp,
                         double peak, const DualConfig& cfg,
                         SchemeKind scheme = SchemeKind::kScOptimal);

/// Mean of the per-state optimal powers at lambda.
double avg_power(double lambda, std::span<const FadingState> states, const SemanticParams& sp,
                 double peak, const DualConfig& cfg, SchemeKind scheme = SchemeKind::kScOptimal);

/// Maximizes the ergodic secrecy rate under both power constraints by
/// bisection on the average-power multiplier. The baselines reuse this with
/// their own per-state rate.
DualSolution solve(std::span<const FadingState> states, const PowerBudget& budget,
                   const SemanticParams& sp, const DualConfig& cfg,
                   SchemeKind scheme = SchemeKind::kScOptimal);

}  // namespace optimal
}  // namespace semsec

#endif  // SEMSEC_OPTIMAL_SOLVER_HPP_
