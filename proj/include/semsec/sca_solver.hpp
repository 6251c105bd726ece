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

#ifndef SEMSEC_SCA_SOLVER_HPP_
#define SEMSEC_SCA_SOLVER_HPP_

#include <span>
#include <vector>

#include "semsec/channel_model.hpp"
#include "semsec/optimal_solver.hpp"
#include "semsec/rate_engine.hpp"
#include "semsec/semantic_rate.hpp"

namespace semsec {

struct ScaConfig {
  int max_iters = 50;
  double obj_tol = 1e-4;     // stop when the relative objective gain drops below this
  double p_floor = 1e-9;     // semantic power never reaches zero (the constraint takes lg(p_s))
  double chi_margin = 1e-6;  // keeps chi strictly inside (a1, a2)
  double inner_tol = 1e-6;   // projected-gradient stationarity of each per-state solve
  int max_inner_iters = 5000;
  int max_dual_steps = 200;

  void validate() const;
};

/// Split-power variables of one state: semantic power, bit power and the
/// similarity surrogate chi.
struct ScaVariables {
  double p_s = 0.0;
  double p_b = 0.0;
  double chi = 0.0;
};

using ScaPoint = std::vector<ScaVariables>;

struct ScaResult {
  std::vector<Allocation> allocations;  // mu is semantic-first everywhere
  std::vector<double> rates;            // clamped per-state secrecy rate
  double ergodic_rate = 0.0;
  double avg_power = 0.0;
  double lambda = 0.0;                  // multiplier of the last surrogate solve
  std::vector<double> objective_history;  // starts with the initial point
  int iterations = 0;
  bool converged = false;
  ScaPoint point;
};

namespace sca {

/// Exact eavesdropper rate in split variables.
double eve_rate(double p_b, double p_s, double g_e);

/// Similarity reached at (p_s, p_b) with semantic-first decoding.
double split_similarity(double p_s, double p_b, double g_l, const SemanticParams& sp);

/// Upper bound on eve_rate from linearizing log2(1 + (p_s + p_b) g_e) at the
/// anchor. Convex in (p_b, p_s) and tight at the anchor.
double re_upper_bound(double p_b, double p_s, double anchor_p_b, double anchor_p_s, double g_e);

/// Left side of the log-domain similarity constraint:
/// ln(chi - a1) + c1 * 10 lg(1 + p_b g_l).
double similarity_lhs(double chi, double p_b, double g_l, const SemanticParams& sp);

/// Right side: c1 * 10 lg(p_s g_l) + c2 + ln(a2 - chi).
double similarity_rhs(double chi, double p_s, double g_l, const SemanticParams& sp);

/// Affine over-estimate of similarity_lhs linearized at the anchor. Throws if
/// anchor_chi <= a1.
double eta_bound(double chi, double p_b, double anchor_chi, double anchor_p_b, double g_l,
                 const SemanticParams& sp);

/// Mean of (rho/K) chi + log2(1 + p_b g_l) - eve_rate over states.
double objective(std::span<const FadingState> states, const ScaPoint& point,
                 const SemanticParams& sp);

/// Equal power split at min(P_avg, P_peak) per state with chi just under the
/// exact similarity.
ScaPoint init_point(std::span<const FadingState> states, const PowerBudget& budget,
                    const SemanticParams& sp, const ScaConfig& cfg);

struct SurrogateSolution {
  ScaPoint point;
  double surrogate_value = 0.0;  // convexified objective at point (before chi is re-tightened)
  double lambda = 0.0;           // average-power multiplier
  int dual_steps = 0;
};

/// One convexified problem around anchor, solved by bisection on the
/// average-power multiplier over independent per-state projected-gradient
/// solves. The returned chi is raised toward the exact similarity, which
/// keeps it feasible; if the true objective would drop the anchor is
/// returned unchanged. lambda_hint seeds the multiplier bracket.
SurrogateSolution solve_surrogate(std::span<const FadingState> states, const ScaPoint& anchor,
                                  const PowerBudget& budget, const SemanticParams& sp,
                                  const ScaConfig& cfg, double lambda_hint = 0.0);

/// Full SCA loop from init_point.
ScaResult run(std::span<const FadingState> states, const PowerBudget& budget,
              const SemanticParams& sp, const ScaConfig& cfg);

}  // namespace sca
}  // namespace semsec

#endif  // SEMSEC_SCA_SOLVER_HPP_
