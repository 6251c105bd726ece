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

#include "semsec/optimal_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "semsec/errors.hpp"

namespace semsec {

void PowerBudget::validate() const {
  if (!(std::isfinite(peak) && peak > 0.0)) {
    throw std::invalid_argument("budget.peak: must be a positive power");
  }
  if (!(std::isfinite(average) && average > 0.0 && average <= peak)) {
    throw std::invalid_argument("budget.average: must satisfy 0 < average <= peak");
  }
}

void DualConfig::validate() const {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("solver.") + field + ": " + what);
  };
  require(grid_p >= 2, "grid_p", "must be at least 2");
  require(grid_beta >= 2, "grid_beta", "must be at least 2");
  require(refine_rounds >= 0, "refine_rounds", "must be non-negative");
  require(refine_points >= 3, "refine_points", "must be at least 3");
  require(lambda_lo >= 0.0, "lambda_lo", "must be non-negative");
  require(lambda_hi > lambda_lo, "lambda_hi", "must exceed lambda_lo");
  require(lambda_tol > 0.0, "lambda_tol", "must be positive");
  require(max_bisections >= 1, "max_bisections", "must be at least 1");
}

double DualSolution::duality_gap() const {
  return dual_value > 0.0 ? (dual_value - ergodic_rate) / dual_value : 0.0;
}

namespace optimal {
namespace {

constexpr int kMaxMovesPerRound = 16;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  v.back() = hi;
  return v;
}

RateObjective objective_for(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::kScOptimal:
      return RateObjective::kSemantic;
    case SchemeKind::kBitOnly:
    case SchemeKind::kBitAn:
      return RateObjective::kBitAn;
    case SchemeKind::kScSca:
      break;
  }
  throw std::invalid_argument("optimal solver: sc_sca is handled by the SCA solver");
}

}  // namespace

double per_state_objective(const Allocation& a, const FadingState& s, double lambda,
                           const SemanticParams& sp) {
  return secrecy_rate(a, s, sp) - lambda * a.p;
}

StateSearch::StateSearch(const FadingState& state, SchemeKind scheme, const SemanticParams& sp,
                         double peak, const DualConfig& cfg)
    : state_(state),
      scheme_(scheme),
      sp_(sp),
      peak_(peak),
      cfg_(cfg),
      isa_(cfg.isa.value_or(detect_kernel_isa())) {
  const RateObjective objective = objective_for(scheme);
  p_grid_ = linspace(0.0, peak, cfg.grid_p);
  // Bit-only is the AN formula pinned at beta = 0.
  beta_grid_ = scheme == SchemeKind::kBitOnly ? std::vector<double>{0.0}
                                              : linspace(0.0, 1.0, cfg.grid_beta);

  std::vector<DecodeOrder> orders{DecodeOrder::kSemanticFirst};
  // Bit-first can only win when the legitimate channel is the stronger one.
  if (scheme == SchemeKind::kScOptimal && state.g_l > state.g_e) {
    orders.push_back(DecodeOrder::kBitFirst);
  }

  const std::size_t np = p_grid_.size();
  const std::size_t nb = beta_grid_.size();
  std::vector<double> pw(np * nb);
  std::vector<double> bw(np * nb);
  std::vector<double> out(np * nb);
  for (std::size_t i = 0; i < np; ++i) {
    std::fill_n(pw.begin() + static_cast<std::ptrdiff_t>(i * nb), nb, p_grid_[i]);
    std::copy(beta_grid_.begin(), beta_grid_.end(), bw.begin() + static_cast<std::ptrdiff_t>(i * nb));
  }

  for (DecodeOrder mu : orders) {
    secrecy_rate_batch(isa_, RateKernelInputs{state, sp, mu, objective}, pw, bw, out);
    Envelope env{mu, std::vector<double>(np), std::vector<double>(np)};
    for (std::size_t i = 0; i < np; ++i) {
      const auto row = out.begin() + static_cast<std::ptrdiff_t>(i * nb);
      const auto best = std::max_element(row, row + static_cast<std::ptrdiff_t>(nb));
      env.best_rate[i] = *best;
      env.best_beta[i] = beta_grid_[static_cast<std::size_t>(best - row)];
    }
    // Every beta ties at p = 0; refine from the neighbour's split instead.
    env.best_beta[0] = env.best_beta[1];
    envelopes_.push_back(std::move(env));
  }
}

double StateSearch::rate(const Allocation& a) const {
  return scheme_secrecy_rate(scheme_, a, state_, sp_);
}

StateOptimum StateSearch::search_order(const Envelope& env, double lambda) const {
  // Coarse argmax; lambda * p does not depend on beta, so the envelope is
  // the full 2-D grid maximum.
  std::size_t best_i = 0;
  double best_u = env.best_rate[0] - lambda * p_grid_[0];
  for (std::size_t i = 1; i < p_grid_.size(); ++i) {
    const double u = env.best_rate[i] - lambda * p_grid_[i];
    if (u > best_u) {
      best_u = u;
      best_i = i;
    }
  }
  double p0 = p_grid_[best_i];
  double b0 = env.best_beta[best_i];
  double rate0 = env.best_rate[best_i];

  const bool fixed_beta = beta_grid_.size() == 1;
  double hp = peak_ / (cfg_.grid_p - 1);
  double hb = 1.0 / (cfg_.grid_beta - 1);
  const int n = cfg_.refine_points;
  const std::size_t nb = fixed_beta ? 1 : static_cast<std::size_t>(n);
  const std::size_t np = static_cast<std::size_t>(n);
  std::vector<double> pw(np * nb);
  std::vector<double> bw(np * nb);
  std::vector<double> out(np * nb);
  const RateKernelInputs in{state_, sp_, env.mu, objective_for(scheme_)};

  // Zoomed grids around the incumbent. A round re-centres at the same scale
  // while the incumbent keeps moving (ridges in (p, beta) are diagonal), and
  // shrinks only once it stays put.
  for (int round = 0; round < cfg_.refine_rounds; ++round) {
    for (int move = 0; move < kMaxMovesPerRound; ++move) {
      const double p_lo = std::max(0.0, p0 - hp);
      const double p_hi = std::min(peak_, p0 + hp);
      const double b_lo = fixed_beta ? b0 : std::max(0.0, b0 - hb);
      const double b_hi = fixed_beta ? b0 : std::min(1.0, b0 + hb);
      for (std::size_t i = 0; i < np; ++i) {
        const double p = p_lo + (p_hi - p_lo) * static_cast<double>(i) / static_cast<double>(np - 1);
        for (std::size_t j = 0; j < nb; ++j) {
          pw[i * nb + j] = p;
          bw[i * nb + j] =
              nb == 1 ? b_lo : b_lo + (b_hi - b_lo) * static_cast<double>(j) / static_cast<double>(nb - 1);
        }
      }
      secrecy_rate_batch(isa_, in, pw, bw, out);
      bool moved = false;
      for (std::size_t k = 0; k < out.size(); ++k) {
        const double u = out[k] - lambda * pw[k];
        if (u > best_u) {
          best_u = u;
          p0 = pw[k];
          b0 = bw[k];
          rate0 = out[k];
          moved = true;
        }
      }
      if (!moved) break;
    }
    hp *= 2.0 / (n - 1);
    hb *= 2.0 / (n - 1);
  }
  return StateOptimum{best_u, rate0, Allocation{p0, b0, env.mu}};
}

StateOptimum StateSearch::solve(double lambda) const {
  StateOptimum best = search_order(envelopes_.front(), lambda);
  for (std::size_t k = 1; k < envelopes_.size(); ++k) {
    // Bit-first replaces semantic-first only on a strict improvement.
    StateOptimum cand = search_order(envelopes_[k], lambda);
    if (cand.utility > best.utility) best = cand;
  }
  return best;
}

StateOptimum solve_state(const FadingState& s, double lambda, const SemanticParams& sp,
                         double peak, const DualConfig& cfg, SchemeKind scheme) {
  cfg.validate();
  return StateSearch(s, scheme, sp, peak, cfg).solve(lambda);
}

double avg_power(double lambda, std::span<const FadingState> states, const SemanticParams& sp,
                 double peak, const DualConfig& cfg, SchemeKind scheme) {
  cfg.validate();
  if (states.empty()) throw std::invalid_argument("avg_power: no fading states");
  double total = 0.0;
  for (const FadingState& s : states) {
    total += StateSearch(s, scheme, sp, peak, cfg).solve(lambda).allocation.p;
  }
  return total / static_cast<double>(states.size());
}

namespace {

struct Sweep {
  double lambda = 0.0;
  std::vector<StateOptimum> per_state;
  double total_power = 0.0;
};

Sweep evaluate(const std::vector<StateSearch>& searches, double lambda) {
  Sweep sw{lambda, {}, 0.0};
  sw.per_state.reserve(searches.size());
  for (const StateSearch& search : searches) {
    sw.per_state.push_back(search.solve(lambda));
    sw.total_power += sw.per_state.back().allocation.p;
  }
  return sw;
}

// Per-state time sharing between the two bracket ends: move states from the
// high-lambda answer to the low-lambda one while the budget allows, then
// spread any leftover power over states that are already transmitting.
void reconcile(const std::vector<StateSearch>& searches, const Sweep& lo,
               std::vector<Allocation>& alloc, std::vector<double>& rates, double budget_total,
               double peak) {
  const std::size_t n = alloc.size();
  double total = 0.0;
  for (const Allocation& a : alloc) total += a.p;

  std::vector<std::size_t> movers;
  for (std::size_t i = 0; i < n; ++i) {
    if (lo.per_state[i].allocation.p > alloc[i].p) movers.push_back(i);
  }
  auto efficiency = [&](std::size_t i) {
    return (lo.per_state[i].rate - rates[i]) / (lo.per_state[i].allocation.p - alloc[i].p);
  };
  std::sort(movers.begin(), movers.end(),
            [&](std::size_t a, std::size_t b) { return efficiency(a) > efficiency(b); });
  for (std::size_t i : movers) {
    const double extra = lo.per_state[i].allocation.p - alloc[i].p;
    if (total + extra > budget_total) continue;
    const double r = searches[i].rate(lo.per_state[i].allocation);
    if (r < rates[i]) continue;
    total += extra;
    alloc[i] = lo.per_state[i].allocation;
    rates[i] = r;
  }

  for (int pass = 0; pass < 4; ++pass) {
    const double residual = budget_total - total;
    if (residual <= 0.0) break;
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < n; ++i) {
      if (alloc[i].p > 0.0 && alloc[i].p < peak) open.push_back(i);
    }
    if (open.empty()) break;
    const double share = residual / static_cast<double>(open.size());
    bool moved = false;
    for (std::size_t i : open) {
      Allocation trial = alloc[i];
      trial.p = std::min(peak, trial.p + share);
      const double r = searches[i].rate(trial);
      if (r >= rates[i] && total + (trial.p - alloc[i].p) <= budget_total) {
        total += trial.p - alloc[i].p;
        alloc[i] = trial;
        rates[i] = r;
        moved = true;
      }
    }
    if (!moved) break;
  }
}

DualSolution finish(const std::vector<StateSearch>& searches, const Sweep& chosen,
                    const Sweep* lo, const PowerBudget& budget, const DualConfig& cfg,
                    int steps, bool binding) {
  const std::size_t n = searches.size();
  const double nd = static_cast<double>(n);
  DualSolution sol;
  sol.allocations.resize(n);
  sol.rates.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sol.allocations[i] = chosen.per_state[i].allocation;
    sol.rates[i] = searches[i].rate(sol.allocations[i]);
  }
  if (lo != nullptr && chosen.total_power < budget.average * nd) {
    reconcile(searches, *lo, sol.allocations, sol.rates, budget.average * nd, budget.peak);
  }

  double dual_sum = 0.0;
  double rate_sum = 0.0;
  double power_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Allocation& a = sol.allocations[i];
    // The final allocation is itself a candidate for the per-state maximum,
    // which keeps the reported dual value a valid upper bound.
    dual_sum += std::max(chosen.per_state[i].utility, sol.rates[i] - chosen.lambda * a.p);
    rate_sum += sol.rates[i];
    power_sum += a.p;
    if (a.p == 0.0) ++sol.zero_power_states;
  }
  sol.lambda = chosen.lambda;
  sol.ergodic_rate = rate_sum / nd;
  sol.avg_power = power_sum / nd;
  sol.dual_value = dual_sum / nd + chosen.lambda * budget.average;
  sol.apc_binding = binding;
  sol.bisection_steps = steps;
  return sol;
}

}  // namespace

DualSolution solve(std::span<const FadingState> states, const PowerBudget& budget,
                   const SemanticParams& sp, const DualConfig& cfg, SchemeKind scheme) {
  budget.validate();
  cfg.validate();
  if (states.empty()) throw std::invalid_argument("optimal::solve: no fading states");

  std::vector<StateSearch> searches;
  searches.reserve(states.size());
  for (const FadingState& s : states) searches.emplace_back(s, scheme, sp, budget.peak, cfg);

  const double target = budget.average * static_cast<double>(states.size());
  Sweep lo = evaluate(searches, cfg.lambda_lo);
  if (lo.total_power <= target) {
    return finish(searches, lo, nullptr, budget, cfg, 0, false);
  }

  Sweep hi = evaluate(searches, cfg.lambda_hi);
  int doublings = 0;
  while (hi.total_power > target) {
    if (++doublings > 60) {
      throw NoConvergenceError("optimal::solve: multiplier bracket did not close after 60 doublings");
    }
    lo = std::move(hi);
    hi = evaluate(searches, lo.lambda * 2.0);
  }

  int steps = 0;
  while (steps < cfg.max_bisections &&
         target - hi.total_power > cfg.lambda_tol * target) {
    // A per-state jump in power can make the residual unreachable; the
    // bracket ends are then time-shared in finish().
    if (hi.lambda - lo.lambda <= 1e-12 * hi.lambda) break;
    const double mid = 0.5 * (lo.lambda + hi.lambda);
    ++steps;
    Sweep m = evaluate(searches, mid);
    if (m.total_power > target) {
      lo = std::move(m);
    } else {
      hi = std::move(m);
    }
  }
  return finish(searches, hi, &lo, budget, cfg, steps, true);
}

}  // namespace optimal
}  // namespace semsec
