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

#include "semsec/sca_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "semsec/errors.hpp"

namespace semsec {

void ScaConfig::validate() const {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("sca.") + field + ": " + what);
  };
  require(max_iters >= 1, "max_iters", "must be at least 1");
  require(obj_tol > 0.0, "obj_tol", "must be positive");
  require(p_floor > 0.0, "p_floor", "must be positive");
  require(chi_margin > 0.0, "chi_margin", "must be positive");
  require(inner_tol > 0.0, "inner_tol", "must be positive");
  require(max_inner_iters >= 1, "max_inner_iters", "must be at least 1");
  require(max_dual_steps >= 1, "max_dual_steps", "must be at least 1");
}

namespace sca {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kLn10 = std::numbers::ln10;

// Largest admissible chi not above the exact similarity eps.
double tighten_chi(double eps, const SemanticParams& sp, const ScaConfig& cfg) {
  double chi = std::min(eps - cfg.chi_margin, sp.a2 - cfg.chi_margin);
  if (chi <= sp.a1) chi = sp.a1 + 0.5 * (eps - sp.a1);
  return chi;
}

// Convexified per-state problem around one anchor. chi is eliminated: for
// given powers the best chi is the largest one satisfying the linearized
// constraint, found from ln(u) + a u = c with u = a2 - chi.
class SurrogateState {
 public:
  struct Eval {
    double chi;
    double f;     // surrogate objective without the power price
    double d_ps;  // df/dp_s
    double d_pb;  // df/dp_b
  };

  SurrogateState(const FadingState& s, const ScaVariables& anchor, const SemanticParams& sp,
                 const ScaConfig& cfg)
      : gl_(s.g_l), ge_(s.g_e), sp_(sp), margin_(cfg.chi_margin) {
    a_ = 1.0 / (anchor.chi - sp.a1);
    k_ = 10.0 * sp.c1 * gl_ / ((1.0 + anchor.p_b * gl_) * kLn10);
    t_const_ = sp.c2 - std::log(anchor.chi - sp.a1) + a_ * anchor.chi -
               sp.c1 * 10.0 * std::log10(1.0 + anchor.p_b * gl_) + k_ * anchor.p_b;
    d_ = 1.0 + (anchor.p_s + anchor.p_b) * ge_;
    re_const_ = std::log2(d_) - ge_ * (anchor.p_s + anchor.p_b) / (d_ * kLn2);
  }

  Eval eval(double ps, double pb) const {
    const double t = sp_.c1 * 10.0 * std::log10(ps * gl_) + t_const_ - k_ * pb;
    const double c = a_ * sp_.a2 - t;
    double u = margin_;
    double dchi_ps = 0.0;
    double dchi_pb = 0.0;
    if (std::log(u) + a_ * u < c) {
      // Newton from the left on a concave increasing function: monotone.
      for (int it = 0; it < 200; ++it) {
        const double g = std::log(u) + a_ * u - c;
        const double step = -g / (1.0 / u + a_);
        u += step;
        if (!(step > 1e-15 * u)) break;
      }
      const double slope = 1.0 / u + a_;
      dchi_ps = sp_.c1 * 10.0 / (ps * kLn10) / slope;
      dchi_pb = -k_ / slope;
    }
    const double chi = sp_.a2 - u;
    const double rho_k = sp_.bits_per_symbol();
    const double re_bar = re_const_ + ge_ * (ps + pb) / (d_ * kLn2) - std::log2(1.0 + ps * ge_);
    Eval e;
    e.chi = chi;
    e.f = rho_k * chi + std::log2(1.0 + pb * gl_) - re_bar;
    e.d_ps = rho_k * dchi_ps - ge_ / (d_ * kLn2) + ge_ / ((1.0 + ps * ge_) * kLn2);
    e.d_pb = rho_k * dchi_pb + gl_ / ((1.0 + pb * gl_) * kLn2) - ge_ / (d_ * kLn2);
    return e;
  }

 private:
  double gl_;
  double ge_;
  SemanticParams sp_;
  double margin_;
  double a_ = 0.0;
  double k_ = 0.0;
  double t_const_ = 0.0;
  double d_ = 0.0;
  double re_const_ = 0.0;
};

// Feasible set of one state: p_s >= floor, p_b >= 0, p_s + p_b <= peak.
struct PowerRegion {
  double floor;
  double peak;

  void project(double& ps, double& pb) const {
    ps = std::max(ps, floor);
    pb = std::max(pb, 0.0);
    if (ps + pb <= peak) return;
    // Onto the segment p_s + p_b = peak.
    const double s = std::clamp(0.5 * (ps - pb + peak), floor, peak);
    ps = s;
    pb = std::max(peak - s, 0.0);
  }
};

struct InnerState {
  double ps;
  double pb;
  double step;
};

struct InnerResult {
  double ps;
  double pb;
  SurrogateState::Eval eval;
};

// Spectral projected gradient ascent on f - lambda (p_s + p_b).
InnerResult maximize(const SurrogateState& st, const PowerRegion& region, double lambda,
                     InnerState& warm, const ScaConfig& cfg) {
  double ps = warm.ps;
  double pb = warm.pb;
  region.project(ps, pb);
  SurrogateState::Eval e = st.eval(ps, pb);
  double phi = e.f - lambda * (ps + pb);
  double gs = e.d_ps - lambda;
  double gb = e.d_pb - lambda;
  double t = std::clamp(warm.step, 1e-12, 1e6);

  for (int it = 0; it < cfg.max_inner_iters; ++it) {
    double qs = ps + gs;
    double qb = pb + gb;
    region.project(qs, qb);
    if (std::max(std::abs(qs - ps), std::abs(qb - pb)) <= cfg.inner_tol) {
      warm = {ps, pb, t};
      return {ps, pb, e};
    }

    bool accepted = false;
    double ns = ps, nb = pb, nphi = phi;
    SurrogateState::Eval ne = e;
    for (int bt = 0; bt < 80; ++bt) {
      ns = ps + t * gs;
      nb = pb + t * gb;
      region.project(ns, nb);
      const double ds = ns - ps;
      const double db = nb - pb;
      if (ds == 0.0 && db == 0.0) break;
      ne = st.eval(ns, nb);
      nphi = ne.f - lambda * (ns + nb);
      if (nphi >= phi + 1e-4 * (gs * ds + gb * db)) {
        accepted = true;
        break;
      }
      t *= 0.25;
    }
    if (!accepted) {
      // No representable ascent step left.
      warm = {ps, pb, 1.0};
      return {ps, pb, e};
    }

    const double ngs = ne.d_ps - lambda;
    const double ngb = ne.d_pb - lambda;
    const double ss = (ns - ps) * (ns - ps) + (nb - pb) * (nb - pb);
    const double sy = (ns - ps) * (ngs - gs) + (nb - pb) * (ngb - gb);
    t = sy < 0.0 ? std::clamp(ss / -sy, 1e-12, 1e6) : std::min(t * 4.0, 1e6);

    const double gain = nphi - phi;
    ps = ns;
    pb = nb;
    e = ne;
    phi = nphi;
    gs = ngs;
    gb = ngb;
    if (gain <= 1e-14 * (1.0 + std::abs(phi))) {
      warm = {ps, pb, t};
      return {ps, pb, e};
    }
  }
  throw NoConvergenceError("sca: per-state projected gradient hit max_inner_iters");
}

void check_anchor(std::span<const FadingState> states, const ScaPoint& anchor,
                  const PowerBudget& budget, const SemanticParams& sp, const ScaConfig& cfg) {
  if (anchor.size() != states.size()) {
    throw std::invalid_argument("sca: anchor size does not match the number of states");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < anchor.size(); ++i) {
    const ScaVariables& v = anchor[i];
    const bool ok = v.p_s >= cfg.p_floor * (1.0 - 1e-12) && v.p_b >= 0.0 &&
                    v.p_s + v.p_b <= budget.peak * (1.0 + 1e-12) && v.chi > sp.a1 &&
                    v.chi < sp.a2 &&
                    v.chi <= split_similarity(v.p_s, v.p_b, states[i].g_l, sp) + 1e-12;
    if (!ok) {
      throw std::invalid_argument("sca: anchor infeasible at state " + std::to_string(i));
    }
    total += v.p_s + v.p_b;
  }
  if (total > budget.average * static_cast<double>(states.size()) * (1.0 + 1e-9)) {
    throw std::invalid_argument("sca: anchor violates the average power budget");
  }
}

void check_inputs(std::span<const FadingState> states, const PowerBudget& budget,
                  const SemanticParams& sp, const ScaConfig& cfg) {
  budget.validate();
  sp.validate();
  cfg.validate();
  if (states.empty()) throw std::invalid_argument("sca: no fading states");
  if (budget.average < cfg.p_floor) {
    throw std::invalid_argument("sca: average power below the semantic power floor");
  }
  for (const FadingState& s : states) {
    if (!(s.g_l > 0.0) || !(s.g_e >= 0.0)) {
      throw std::invalid_argument("sca: gains must satisfy g_l > 0 and g_e >= 0");
    }
  }
}

}  // namespace

double eve_rate(double p_b, double p_s, double g_e) {
  return std::log2(1.0 + p_b * g_e / (p_s * g_e + 1.0));
}

double split_similarity(double p_s, double p_b, double g_l, const SemanticParams& sp) {
  return semantic_similarity(p_s * g_l / (p_b * g_l + 1.0), sp);
}

double re_upper_bound(double p_b, double p_s, double anchor_p_b, double anchor_p_s, double g_e) {
  const double d = 1.0 + (anchor_p_s + anchor_p_b) * g_e;
  return std::log2(d) + g_e * (p_s - anchor_p_s + p_b - anchor_p_b) / (d * kLn2) -
         std::log2(1.0 + p_s * g_e);
}

double similarity_lhs(double chi, double p_b, double g_l, const SemanticParams& sp) {
  return std::log(chi - sp.a1) + sp.c1 * 10.0 * std::log10(p_b * g_l + 1.0);
}

double similarity_rhs(double chi, double p_s, double g_l, const SemanticParams& sp) {
  return sp.c1 * 10.0 * std::log10(p_s * g_l) + sp.c2 + std::log(sp.a2 - chi);
}

double eta_bound(double chi, double p_b, double anchor_chi, double anchor_p_b, double g_l,
                 const SemanticParams& sp) {
  if (!(anchor_chi > sp.a1)) {
    throw std::invalid_argument("eta_bound: anchor chi must exceed a1");
  }
  const double gap = anchor_chi - sp.a1;
  const double q = 1.0 + anchor_p_b * g_l;
  return std::log(gap) + (chi - anchor_chi) / gap + sp.c1 * 10.0 * std::log10(q) +
         10.0 * sp.c1 * g_l * (p_b - anchor_p_b) / (q * kLn10);
}

double objective(std::span<const FadingState> states, const ScaPoint& point,
                 const SemanticParams& sp) {
  double sum = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const ScaVariables& v = point[i];
    sum += sp.bits_per_symbol() * v.chi + std::log2(1.0 + v.p_b * states[i].g_l) -
           eve_rate(v.p_b, v.p_s, states[i].g_e);
  }
  return sum / static_cast<double>(states.size());
}

ScaPoint init_point(std::span<const FadingState> states, const PowerBudget& budget,
                    const SemanticParams& sp, const ScaConfig& cfg) {
  check_inputs(states, budget, sp, cfg);
  const double total = std::min(budget.average, budget.peak);
  const double ps = std::max(0.5 * total, cfg.p_floor);
  const double pb = std::max(total - ps, 0.0);
  ScaPoint point(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double eps = split_similarity(ps, pb, states[i].g_l, sp);
    point[i] = {ps, pb, tighten_chi(eps, sp, cfg)};
  }
  return point;
}

SurrogateSolution solve_surrogate(std::span<const FadingState> states, const ScaPoint& anchor,
                                  const PowerBudget& budget, const SemanticParams& sp,
                                  const ScaConfig& cfg, double lambda_hint) {
  check_inputs(states, budget, sp, cfg);
  check_anchor(states, anchor, budget, sp, cfg);

  const std::size_t n = states.size();
  const double target = budget.average * static_cast<double>(n);
  const PowerRegion region{cfg.p_floor, budget.peak};

  std::vector<SurrogateState> local;
  local.reserve(n);
  for (std::size_t i = 0; i < n; ++i) local.emplace_back(states[i], anchor[i], sp, cfg);

  std::vector<InnerState> warm(n);
  for (std::size_t i = 0; i < n; ++i) warm[i] = {anchor[i].p_s, anchor[i].p_b, 1.0};

  struct Sweep {
    double lambda;
    std::vector<InnerResult> x;
    double power;
  };
  auto sweep = [&](double lambda) {
    Sweep sw{lambda, std::vector<InnerResult>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      sw.x[i] = maximize(local[i], region, lambda, warm[i], cfg);
      sw.power += sw.x[i].ps + sw.x[i].pb;
    }
    return sw;
  };

  int steps = 1;
  Sweep lo = sweep(0.0);
  Sweep hi = lo;
  bool binding = lo.power > target;
  if (binding) {
    double upper = lambda_hint > 0.0 ? 2.0 * lambda_hint : 1.0;
    hi = sweep(upper);
    ++steps;
    int doublings = 0;
    while (hi.power > target) {
      if (++doublings > 60) {
        throw NoConvergenceError("sca: multiplier bracket did not close after 60 doublings");
      }
      lo = std::move(hi);
      hi = sweep(lo.lambda * 2.0);
      ++steps;
    }
    while (steps < cfg.max_dual_steps && hi.lambda - lo.lambda > 1e-10 * hi.lambda &&
           target - hi.power > 1e-10 * target) {
      // Bisection in the multiplier, reusing the nearest solution as warm start.
      const double mid = 0.5 * (lo.lambda + hi.lambda);
      Sweep m = sweep(mid);
      ++steps;
      if (m.power > target) {
        lo = std::move(m);
      } else {
        hi = std::move(m);
      }
    }
  }

  // Mix the bracket ends so the average power constraint holds with equality;
  // per-state feasible sets are convex, so the mixture stays feasible.
  double theta = 0.0;
  if (binding && lo.power > hi.power) {
    theta = std::clamp((target - hi.power) / (lo.power - hi.power), 0.0, 1.0);
  }

  SurrogateSolution out;
  out.point.resize(n);
  out.lambda = hi.lambda;
  out.dual_steps = steps;
  double value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ps = theta * lo.x[i].ps + (1.0 - theta) * hi.x[i].ps;
    double pb = theta * lo.x[i].pb + (1.0 - theta) * hi.x[i].pb;
    region.project(ps, pb);
    const SurrogateState::Eval e = local[i].eval(ps, pb);
    value += e.f;
    const double eps = split_similarity(ps, pb, states[i].g_l, sp);
    out.point[i] = {ps, pb, std::max(std::min(e.chi, eps), tighten_chi(eps, sp, cfg))};
  }
  out.surrogate_value = value / static_cast<double>(n);

  double power = 0.0;
  for (const ScaVariables& v : out.point) power += v.p_s + v.p_b;
  if (power > target * (1.0 + 1e-12) ||
      objective(states, out.point, sp) < objective(states, anchor, sp)) {
    out.point = anchor;
    out.surrogate_value = objective(states, anchor, sp);
  }
  return out;
}

ScaResult run(std::span<const FadingState> states, const PowerBudget& budget,
              const SemanticParams& sp, const ScaConfig& cfg) {
  ScaResult res;
  ScaPoint point = init_point(states, budget, sp, cfg);
  double obj = objective(states, point, sp);
  res.objective_history.push_back(obj);

  double lambda = 0.0;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    SurrogateSolution sol = solve_surrogate(states, point, budget, sp, cfg, lambda);
    const double next = objective(states, sol.point, sp);
    res.objective_history.push_back(next);
    res.iterations = it;
    point = std::move(sol.point);
    lambda = sol.lambda;
    const bool small_gain = next - obj <= cfg.obj_tol * std::max(std::abs(obj), 1e-12);
    obj = next;
    if (small_gain) {
      res.converged = true;
      break;
    }
  }

  const std::size_t n = states.size();
  res.allocations.resize(n);
  res.rates.resize(n);
  double rate_sum = 0.0;
  double power_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = point[i].p_s + point[i].p_b;
    res.allocations[i] = Allocation{p, point[i].p_s / p, DecodeOrder::kSemanticFirst};
    res.rates[i] = secrecy_rate(res.allocations[i], states[i], sp);
    rate_sum += res.rates[i];
    power_sum += p;
  }
  res.ergodic_rate = rate_sum / static_cast<double>(n);
  res.avg_power = power_sum / static_cast<double>(n);
  res.lambda = lambda;
  res.point = std::move(point);
  return res;
}

}  // namespace sca
}  // namespace semsec
