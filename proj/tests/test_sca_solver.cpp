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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "semsec/channel_model.hpp"
#include "semsec/optimal_solver.hpp"
#include "semsec/sca_solver.hpp"

using namespace semsec;

namespace {

constexpr double kPeak = 10.0;

struct Sampler {
  std::mt19937_64 rng{17};
  std::uniform_real_distribution<double> u{0.0, 1.0};
  double power() { return kPeak * u(rng); }
  double gain() { return std::pow(10.0, -2.0 + 5.0 * u(rng)); }
  double chi(const SemanticParams& sp) { return sp.a1 + (sp.a2 - sp.a1) * (0.001 + 0.998 * u(rng)); }
};

}  // namespace

TEST_CASE("eavesdropper rate bound is tight at the anchor") {
  Sampler s;
  for (int i = 0; i < 1000; ++i) {
    const double pb = s.power(), ps = s.power(), ge = s.gain();
    CHECK(std::fabs(sca::re_upper_bound(pb, ps, pb, ps, ge) - sca::eve_rate(pb, ps, ge)) <= 1e-12);
  }
}

TEST_CASE("eavesdropper rate bound holds globally") {
  Sampler s;
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const double pb = s.power(), ps = s.power(), ge = s.gain();
    const double apb = s.power(), aps = s.power();
    if (sca::re_upper_bound(pb, ps, apb, aps, ge) < sca::eve_rate(pb, ps, ge) - 1e-12) {
      ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("eavesdropper rate bound vanishes without an eavesdropper channel") {
  CHECK(sca::re_upper_bound(3.0, 1.0, 0.5, 2.0, 0.0) == 0.0);
  CHECK(sca::eve_rate(3.0, 1.0, 0.0) == 0.0);
}

TEST_CASE("eve rate matches the rate engine") {
  const Allocation a{4.0, 0.25, DecodeOrder::kSemanticFirst};
  CHECK(sca::eve_rate(3.0, 1.0, 20.0) == doctest::Approx(rate_eve(a, 20.0)).epsilon(1e-14));
  const SemanticParams sp;
  CHECK(sca::split_similarity(1.0, 3.0, 20.0, sp) ==
        doctest::Approx(semantic_similarity(sinr_sem(a, 20.0), sp)).epsilon(1e-14));
}

TEST_CASE("similarity bound is tight at the anchor") {
  const SemanticParams sp;
  Sampler s;
  for (int i = 0; i < 1000; ++i) {
    const double chi = s.chi(sp), pb = s.power(), gl = s.gain();
    CHECK(std::fabs(sca::eta_bound(chi, pb, chi, pb, gl, sp) - sca::similarity_lhs(chi, pb, gl, sp)) <=
          1e-12 * std::max(1.0, std::fabs(sca::similarity_lhs(chi, pb, gl, sp))));
  }
}

TEST_CASE("similarity bound holds globally") {
  const SemanticParams sp;
  Sampler s;
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const double chi = s.chi(sp), pb = s.power(), gl = s.gain();
    const double achi = s.chi(sp), apb = s.power();
    if (sca::eta_bound(chi, pb, achi, apb, gl, sp) < sca::similarity_lhs(chi, pb, gl, sp) - 1e-12) {
      ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("similarity bound is affine in chi") {
  const SemanticParams sp;
  const double achi = 0.6, apb = 2.0, gl = 50.0, delta = 0.05;
  const double base = sca::eta_bound(achi, apb, achi, apb, gl, sp);
  CHECK(sca::eta_bound(achi + delta, apb, achi, apb, gl, sp) - base ==
        doctest::Approx(delta / (achi - sp.a1)).epsilon(1e-12));
  CHECK_THROWS_AS(sca::eta_bound(0.5, 1.0, sp.a1, 1.0, gl, sp), std::invalid_argument);
}

TEST_CASE("log-domain constraint is equivalent to chi below the similarity") {
  const SemanticParams sp;
  Sampler s;
  for (int i = 0; i < 2000; ++i) {
    const double ps = s.power() + 1e-6, pb = s.power(), gl = s.gain(), chi = s.chi(sp);
    const double eps = sca::split_similarity(ps, pb, gl, sp);
    const bool feasible = sca::similarity_lhs(chi, pb, gl, sp) <= sca::similarity_rhs(chi, ps, gl, sp);
    if (std::fabs(chi - eps) > 1e-9) CHECK(feasible == (chi <= eps));
  }
}

TEST_CASE("initial point splits the budget equally") {
  const SemanticParams sp;
  const ScaConfig cfg;
  const auto states = sample_states(ChannelConfig{}, 10);
  const ScaPoint x = sca::init_point(states, {kPeak, 1.0}, sp, cfg);
  REQUIRE(x.size() == 10);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(x[i].p_s == 0.5);
    CHECK(x[i].p_b == 0.5);
    CHECK(x[i].chi > sp.a1);
    CHECK(x[i].chi <= sca::split_similarity(0.5, 0.5, states[i].g_l, sp));
  }
}

TEST_CASE("surrogate solve keeps the original constraints") {
  const SemanticParams sp;
  const ScaConfig cfg;
  const auto states = sample_states(ChannelConfig{}, 30);
  const PowerBudget budget{kPeak, 1.0};
  ScaPoint x = sca::init_point(states, budget, sp, cfg);
  double prev = sca::objective(states, x, sp);
  for (int it = 0; it < 4; ++it) {
    const sca::SurrogateSolution sol = sca::solve_surrogate(states, x, budget, sp, cfg);
    double total = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const ScaVariables& v = sol.point[i];
      CHECK(v.p_s >= cfg.p_floor * (1 - 1e-12));
      CHECK(v.p_b >= 0.0);
      CHECK(v.p_s + v.p_b <= kPeak * (1 + 1e-12));
      CHECK(v.chi > sp.a1);
      CHECK(v.chi < sp.a2);
      CHECK(v.chi <= sca::split_similarity(v.p_s, v.p_b, states[i].g_l, sp) + 1e-12);
      total += v.p_s + v.p_b;
    }
    CHECK(total / states.size() <= 1.0 * (1 + 1e-9));
    const double next = sca::objective(states, sol.point, sp);
    CHECK(next >= prev - cfg.inner_tol);
    prev = next;
    x = sol.point;
  }
  // A converged anchor is a fixed point.
  const double again = sca::objective(states, sca::solve_surrogate(states, x, budget, sp, cfg).point, sp);
  CHECK(std::fabs(again - prev) <= 1e-3 * prev);
}

TEST_CASE("infeasible anchors are rejected") {
  const SemanticParams sp;
  const ScaConfig cfg;
  const auto states = sample_states(ChannelConfig{}, 3);
  const PowerBudget budget{kPeak, 1.0};
  ScaPoint x = sca::init_point(states, budget, sp, cfg);
  x[1].chi = 0.979;
  CHECK_THROWS_AS(sca::solve_surrogate(states, x, budget, sp, cfg), std::invalid_argument);
  x = sca::init_point(states, budget, sp, cfg);
  x[0].p_b = 5.0;
  CHECK_THROWS_AS(sca::solve_surrogate(states, x, budget, sp, cfg), std::invalid_argument);
}

TEST_CASE("single state without eavesdropper matches a grid oracle") {
  const SemanticParams sp;
  const ScaConfig cfg;
  for (double gl : {0.5, 5.0, 123.457, 2000.0}) {
    const std::vector<FadingState> states{{gl, 0.0}};
    const ScaResult r = sca::run(states, {kPeak, kPeak}, sp, cfg);
    double oracle = 0.0;
    constexpr int n = 801;
    for (int i = 0; i < n; ++i) {
      const double p = kPeak * i / (n - 1);
      for (int j = 0; j < n; ++j) {
        const Allocation a{p, static_cast<double>(j) / (n - 1), DecodeOrder::kSemanticFirst};
        oracle = std::max(oracle, secrecy_rate(a, states[0], sp));
      }
    }
    INFO("g_l=" << gl);
    CHECK(r.ergodic_rate >= 0.99 * oracle);
  }
}

TEST_CASE("SCA run: monotone, converged, feasible") {
  const SemanticParams sp;
  const ScaConfig cfg;
  const auto states = sample_states(ChannelConfig{}, 50);
  for (double pbar : {0.1, 1.0, 10.0}) {
    const ScaResult r = sca::run(states, {kPeak, pbar}, sp, cfg);
    CHECK(r.converged);
    CHECK(r.iterations <= cfg.max_iters);
    CHECK(r.objective_history.size() == static_cast<std::size_t>(r.iterations) + 1);
    for (std::size_t k = 1; k < r.objective_history.size(); ++k) {
      CHECK(r.objective_history[k] >= r.objective_history[k - 1] - 1e-6);
    }
    CHECK(r.avg_power <= pbar * (1 + 1e-9));
    double sum = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const Allocation& a = r.allocations[i];
      CHECK(a.mu == DecodeOrder::kSemanticFirst);
      CHECK(a.valid(kPeak * (1 + 1e-12)));
      CHECK(a.p == doctest::Approx(r.point[i].p_s + r.point[i].p_b).epsilon(1e-15));
      CHECK(r.rates[i] == doctest::Approx(secrecy_rate(a, states[i], sp)).epsilon(1e-12));
      sum += r.rates[i];
    }
    CHECK(r.ergodic_rate == doctest::Approx(sum / states.size()).epsilon(1e-12));
  }
}

TEST_CASE("SCA is close to the dual optimum") {
  const SemanticParams sp;
  const auto states = sample_states(ChannelConfig{}, 50);
  for (double pbar : {0.1, 1.0, 10.0}) {
    const double opt = optimal::solve(states, {kPeak, pbar}, sp, DualConfig{}).ergodic_rate;
    const double sub = sca::run(states, {kPeak, pbar}, sp, ScaConfig{}).ergodic_rate;
    CHECK((opt - sub) / opt <= 0.03);
  }
}

TEST_CASE("vanishing budget does not break the loop") {
  const SemanticParams sp;
  const auto states = sample_states(ChannelConfig{}, 20);
  const ScaResult r = sca::run(states, {kPeak, 1e-6}, sp, ScaConfig{});
  CHECK(std::isfinite(r.ergodic_rate));
  CHECK(r.ergodic_rate >= 0.0);
  CHECK(r.avg_power <= 1e-6 * (1 + 1e-9));
  CHECK_THROWS_AS(sca::run(states, {kPeak, 1e-12}, sp, ScaConfig{}), std::invalid_argument);
}

TEST_CASE("sca config validation") {
  ScaConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.p_floor = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
