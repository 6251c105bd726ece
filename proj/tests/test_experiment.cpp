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
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "semsec/errors.hpp"
#include "semsec/experiment.hpp"
#include "semsec/report.hpp"

using namespace semsec;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("semsec_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

ExperimentConfig small_config() {
  ExperimentConfig cfg = parse_config(R"({
    "n_states": 12,
    "budget": {"average_w": [0.5, 5.0]},
    "k_sweep": [3, 5, 8],
    "solver": {"grid_p": 32, "grid_beta": 32, "refine_rounds": 3}
  })");
  return cfg;
}

}  // namespace

TEST_CASE("empty config yields the default experiment") {
  const ExperimentConfig cfg = parse_config("{}");
  CHECK(cfg.peak_w == 10.0);
  CHECK(cfg.average_w == std::vector<double>{0.1, 0.5, 1.0, 5.0, 10.0});
  CHECK(cfg.schemes.size() == 4);
  CHECK(cfg.n_states == 1000);
  CHECK(cfg.channel.d_l == 30.0);
  CHECK(cfg.channel.d_e == 30.0);
  CHECK(cfg.channel.pl0_db == -30.0);
  CHECK(cfg.channel.alpha == 4.0);
  CHECK(cfg.channel.noise_l_dbm == -80.0);
  CHECK(cfg.semantic.k == 5);
  CHECK(cfg.semantic.a1 == 0.37);
  CHECK(cfg.semantic.a2 == 0.98);
  CHECK(cfg.k_sweep == std::vector<int>{3, 5, 8});
}

TEST_CASE("config fields are read") {
  const ExperimentConfig cfg = parse_config(R"({
    "channel": {"d_l": 20, "seed": 7},
    "semantic": {"k": 4},
    "semantic_overrides": [{"k": 8, "a1": 0.3}],
    "budget": {"peak_w": 5, "average_w": [1, 5]},
    "schemes": ["bit_an", "sc_sca"],
    "n_states": 30,
    "solver": {"grid_p": 16, "kernel": "scalar"},
    "sca": {"max_iters": 7},
    "output_dir": "out",
    "record_wall_time": true
  })");
  CHECK(cfg.channel.d_l == 20.0);
  CHECK(cfg.channel.seed == 7);
  CHECK(cfg.semantic.k == 4);
  CHECK(cfg.semantic_for(8).a1 == 0.3);
  CHECK(cfg.semantic_for(3).a1 == 0.37);
  CHECK(cfg.semantic_for(3).k == 3);
  CHECK(cfg.peak_w == 5.0);
  CHECK(cfg.schemes == std::vector<SchemeKind>{SchemeKind::kBitAn, SchemeKind::kScSca});
  CHECK(cfg.n_states == 30);
  CHECK(cfg.solver.grid_p == 16);
  CHECK(cfg.solver.isa == KernelIsa::kScalar);
  CHECK(cfg.sca.max_iters == 7);
  CHECK(cfg.output_dir == "out");
  CHECK(cfg.record_wall_time);
}

TEST_CASE("config errors name the field") {
  CHECK(config_error(R"({"budget": {"average_w": [1, 20]}})").find("budget.average_w") !=
        std::string::npos);
  const std::string tag = config_error(R"({"schemes": ["sc_optimal", "qam16"]})");
  CHECK(tag.find("qam16") != std::string::npos);
  CHECK(config_error(R"({"chanel": {}})").find("chanel") != std::string::npos);
  CHECK(config_error(R"({"channel": {"d_l": "far"}})").find("channel.d_l") != std::string::npos);
  CHECK(config_error(R"({"sca": {"tol": 1}})").find("sca.tol") != std::string::npos);
  CHECK(config_error(R"({"n_states": 0})").find("n_states") != std::string::npos);
  CHECK(config_error(R"({"schemes": []})").find("schemes") != std::string::npos);
  CHECK(config_error(R"({"budget": {"average_w": [0]}})").find("average_w") != std::string::npos);
  CHECK(config_error(R"({"solver": {"kernel": "neon"}})").find("solver.kernel") !=
        std::string::npos);
  CHECK(config_error("{not json").find("parse") != std::string::npos);
  CHECK(config_error(R"({"channel": {"d_e": -3}})").find("d_e") != std::string::npos);
  CHECK_FALSE(config_error(R"({"semantic_overrides": [{"a1": 0.3}]})").empty());
  CHECK_THROWS_AS(load_config("/nonexistent/semsec.json"), ConfigError);
}

TEST_CASE("load config from a file") {
  const auto dir = scratch_dir("load");
  std::ofstream(dir / "c.json") << R"({"n_states": 3})";
  CHECK(load_config(dir / "c.json").n_states == 3);
}

TEST_CASE("sig6 formatting") {
  CHECK(format_sig6(6.974603) == "6.97460");
  CHECK(format_sig6(0.1) == "0.100000");
  CHECK(format_sig6(0.09999999) == "0.100000");
  CHECK(format_sig6(10.0) == "10.0000");
  CHECK(format_sig6(123456789.0) == "123456789");
  CHECK(format_sig6(-0.000123456789) == "-0.000123457");
  CHECK(format_sig6(0.0) == "0.00000");
  CHECK(format_sig6(-1e-30) == "-0.00000000000000000000000000000100000");
}

TEST_CASE("empty result writes only the header") {
  const auto dir = scratch_dir("empty");
  emit_csv({}, dir / "sweep.csv");
  CHECK(slurp(dir / "sweep.csv") == std::string(kSweepCsvHeader) + "\n");
  CHECK(read_sweep_csv(dir / "sweep.csv").empty());
}

TEST_CASE("CSV round trip and cardinality") {
  std::vector<SweepRow> rows;
  const SchemeKind schemes[] = {SchemeKind::kScOptimal, SchemeKind::kScSca, SchemeKind::kBitAn,
                                SchemeKind::kBitOnly};
  for (double pbar : {0.1, 0.5, 1.0, 5.0, 10.0}) {
    for (SchemeKind s : schemes) {
      SweepRow r;
      r.scheme = s;
      r.p_bar = pbar;
      r.ergodic_rate = 3.0 + std::sqrt(pbar) / 7.0;
      r.avg_power = pbar * (1.0 - 1e-7);
      if (s != SchemeKind::kScSca) r.duality_gap = 1.234567e-5;
      r.wall_ms = 12.3456789;
      r.seed = 18446744073709551615ull;
      rows.push_back(r);
    }
  }
  const auto dir = scratch_dir("roundtrip");
  emit_csv(rows, dir / "sweep.csv");
  CHECK(line_count(slurp(dir / "sweep.csv")) == 21);
  const auto back = read_sweep_csv(dir / "sweep.csv");
  REQUIRE(back.size() == 20);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].scheme == rows[i].scheme);
    CHECK(back[i].k == rows[i].k);
    CHECK(back[i].seed == rows[i].seed);
    CHECK(format_sig6(back[i].p_bar) == format_sig6(rows[i].p_bar));
    CHECK(format_sig6(back[i].ergodic_rate) == format_sig6(rows[i].ergodic_rate));
    CHECK(format_sig6(back[i].avg_power) == format_sig6(rows[i].avg_power));
    CHECK(format_sig6(back[i].wall_ms) == format_sig6(rows[i].wall_ms));
    CHECK(back[i].duality_gap.has_value() == rows[i].duality_gap.has_value());
    if (rows[i].duality_gap) CHECK(format_sig6(*back[i].duality_gap) == "0.0000123457");
  }
  CHECK_THROWS(emit_csv(rows, dir / "missing" / "sweep.csv"));
}

TEST_CASE("sweep covers every combination and is deterministic") {
  const ExperimentConfig cfg = small_config();
  std::size_t seen = 0;
  const SweepResult a = run_sweep(cfg, [&](const SweepCell&) { ++seen; });
  // 2 budgets x 4 schemes at K=5, plus 2 budgets x {3, 8} for the K sweep.
  CHECK(a.cells.size() == 12);
  CHECK(seen == 12);
  CHECK(a.states.size() == 12);
  for (const SweepCell& c : a.cells) {
    CHECK(c.row.seed == cfg.channel.seed);
    CHECK(c.row.wall_ms == 0.0);
    CHECK(c.allocations.size() == 12);
    CHECK(c.row.duality_gap.has_value() == (c.row.scheme != SchemeKind::kScSca));
    if (c.row.k != 5) CHECK(c.row.scheme == SchemeKind::kScSca);
    // Reported rates are the clamped per-state rates of the emitted allocations.
    const SemanticParams sp = cfg.semantic_for(c.row.k);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
      sum += scheme_secrecy_rate(c.row.scheme, c.allocations[i], a.states[i], sp);
    }
    CHECK(std::fabs(sum / 12.0 - c.row.ergodic_rate) <= 1e-9);
  }

  const SweepResult b = run_sweep(cfg);
  const auto dir = scratch_dir("determinism");
  const auto rows_a = a.rows();
  const auto rows_b = b.rows();
  emit_csv(rows_a, dir / "a.csv");
  emit_csv(rows_b, dir / "b.csv");
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
}

TEST_CASE("allocation dump reproduces the reported rates") {
  ExperimentConfig cfg = small_config();
  cfg.schemes = {SchemeKind::kScOptimal};
  cfg.k_sweep.clear();
  const SweepResult r = run_sweep(cfg);
  const auto dir = scratch_dir("alloc");
  emit_allocations(r.cells[0], r.states, dir / "a.csv");
  std::ifstream in(dir / "a.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "state,g_l,g_e,p_w,beta,mu,secrecy_rate_bps_hz");
  double sum = 0.0;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string f;
    std::vector<double> v;
    while (std::getline(ss, f, ',')) v.push_back(std::stod(f));
    REQUIRE(v.size() == 7);
    const Allocation a{v[3], v[4], v[5] == 1.0 ? DecodeOrder::kBitFirst : DecodeOrder::kSemanticFirst};
    const double rate = secrecy_rate(a, {v[1], v[2]}, cfg.semantic);
    CHECK(std::fabs(rate - v[6]) <= 1e-9);
    sum += rate;
    ++n;
  }
  CHECK(n == 12);
  CHECK(std::fabs(sum / n - r.cells[0].row.ergodic_rate) <= 1e-9);
}

TEST_CASE("bit-only saturates in the symmetric setup") {
  ExperimentConfig cfg = parse_config(R"({"n_states": 400, "schemes": ["bit_only"], "k_sweep": [],
                                          "budget": {"average_w": [1, 5, 10]}})");
  const auto rows = run_sweep(cfg).rows();
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ergodic_rate < 1.5);
  CHECK(std::fabs(rows[2].ergodic_rate - rows[0].ergodic_rate) <= 0.05 * rows[0].ergodic_rate);
}

TEST_CASE("solver failures carry scheme and budget") {
  ExperimentConfig cfg = parse_config(R"({"n_states": 4, "schemes": ["sc_sca"], "k_sweep": [],
                                          "budget": {"average_w": [1e-12]}})");
  try {
    run_sweep(cfg);
    FAIL("expected a sweep error");
  } catch (const SweepError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("sc_sca") != std::string::npos);
    CHECK(msg.find("P_avg") != std::string::npos);
  }
}

TEST_CASE("plots") {
  const auto dir = scratch_dir("plot");
  SweepRow r;
  r.scheme = SchemeKind::kBitAn;
  std::vector<SweepRow> rows;
  for (double p : {0.1, 1.0, 10.0}) {
    r.p_bar = p;
    r.ergodic_rate = 2.0 + p;
    rows.push_back(r);
  }
  emit_plot(rows, dir / "one.svg", "single");
  const std::string svg = slurp(dir / "one.svg");
  std::size_t polylines = 0;
  for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) {
    ++polylines;
  }
  CHECK(polylines == 1);
  CHECK(svg.find("Average transmit power") != std::string::npos);
  CHECK(svg.find("Ergodic secrecy rate") != std::string::npos);
  CHECK(svg.find("bit_an") != std::string::npos);

  for (SweepRow& x : rows) x.k = 8;
  rows.push_back(r);
  emit_plot(rows, dir / "two.svg", "k");
  CHECK(slurp(dir / "two.svg").find("bit_an, K=8") != std::string::npos);
  CHECK_THROWS_AS(emit_plot({}, dir / "none.svg", "x"), std::invalid_argument);
}
