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

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "semsec/errors.hpp"
#include "semsec/experiment.hpp"

namespace semsec {
namespace {

using nlohmann::json;

// Field reader for one JSON object; remembers its dotted path for messages.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(where("") + "expected an object");
  }

  void reject_unknown(std::initializer_list<const char*> known) const {
    std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : obj_.items()) {
      if (!allowed.count(key)) throw ConfigError(where(key) + "unknown field");
    }
  }

  bool has(const char* key) const { return obj_.contains(key); }
  const json& raw(const char* key) const { return obj_.at(key); }

  void number(const char* key, double& out) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number()) throw ConfigError(where(key) + "expected a number");
    out = v.get<double>();
    if (!std::isfinite(out)) throw ConfigError(where(key) + "must be finite");
  }

  template <typename Int>
  void integer(const char* key, Int& out) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + "expected an integer");
    if (std::is_unsigned_v<Int> && v.is_number_integer() && !v.is_number_unsigned() &&
        v.get<long long>() < 0) {
      throw ConfigError(where(key) + "must be non-negative");
    }
    out = v.get<Int>();
  }

  void boolean(const char* key, bool& out) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) throw ConfigError(where(key) + "expected true or false");
    out = v.get<bool>();
  }

  void string(const char* key, std::string& out) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_string()) throw ConfigError(where(key) + "expected a string");
    out = v.get<std::string>();
  }

  std::string where(const std::string& key) const {
    std::string p = path_;
    if (!key.empty()) p += p.empty() ? key : "." + key;
    return (p.empty() ? std::string("config") : p) + ": ";
  }

 private:
  const json& obj_;
  std::string path_;
};

void read_semantic(const Section& sec, SemanticParams& sp) {
  sec.reject_unknown({"k", "rho", "a1", "a2", "c1", "c2", "i_suts", "l_words"});
  sec.integer("k", sp.k);
  sec.number("rho", sp.rho);
  sec.number("a1", sp.a1);
  sec.number("a2", sp.a2);
  sec.number("c1", sp.c1);
  sec.number("c2", sp.c2);
  sec.number("i_suts", sp.i_suts);
  sec.number("l_words", sp.l_words);
}

SchemeKind read_scheme(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + "expected a scheme tag string");
  const std::string tag = v.get<std::string>();
  if (auto s = parse_scheme(tag)) return *s;
  throw ConfigError(where + "unknown scheme '" + tag + "'");
}

// Re-throws invariant failures from the domain validators as ConfigError.
template <typename Fn>
void as_config_error(Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  as_config_error([&] { channel.validate(); });
  as_config_error([&] { semantic.validate(); });
  for (const SemanticParams& sp : semantic_overrides) as_config_error([&] { sp.validate(); });
  as_config_error([&] { solver.validate(); });
  as_config_error([&] { sca.validate(); });
  if (!(std::isfinite(peak_w) && peak_w > 0.0)) {
    throw ConfigError("budget.peak_w: must be a positive power");
  }
  if (average_w.empty()) throw ConfigError("budget.average_w: need at least one value");
  for (double p : average_w) {
    if (!(p > 0.0 && p <= peak_w)) {
      throw ConfigError("budget.average_w: " + std::to_string(p) +
                        " W is outside (0, peak_w]");
    }
  }
  if (schemes.empty()) throw ConfigError("schemes: need at least one scheme");
  if (n_states < 1) throw ConfigError("n_states: must be at least 1");
  for (int k : k_sweep) {
    if (k < 1) throw ConfigError("k_sweep: K must be at least 1");
  }
  if (solver.isa && !kernel_available(*solver.isa)) {
    throw ConfigError("solver.kernel: '" + std::string(to_string(*solver.isa)) +
                      "' is not available on this machine");
  }
}

SemanticParams ExperimentConfig::semantic_for(int k) const {
  for (const SemanticParams& sp : semantic_overrides) {
    if (sp.k == k) return sp;
  }
  SemanticParams sp = semantic;
  sp.k = k;
  return sp;
}

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  ExperimentConfig cfg;
  const Section top(root, "");
  top.reject_unknown({"channel", "semantic", "semantic_overrides", "k_sweep", "k_sweep_scheme",
                      "budget", "schemes", "n_states", "solver", "sca", "output_dir",
                      "record_wall_time"});

  if (top.has("channel")) {
    const Section sec(top.raw("channel"), "channel");
    sec.reject_unknown({"d_l", "d_e", "pl0_db", "alpha", "noise_l_dbm", "noise_e_dbm", "seed"});
    sec.number("d_l", cfg.channel.d_l);
    sec.number("d_e", cfg.channel.d_e);
    sec.number("pl0_db", cfg.channel.pl0_db);
    sec.number("alpha", cfg.channel.alpha);
    sec.number("noise_l_dbm", cfg.channel.noise_l_dbm);
    sec.number("noise_e_dbm", cfg.channel.noise_e_dbm);
    sec.integer("seed", cfg.channel.seed);
  }
  if (top.has("semantic")) read_semantic(Section(top.raw("semantic"), "semantic"), cfg.semantic);
  if (top.has("semantic_overrides")) {
    const json& list = top.raw("semantic_overrides");
    if (!list.is_array()) throw ConfigError("semantic_overrides: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "semantic_overrides[" + std::to_string(i) + "]";
      const Section sec(list[i], path);
      if (!sec.has("k")) throw ConfigError(path + ": k is required");
      SemanticParams sp = cfg.semantic;
      read_semantic(sec, sp);
      cfg.semantic_overrides.push_back(sp);
    }
  }
  if (top.has("k_sweep")) {
    const json& list = top.raw("k_sweep");
    if (!list.is_array()) throw ConfigError("k_sweep: expected an array of integers");
    cfg.k_sweep.clear();
    for (const json& v : list) {
      if (!v.is_number_integer()) throw ConfigError("k_sweep: expected an array of integers");
      cfg.k_sweep.push_back(v.get<int>());
    }
  }
  if (top.has("k_sweep_scheme")) {
    cfg.k_sweep_scheme = read_scheme(top.raw("k_sweep_scheme"), "k_sweep_scheme: ");
  }
  if (top.has("budget")) {
    const Section sec(top.raw("budget"), "budget");
    sec.reject_unknown({"peak_w", "average_w"});
    sec.number("peak_w", cfg.peak_w);
    if (sec.has("average_w")) {
      const json& list = sec.raw("average_w");
      if (!list.is_array()) throw ConfigError("budget.average_w: expected an array of numbers");
      cfg.average_w.clear();
      for (const json& v : list) {
        if (!v.is_number()) throw ConfigError("budget.average_w: expected an array of numbers");
        cfg.average_w.push_back(v.get<double>());
      }
    }
  }
  if (top.has("schemes")) {
    const json& list = top.raw("schemes");
    if (!list.is_array()) throw ConfigError("schemes: expected an array of scheme tags");
    cfg.schemes.clear();
    for (const json& v : list) cfg.schemes.push_back(read_scheme(v, "schemes: "));
  }
  top.integer("n_states", cfg.n_states);
  if (top.has("solver")) {
    const Section sec(top.raw("solver"), "solver");
    sec.reject_unknown({"grid_p", "grid_beta", "refine_rounds", "refine_points", "lambda_lo",
                        "lambda_hi", "lambda_tol", "max_bisections", "kernel"});
    sec.integer("grid_p", cfg.solver.grid_p);
    sec.integer("grid_beta", cfg.solver.grid_beta);
    sec.integer("refine_rounds", cfg.solver.refine_rounds);
    sec.integer("refine_points", cfg.solver.refine_points);
    sec.number("lambda_lo", cfg.solver.lambda_lo);
    sec.number("lambda_hi", cfg.solver.lambda_hi);
    sec.number("lambda_tol", cfg.solver.lambda_tol);
    sec.integer("max_bisections", cfg.solver.max_bisections);
    std::string kernel = "auto";
    sec.string("kernel", kernel);
    if (kernel == "scalar") {
      cfg.solver.isa = KernelIsa::kScalar;
    } else if (kernel == "avx2") {
      cfg.solver.isa = KernelIsa::kAvx2;
    } else if (kernel != "auto") {
      throw ConfigError("solver.kernel: expected auto, scalar or avx2");
    }
  }
  if (top.has("sca")) {
    const Section sec(top.raw("sca"), "sca");
    sec.reject_unknown({"max_iters", "obj_tol", "p_floor", "chi_margin", "inner_tol",
                        "max_inner_iters", "max_dual_steps"});
    sec.integer("max_iters", cfg.sca.max_iters);
    sec.number("obj_tol", cfg.sca.obj_tol);
    sec.number("p_floor", cfg.sca.p_floor);
    sec.number("chi_margin", cfg.sca.chi_margin);
    sec.number("inner_tol", cfg.sca.inner_tol);
    sec.integer("max_inner_iters", cfg.sca.max_inner_iters);
    sec.integer("max_dual_steps", cfg.sca.max_dual_steps);
  }
  std::string out = cfg.output_dir.string();
  top.string("output_dir", out);
  cfg.output_dir = out;
  top.boolean("record_wall_time", cfg.record_wall_time);

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace semsec
