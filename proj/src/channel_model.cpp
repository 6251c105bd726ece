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

#include "semsec/channel_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace semsec {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform on the open interval (0, 1); never returns 0, so -log(u) is finite.
double open_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

void ChannelConfig::validate() const {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) {
      throw std::invalid_argument(std::string("channel.") + field + ": " + what);
    }
  };
  require(std::isfinite(d_l) && d_l > 0.0, "d_l", "must be a positive distance");
  require(std::isfinite(d_e) && d_e > 0.0, "d_e", "must be a positive distance");
  require(std::isfinite(alpha) && alpha > 0.0, "alpha", "must be positive");
  require(std::isfinite(pl0_db), "pl0_db", "must be finite");
  require(std::isfinite(noise_l_dbm) && dbm_to_watt(noise_l_dbm) > 0.0,
          "noise_l_dbm", "must convert to a positive power");
  require(std::isfinite(noise_e_dbm) && dbm_to_watt(noise_e_dbm) > 0.0,
          "noise_e_dbm", "must convert to a positive power");
}

double path_loss_linear(double d, double pl0_db, double alpha) {
  if (!(d > 0.0)) {
    throw std::invalid_argument("path_loss_linear: distance must be positive");
  }
  return std::pow(10.0, pl0_db / 10.0) * std::pow(d, -alpha);
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

FadingState mean_gains(const ChannelConfig& cfg) {
  return {path_loss_linear(cfg.d_l, cfg.pl0_db, cfg.alpha) / dbm_to_watt(cfg.noise_l_dbm),
          path_loss_linear(cfg.d_e, cfg.pl0_db, cfg.alpha) / dbm_to_watt(cfg.noise_e_dbm)};
}

std::vector<FadingState> sample_states(const ChannelConfig& cfg, std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("sample_states: need at least one state");
  }
  cfg.validate();
  const FadingState mean = mean_gains(cfg);
  const std::uint64_t stream_base = splitmix64(cfg.seed);

  std::vector<FadingState> states(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Per-state substream: the draw for index i never depends on i-1.
    std::mt19937_64 rng(splitmix64(stream_base ^ splitmix64(i)));
    // |h|^2 ~ Exp(mean PL); dividing by noise keeps the exponential shape.
    states[i].g_l = -std::log(open_unit(rng)) * mean.g_l;
    states[i].g_e = -std::log(open_unit(rng)) * mean.g_e;
  }
  return states;
}

}  // namespace semsec
