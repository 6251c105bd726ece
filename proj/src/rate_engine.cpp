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

#include "semsec/rate_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace semsec {
namespace {

constexpr std::array<std::pair<SchemeKind, std::string_view>, 4> kSchemeTags{{
    {SchemeKind::kScOptimal, "sc_optimal"},
    {SchemeKind::kScSca, "sc_sca"},
    {SchemeKind::kBitOnly, "bit_only"},
    {SchemeKind::kBitAn, "bit_an"},
}};

}  // namespace

std::string_view to_string(SchemeKind scheme) {
  for (const auto& [kind, tag] : kSchemeTags) {
    if (kind == scheme) return tag;
  }
  return "unknown";
}

std::optional<SchemeKind> parse_scheme(std::string_view tag) {
  for (const auto& [kind, name] : kSchemeTags) {
    if (name == tag) return kind;
  }
  return std::nullopt;
}

double sinr_bit(const Allocation& a, double g_l) {
  return (1.0 - a.beta) * a.p * g_l / (mu_value(a.mu) * a.beta * a.p * g_l + 1.0);
}

double sinr_sem(const Allocation& a, double g_l) {
  return a.beta * a.p * g_l / ((1.0 - mu_value(a.mu)) * (1.0 - a.beta) * a.p * g_l + 1.0);
}

double sinr_eve(const Allocation& a, double g_e) {
  return (1.0 - a.beta) * a.p * g_e / (a.beta * a.p * g_e + 1.0);
}

double rate_rx(const Allocation& a, double g_l, const SemanticParams& sp) {
  return std::log2(1.0 + sinr_bit(a, g_l)) + equivalent_bit_rate(sinr_sem(a, g_l), sp);
}

double rate_eve(const Allocation& a, double g_e) { return std::log2(1.0 + sinr_eve(a, g_e)); }

double secrecy_rate(const Allocation& a, const FadingState& s, const SemanticParams& sp) {
  return std::max(rate_rx(a, s.g_l, sp) - rate_eve(a, s.g_e), 0.0);
}

double bit_only_secrecy_rate(double p, const FadingState& s) {
  return std::max(std::log2(1.0 + p * s.g_l) - std::log2(1.0 + p * s.g_e), 0.0);
}

double bit_an_secrecy_rate(double p, double beta, const FadingState& s) {
  const double rx = std::log2(1.0 + (1.0 - beta) * p * s.g_l);
  const double eve = std::log2(1.0 + (1.0 - beta) * p * s.g_e / (beta * p * s.g_e + 1.0));
  return std::max(rx - eve, 0.0);
}

double scheme_secrecy_rate(SchemeKind scheme, const Allocation& a, const FadingState& s,
                           const SemanticParams& sp) {
  switch (scheme) {
    case SchemeKind::kScOptimal:
    case SchemeKind::kScSca:
      return secrecy_rate(a, s, sp);
    case SchemeKind::kBitOnly:
      return bit_only_secrecy_rate(a.p, s);
    case SchemeKind::kBitAn:
      return bit_an_secrecy_rate(a.p, a.beta, s);
  }
  return 0.0;
}

}  // namespace semsec
