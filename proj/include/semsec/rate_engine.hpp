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

#ifndef SEMSEC_RATE_ENGINE_HPP_
#define SEMSEC_RATE_ENGINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "semsec/channel_model.hpp"
#include "semsec/semantic_rate.hpp"

namespace semsec {

/// SIC order at the legitimate receiver. The numeric values match the
/// usual mu flag: 1 means the bit stream is decoded first.
enum class DecodeOrder : std::uint8_t { kSemanticFirst = 0, kBitFirst = 1 };

inline double mu_value(DecodeOrder order) {
  return order == DecodeOrder::kBitFirst ? 1.0 : 0.0;
}

/// Per-state transmit decision.
struct Allocation {
  double p = 0.0;     // total transmit power, watts
  double beta = 0.0;  // share of p on the semantic stream
  DecodeOrder mu = DecodeOrder::kSemanticFirst;

  bool valid(double peak_power) const {
    return p >= 0.0 && p <= peak_power && beta >= 0.0 && beta <= 1.0;
  }
};

enum class SchemeKind : std::uint8_t { kScOptimal, kScSca, kBitOnly, kBitAn };

std::string_view to_string(SchemeKind scheme);
std::optional<SchemeKind> parse_scheme(std::string_view tag);

// SINRs. Gains are noise-normalized, so the noise term is 1.
double sinr_bit(const Allocation& a, double g_l);
double sinr_sem(const Allocation& a, double g_l);
double sinr_eve(const Allocation& a, double g_e);

/// Bit rate plus equivalent semantic rate after both streams are decoded.
double rate_rx(const Allocation& a, double g_l, const SemanticParams& sp);
double rate_eve(const Allocation& a, double g_e);

/// [rate_rx - rate_eve]^+ for the semantic superposition scheme.
double secrecy_rate(const Allocation& a, const FadingState& s, const SemanticParams& sp);

double bit_only_secrecy_rate(double p, const FadingState& s);

/// Bit stream plus artificial noise that the receiver cancels for free.
double bit_an_secrecy_rate(double p, double beta, const FadingState& s);

/// Dispatches to the secrecy formula a scheme is scored with. Both semantic
/// schemes use secrecy_rate; bit_only ignores beta.
double scheme_secrecy_rate(SchemeKind scheme, const Allocation& a, const FadingState& s,
                           const SemanticParams& sp);

}  // namespace semsec

#endif  // SEMSEC_RATE_ENGINE_HPP_
