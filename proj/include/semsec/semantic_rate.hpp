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

#ifndef SEMSEC_SEMANTIC_RATE_HPP_
#define SEMSEC_SEMANTIC_RATE_HPP_

namespace semsec {

/// Generalized-logistic fit of DeepSC text similarity versus SINR, together
/// with the source constants that turn similarity into a rate.
///
/// The defaults are the K = 5 fit. Other K need their own (a1, a2, c1, c2);
/// when only k is changed the similarity curve is reused as-is.
struct SemanticParams {
  int k = 5;             // semantic symbols per word
  double rho = 40.0;     // bits per word of the bit-oriented reference
  double a1 = 0.37;      // lower asymptote
  double a2 = 0.98;      // upper asymptote
  double c1 = 0.2525;    // growth rate per dB
  double c2 = -0.7895;   // midpoint offset
  double i_suts = 20.0;  // semantic units per sentence (display only)
  double l_words = 10.0; // words per sentence (display only)

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;

  /// rho / k, the conversion from similarity to equivalent bits.
  double bits_per_symbol() const { return rho / static_cast<double>(k); }
};

/// a1 + (a2 - a1) / (1 + exp(-(c1 * 10 lg(gamma) + c2))), with the
/// gamma -> 0+ limit a1 at gamma == 0. Negative or NaN gamma throws.
double semantic_similarity(double gamma, const SemanticParams& params);

/// d(similarity)/d(gamma) for gamma > 0.
double semantic_similarity_slope(double gamma, const SemanticParams& params);

/// Semantic rate in suts/s/Hz: I / (K L) * similarity.
double semantic_rate_suts(double gamma, const SemanticParams& params);

/// Equivalent bit rate in bit/s/Hz: rho / K * similarity.
double equivalent_bit_rate(double gamma, const SemanticParams& params);

}  // namespace semsec

#endif  // SEMSEC_SEMANTIC_RATE_HPP_
