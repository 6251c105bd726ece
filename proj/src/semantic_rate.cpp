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

#include "semsec/semantic_rate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace semsec {
namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("semantic similarity: SINR must be non-negative");
  }
}

double logistic_argument(double gamma, const SemanticParams& params) {
  return params.c1 * 10.0 * std::log10(gamma) + params.c2;
}

}  // namespace

void SemanticParams::validate() const {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) {
      throw std::invalid_argument(std::string("semantic.") + field + ": " + what);
    }
  };
  require(k >= 1, "k", "must be at least 1");
  require(std::isfinite(rho) && rho > 0.0, "rho", "must be positive");
  require(std::isfinite(a1) && a1 > 0.0, "a1", "must be positive");
  require(std::isfinite(a2) && a2 > a1 && a2 <= 1.0, "a2", "must satisfy a1 < a2 <= 1");
  require(std::isfinite(c1) && c1 > 0.0, "c1", "must be positive");
  require(std::isfinite(c2), "c2", "must be finite");
  require(std::isfinite(i_suts) && i_suts > 0.0, "i_suts", "must be positive");
  require(std::isfinite(l_words) && l_words > 0.0, "l_words", "must be positive");
}

double semantic_similarity(double gamma, const SemanticParams& params) {
  check_gamma(gamma);
  if (gamma == 0.0) {
    return params.a1;
  }
  const double z = logistic_argument(gamma, params);
  return params.a1 + (params.a2 - params.a1) / (1.0 + std::exp(-z));
}

double semantic_similarity_slope(double gamma, const SemanticParams& params) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("semantic_similarity_slope: SINR must be positive");
  }
  const double z = logistic_argument(gamma, params);
  const double sigma = 1.0 / (1.0 + std::exp(-z));
  const double dz_dgamma = params.c1 * 10.0 / (gamma * std::numbers::ln10);
  return (params.a2 - params.a1) * sigma * (1.0 - sigma) * dz_dgamma;
}

double semantic_rate_suts(double gamma, const SemanticParams& params) {
  return params.i_suts / (static_cast<double>(params.k) * params.l_words) *
         semantic_similarity(gamma, params);
}

double equivalent_bit_rate(double gamma, const SemanticParams& params) {
  return params.bits_per_symbol() * semantic_similarity(gamma, params);
}

}  // namespace semsec
