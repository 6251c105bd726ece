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

#include <cstddef>

#include "semsec/rate_kernels.hpp"

namespace semsec::detail {

void secrecy_rate_batch_scalar(const RateKernelInputs& in, std::span<const double> power,
                               std::span<const double> beta, std::span<double> out) {
  const std::size_t n = power.size();
  if (in.objective == RateObjective::kBitAn) {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = bit_an_secrecy_rate(power[i], beta[i], in.state);
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = secrecy_rate(Allocation{power[i], beta[i], in.mu}, in.state, in.semantic);
  }
}

}  // namespace semsec::detail
