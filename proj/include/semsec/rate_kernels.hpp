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

#ifndef SEMSEC_RATE_KERNELS_HPP_
#define SEMSEC_RATE_KERNELS_HPP_

#include <span>
#include <string_view>

#include "semsec/channel_model.hpp"
#include "semsec/rate_engine.hpp"
#include "semsec/semantic_rate.hpp"

// Batched secrecy-rate evaluation for the grid searches. The scalar kernel is
// the reference and simply calls into rate_engine; vector variants must agree
// with it to ~1e-12 relative and are picked at runtime.

namespace semsec {

enum class KernelIsa { kScalar, kAvx2 };

std::string_view to_string(KernelIsa isa);

/// Whether this binary carries the kernel and the running CPU supports it.
bool kernel_available(KernelIsa isa);

/// Widest available kernel.
KernelIsa detect_kernel_isa();

/// Which secrecy formula a batch scores. Bit-only is kBitAn with beta = 0.
enum class RateObjective { kSemantic, kBitAn };

struct RateKernelInputs {
  FadingState state;
  SemanticParams semantic;
  DecodeOrder mu = DecodeOrder::kSemanticFirst;
  RateObjective objective = RateObjective::kSemantic;
};

/// out[i] = clamped secrecy rate at (power[i], beta[i]). All spans must have
/// the same length.
void secrecy_rate_batch(KernelIsa isa, const RateKernelInputs& in,
                        std::span<const double> power, std::span<const double> beta,
                        std::span<double> out);

namespace detail {
void secrecy_rate_batch_scalar(const RateKernelInputs& in, std::span<const double> power,
                               std::span<const double> beta, std::span<double> out);
#ifdef SEMSEC_HAVE_AVX2
void secrecy_rate_batch_avx2(const RateKernelInputs& in, std::span<const double> power,
                             std::span<const double> beta, std::span<double> out);
#endif
}  // namespace detail

}  // namespace semsec

#endif  // SEMSEC_RATE_KERNELS_HPP_
