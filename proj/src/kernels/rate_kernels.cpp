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

#include "semsec/rate_kernels.hpp"

#include <stdexcept>

namespace semsec {

std::string_view to_string(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::kScalar:
      return "scalar";
    case KernelIsa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool kernel_available(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::kScalar:
      return true;
    case KernelIsa::kAvx2:
#if defined(SEMSEC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

KernelIsa detect_kernel_isa() {
  static const KernelIsa best =
      kernel_available(KernelIsa::kAvx2) ? KernelIsa::kAvx2 : KernelIsa::kScalar;
  return best;
}

void secrecy_rate_batch(KernelIsa isa, const RateKernelInputs& in,
                        std::span<const double> power, std::span<const double> beta,
                        std::span<double> out) {
  if (power.size() != beta.size() || power.size() != out.size()) {
    throw std::invalid_argument("secrecy_rate_batch: span lengths differ");
  }
  switch (isa) {
    case KernelIsa::kAvx2:
#ifdef SEMSEC_HAVE_AVX2
      if (kernel_available(KernelIsa::kAvx2)) {
        detail::secrecy_rate_batch_avx2(in, power, beta, out);
        return;
      }
#endif
      throw std::invalid_argument("secrecy_rate_batch: avx2 kernel not available");
    case KernelIsa::kScalar:
      detail::secrecy_rate_batch_scalar(in, power, beta, out);
      return;
  }
}

}  // namespace semsec
