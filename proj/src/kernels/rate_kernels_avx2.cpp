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

#include <immintrin.h>

#include <cstddef>

#include "avx2_math.hpp"
#include "semsec/rate_kernels.hpp"

namespace semsec::detail {
namespace {

using avx2::splat;

// rho/K * similarity(gamma); gamma == 0 lanes take the a1 limit.
__m256d equivalent_bits(__m256d gamma, const SemanticParams& sp) {
  const __m256d zero_lane = _mm256_cmp_pd(gamma, _mm256_setzero_pd(), _CMP_LE_OQ);
  const __m256d safe = _mm256_max_pd(gamma, splat(1e-300));
  const __m256d lg = _mm256_mul_pd(avx2::log_pd(safe), splat(0.43429448190325182));
  const __m256d z = _mm256_fmadd_pd(splat(sp.c1 * 10.0), lg, splat(sp.c2));
  const __m256d denom = _mm256_add_pd(splat(1.0), avx2::exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), z)));
  __m256d eps = _mm256_add_pd(splat(sp.a1), _mm256_div_pd(splat(sp.a2 - sp.a1), denom));
  eps = _mm256_blendv_pd(eps, splat(sp.a1), zero_lane);
  return _mm256_mul_pd(splat(sp.bits_per_symbol()), eps);
}

}  // namespace

void secrecy_rate_batch_avx2(const RateKernelInputs& in, std::span<const double> power,
                             std::span<const double> beta, std::span<double> out) {
  const std::size_t n = power.size();
  const std::size_t vec_end = n - n % 4;
  const __m256d one = splat(1.0);
  const __m256d gl = splat(in.state.g_l);
  const __m256d ge = splat(in.state.g_e);
  const bool semantic = in.objective == RateObjective::kSemantic;
  const bool bit_first = in.mu == DecodeOrder::kBitFirst;

  for (std::size_t i = 0; i < vec_end; i += 4) {
    const __m256d p = _mm256_loadu_pd(power.data() + i);
    const __m256d b = _mm256_loadu_pd(beta.data() + i);
    const __m256d pb_share = _mm256_mul_pd(_mm256_sub_pd(one, b), p);
    const __m256d ps_share = _mm256_mul_pd(b, p);

    // Eavesdropper sees the semantic stream as interference in every scheme.
    const __m256d sinr_e = _mm256_div_pd(_mm256_mul_pd(pb_share, ge),
                                         _mm256_fmadd_pd(ps_share, ge, one));
    const __m256d rate_e = avx2::log2_1p_pd(sinr_e);
    const __m256d pb_l = _mm256_mul_pd(pb_share, gl);

    __m256d rate_l;
    if (!semantic) {
      rate_l = avx2::log2_1p_pd(pb_l);
    } else {
      const __m256d ps_l = _mm256_mul_pd(ps_share, gl);
      __m256d sinr_b;
      __m256d sinr_s;
      if (bit_first) {
        sinr_b = _mm256_div_pd(pb_l, _mm256_add_pd(ps_l, one));
        sinr_s = ps_l;
      } else {
        sinr_b = pb_l;
        sinr_s = _mm256_div_pd(ps_l, _mm256_add_pd(pb_l, one));
      }
      rate_l = _mm256_add_pd(avx2::log2_1p_pd(sinr_b), equivalent_bits(sinr_s, in.semantic));
    }
    _mm256_storeu_pd(out.data() + i, _mm256_max_pd(_mm256_sub_pd(rate_l, rate_e), _mm256_setzero_pd()));
  }

  if (vec_end < n) {
    secrecy_rate_batch_scalar(in, power.subspan(vec_end), beta.subspan(vec_end),
                              out.subspan(vec_end));
  }
}

}  // namespace semsec::detail
