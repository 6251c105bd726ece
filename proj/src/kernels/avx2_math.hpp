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

#ifndef SEMSEC_KERNELS_AVX2_MATH_HPP_
#define SEMSEC_KERNELS_AVX2_MATH_HPP_

// Double-precision ln/exp on four lanes. Only included from translation units
// compiled with -mavx2 -mfma.

#include <immintrin.h>

#include <cstdint>

namespace semsec::avx2 {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

/// Natural log for positive, normal, finite inputs (~1 ulp). Zero, negative,
/// subnormal and non-finite lanes give garbage; callers blend those out.
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3ff0000000000000LL);
  const __m256i magic_bits = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52

  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  // Biased exponent as a double via the 2^52 trick (no epi64->pd in AVX2).
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, magic_bits)),
                            splat(4503599627370496.0 + 1023.0));

  // Fold m into [sqrt(1/2), sqrt(2)).
  const __m256d big = _mm256_cmp_pd(m, splat(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, splat(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, splat(1.0)));

  // ln m = 2 atanh(s), s = (m-1)/(m+1), |s| <= 0.1716.
  const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, splat(1.0)), _mm256_add_pd(m, splat(1.0)));
  const __m256d s2 = _mm256_mul_pd(s, s);
  __m256d poly = splat(1.0 / 21.0);
  poly = _mm256_fmadd_pd(poly, s2, splat(1.0 / 19.0));
  poly = _mm256_fmadd_pd(poly, s2, splat(1.0 / 17.0));
  poly = _mm256_fmadd_pd(poly, s2, splat(1.0 / 15.0));
  poly = _mm256_fmadd_pd(poly, s2, splat(1.0 / 13.0));
  poly = _mm256_fmadd_pd(poly, s2, splat(1.0 / 11.0));
  poly = _mm256_fmadd_pd(poly, s2, splat(1.0 / 9.0));
  poly = _mm256_fmadd_pd(poly, s2, splat(1.0 / 7.0));
  poly = _mm256_fmadd_pd(poly, s2, splat(1.0 / 5.0));
  poly = _mm256_fmadd_pd(poly, s2, splat(1.0 / 3.0));
  // 2s + 2s*s2*poly keeps the leading term exact.
  const __m256d two_s = _mm256_add_pd(s, s);
  const __m256d ln_m = _mm256_fmadd_pd(_mm256_mul_pd(two_s, s2), poly, two_s);

  constexpr double kLn2Hi = 6.93147180369123816490e-01;
  constexpr double kLn2Lo = 1.90821492927058770002e-10;
  return _mm256_fmadd_pd(e, splat(kLn2Hi), _mm256_fmadd_pd(e, splat(kLn2Lo), ln_m));
}

/// e^x, inputs clamped to [-708, 708] so the result is always finite and
/// normal.
inline __m256d exp_pd(__m256d x) {
  x = _mm256_min_pd(_mm256_max_pd(x, splat(-708.0)), splat(708.0));
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, splat(1.4426950408889634)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  constexpr double kLn2Hi = 6.93147180369123816490e-01;
  constexpr double kLn2Lo = 1.90821492927058770002e-10;
  __m256d r = _mm256_fnmadd_pd(k, splat(kLn2Hi), x);
  r = _mm256_fnmadd_pd(k, splat(kLn2Lo), r);

  // Taylor to degree 13 on |r| <= ln2/2; truncation error < 1e-17.
  __m256d poly = splat(1.0 / 6227020800.0);
  poly = _mm256_fmadd_pd(poly, r, splat(1.0 / 479001600.0));
  poly = _mm256_fmadd_pd(poly, r, splat(1.0 / 39916800.0));
  poly = _mm256_fmadd_pd(poly, r, splat(1.0 / 3628800.0));
  poly = _mm256_fmadd_pd(poly, r, splat(1.0 / 362880.0));
  poly = _mm256_fmadd_pd(poly, r, splat(1.0 / 40320.0));
  poly = _mm256_fmadd_pd(poly, r, splat(1.0 / 5040.0));
  poly = _mm256_fmadd_pd(poly, r, splat(1.0 / 720.0));
  poly = _mm256_fmadd_pd(poly, r, splat(1.0 / 120.0));
  poly = _mm256_fmadd_pd(poly, r, splat(1.0 / 24.0));
  poly = _mm256_fmadd_pd(poly, r, splat(1.0 / 6.0));
  poly = _mm256_fmadd_pd(poly, r, splat(0.5));
  poly = _mm256_fmadd_pd(poly, r, splat(1.0));
  poly = _mm256_fmadd_pd(poly, r, splat(1.0));

  const __m256i ki = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
  const __m256i scale_bits =
      _mm256_slli_epi64(_mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(poly, _mm256_castsi256_pd(scale_bits));
}

inline __m256d log2_1p_pd(__m256d x) {
  return _mm256_mul_pd(log_pd(_mm256_add_pd(splat(1.0), x)), splat(1.4426950408889634));
}

}  // namespace semsec::avx2

#endif  // SEMSEC_KERNELS_AVX2_MATH_HPP_
