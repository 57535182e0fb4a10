#include "paoi/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace paoi::kernels {

namespace {

// Natural log of four positive doubles. Decompose x = m * 2^e with
// m in [sqrt(1/2), sqrt(2)), then log(m) via the atanh series in
// t = (m-1)/(m+1); |t| <= 0.1716 so eleven odd terms reach double
// precision. ln2 is split hi/lo to keep e*ln2 exact.
inline __m256d vlog(__m256d x) {
  const __m256i bias_mag = _mm256_set1_epi64x(0x4338000000000000LL);
  const __m256d bias_dbl = _mm256_set1_pd(6755399441055744.0);  // 2^52 + 2^51
  const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
  const __m256i exp_one = _mm256_set1_epi64x(0x3ff0000000000000LL);
  const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d ln2_hi = _mm256_set1_pd(0.693147180369123816490);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

  const __m256i bits = _mm256_castpd_si256(x);
  // Biased exponent to double through the 2^52+2^51 reinterpret trick.
  __m256i e_i = _mm256_srli_epi64(bits, 52);
  e_i = _mm256_add_epi64(e_i, _mm256_set1_epi64x(-1023));
  e_i = _mm256_add_epi64(e_i, bias_mag);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(e_i), bias_dbl);

  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), exp_one));
  const __m256d big = _mm256_cmp_pd(m, sqrt2, _CMP_GE_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, half), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, one));

  const __m256d t =
      _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d t2 = _mm256_mul_pd(t, t);
  __m256d poly = _mm256_set1_pd(1.0 / 21.0);
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 19.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 17.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 15.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 13.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 11.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 9.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 7.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 5.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 3.0));
  poly = _mm256_fmadd_pd(poly, t2, one);
  const __m256d log_m = _mm256_mul_pd(_mm256_add_pd(t, t), poly);

  __m256d r = _mm256_fmadd_pd(e, ln2_lo, log_m);
  return _mm256_fmadd_pd(e, ln2_hi, r);
}

}  // namespace

double interference_sum_avx2(const double* weights, const double* uniforms,
                             std::size_t n, double beta) {
  const __m256d vbeta = _mm256_set1_pd(beta);
  const __m256d inv_beta = _mm256_set1_pd(1.0 / beta);
  const __m256d ones = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d u = _mm256_loadu_pd(uniforms + i);
    const __m256d w = _mm256_loadu_pd(weights + i);
    const __m256d active = _mm256_cmp_pd(u, vbeta, _CMP_LT_OQ);
    // Inactive lanes are steered to log(1) = 0 so vlog sees valid input.
    const __m256d x =
        _mm256_blendv_pd(ones, _mm256_mul_pd(u, inv_beta), active);
    const __m256d contrib =
        _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), vlog(x)), w);
    acc = _mm256_add_pd(acc, _mm256_and_pd(active, contrib));
  }

  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
  for (; i < n; ++i) {
    if (uniforms[i] < beta)
      total += -std::log(uniforms[i] / beta) * weights[i];
  }
  return total;
}

}  // namespace paoi::kernels
