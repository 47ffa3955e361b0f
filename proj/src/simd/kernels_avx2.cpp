// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace obscorr::simd::avx2 {

namespace {

// Cephes-style exp: x = n*ln2 + r with |r| <= ln2/2, then a (2,3) Pade form
// for e^r and an exponent-field add for 2^n. About 1 ulp over the clamped
// range; arguments above 709 are clamped (callers only pass x <= 0) and
// results below e^-708 flush to zero.
inline __m256d exp_pd(__m256d x) {
  const __m256d hi = _mm256_set1_pd(709.0);
  const __m256d lo = _mm256_set1_pd(-708.0);
  const __m256d keep = _mm256_cmp_pd(x, lo, _CMP_GE_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

  __m256d n = _mm256_fmadd_pd(x, log2e, _mm256_set1_pd(0.5));
  n = _mm256_round_pd(n, _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_pd(n, ln2_hi, x);
  x = _mm256_fnmadd_pd(n, ln2_lo, x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
  p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(3.02994407707441961300e-2));
  p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(9.99999999999999999910e-1));
  p = _mm256_mul_pd(p, x);

  __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.52448340349684104192e-3));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.27265548208155028766e-1));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.00000000000000000009e0));

  __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  r = _mm256_fmadd_pd(r, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

  const __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i bits = _mm256_cvtepi32_epi64(n32);
  bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  return _mm256_and_pd(_mm256_mul_pd(r, _mm256_castsi256_pd(bits)), keep);
}

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double power_decay_sum(std::span<const double> log_terms, double alpha) {
  const double* x = log_terms.data();
  const std::size_t n = log_terms.size();
  const __m256d neg_alpha = _mm256_set1_pd(-alpha);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_add_pd(acc0, exp_pd(_mm256_mul_pd(neg_alpha, _mm256_loadu_pd(x + k))));
    acc1 = _mm256_add_pd(acc1, exp_pd(_mm256_mul_pd(neg_alpha, _mm256_loadu_pd(x + k + 4))));
  }
  for (; k + 4 <= n; k += 4) {
    acc0 = _mm256_add_pd(acc0, exp_pd(_mm256_mul_pd(neg_alpha, _mm256_loadu_pd(x + k))));
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) sum += std::exp(-alpha * x[k]);
  return sum;
}

double rational_decay_objective(std::span<const double> fractions,
                                std::span<const double> offset_powers, double peak, double beta) {
  const double* f = fractions.data();
  const double* u = offset_powers.data();
  const std::size_t n = fractions.size();
  const __m256d vpeak = _mm256_set1_pd(peak);
  const __m256d vbeta = _mm256_set1_pd(beta);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d ratio = _mm256_div_pd(vbeta, _mm256_add_pd(vbeta, _mm256_loadu_pd(u + k)));
    const __m256d model = _mm256_mul_pd(vpeak, ratio);
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(f + k), model);
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(abs_pd(diff)));
  }
  double sum = hsum(acc);
  for (; k < n; ++k) {
    const double model = peak * (beta / (beta + u[k]));
    sum += std::sqrt(std::fabs(f[k] - model));
  }
  return sum;
}

double sqrt_abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(a.data() + k), _mm256_loadu_pd(b.data() + k));
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(abs_pd(diff)));
  }
  double sum = hsum(acc);
  for (; k < n; ++k) sum += std::sqrt(std::fabs(a[k] - b[k]));
  return sum;
}

}  // namespace obscorr::simd::avx2
