// AVX2/FMA variants. This file is compiled with -mavx2 -mfma and must only be
// entered after a runtime CPU check (see simd.cpp).

#include <immintrin.h>

#include "otcss/simd.hpp"

namespace otcss::simd::detail {
namespace {

// exp(x) with range reduction x = n ln2 + r, |r| <= ln2/2, and a degree-13
// Taylor polynomial for e^r (truncation error below 5e-18 relative).
inline __m256d exp_pd(__m256d x) {
  const __m256d unordered = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
  const __m256d xc =
      _mm256_min_pd(_mm256_max_pd(x, _mm256_set1_pd(-746.0)), _mm256_set1_pd(710.0));

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, _mm256_set1_pd(1.4426950408889634)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93147180369123816490e-01), xc);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.90821492927058770002e-10), r);

  static constexpr double kInvFact[] = {
      1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
      1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,      1.0 / 720.0,
      1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,         0.5,
      1.0,                1.0};
  __m256d p = _mm256_set1_pd(kInvFact[0]);
  for (int k = 1; k < 14; ++k) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kInvFact[k]));

  // 2^n applied in two halves so neither factor leaves the normal range.
  const __m128i ni = _mm256_cvtpd_epi32(n);
  const __m128i n1 = _mm_srai_epi32(ni, 1);
  const __m128i n2 = _mm_sub_epi32(ni, n1);
  const auto pow2 = [](__m128i k) {
    __m256i e = _mm256_add_epi64(_mm256_cvtepi32_epi64(k), _mm256_set1_epi64x(1023));
    return _mm256_castsi256_pd(_mm256_slli_epi64(e, 52));
  };
  const __m256d result = _mm256_mul_pd(_mm256_mul_pd(p, pow2(n1)), pow2(n2));
  return _mm256_blendv_pd(result, x, unordered);
}

}  // namespace

void gaussian_form_avx2(const Form4& s, double scale, PointsView pts, std::span<double> out) {
  const std::size_t n = pts.size();
  const std::size_t blocked = n - n % 4;

  const __m256d s00 = _mm256_set1_pd(s[0]), s11 = _mm256_set1_pd(s[5]);
  const __m256d s22 = _mm256_set1_pd(s[10]), s33 = _mm256_set1_pd(s[15]);
  const __m256d s01 = _mm256_set1_pd(s[1]), s02 = _mm256_set1_pd(s[2]);
  const __m256d s03 = _mm256_set1_pd(s[3]), s12 = _mm256_set1_pd(s[6]);
  const __m256d s13 = _mm256_set1_pd(s[7]), s23 = _mm256_set1_pd(s[11]);
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d minus_half = _mm256_set1_pd(-0.5);
  const __m256d two = _mm256_set1_pd(2.0);

  for (std::size_t i = 0; i < blocked; i += 4) {
    const __m256d q1 = _mm256_loadu_pd(pts.q1.data() + i);
    const __m256d p1 = _mm256_loadu_pd(pts.p1.data() + i);
    const __m256d q2 = _mm256_loadu_pd(pts.q2.data() + i);
    const __m256d p2 = _mm256_loadu_pd(pts.p2.data() + i);

    __m256d diag = _mm256_mul_pd(_mm256_mul_pd(s00, q1), q1);
    diag = _mm256_fmadd_pd(_mm256_mul_pd(s11, p1), p1, diag);
    diag = _mm256_fmadd_pd(_mm256_mul_pd(s22, q2), q2, diag);
    diag = _mm256_fmadd_pd(_mm256_mul_pd(s33, p2), p2, diag);

    __m256d cross = _mm256_mul_pd(_mm256_mul_pd(s01, q1), p1);
    cross = _mm256_fmadd_pd(_mm256_mul_pd(s02, q1), q2, cross);
    cross = _mm256_fmadd_pd(_mm256_mul_pd(s03, q1), p2, cross);
    cross = _mm256_fmadd_pd(_mm256_mul_pd(s12, p1), q2, cross);
    cross = _mm256_fmadd_pd(_mm256_mul_pd(s13, p1), p2, cross);
    cross = _mm256_fmadd_pd(_mm256_mul_pd(s23, q2), p2, cross);

    const __m256d quad = _mm256_fmadd_pd(two, cross, diag);
    const __m256d value = _mm256_mul_pd(vscale, exp_pd(_mm256_mul_pd(minus_half, quad)));
    _mm256_storeu_pd(out.data() + i, value);
  }

  if (blocked < n) {
    const PointsView tail{pts.q1.subspan(blocked), pts.p1.subspan(blocked),
                          pts.q2.subspan(blocked), pts.p2.subspan(blocked)};
    gaussian_form_scalar(s, scale, tail, out.subspan(blocked));
  }
}

void exp_batch_avx2(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size();
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    _mm256_storeu_pd(out.data() + i, exp_pd(_mm256_loadu_pd(in.data() + i)));
  }
  if (blocked < n) exp_batch_scalar(in.subspan(blocked), out.subspan(blocked));
}

double dot_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t blocked = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < blocked; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t i = blocked; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace otcss::simd::detail
