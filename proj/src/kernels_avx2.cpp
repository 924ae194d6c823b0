#ifdef QDARP_HAVE_AVX2

#include <immintrin.h>

#include "qdarp/kernels.hpp"

// AVX2 variants, two interleaved complex doubles per 256-bit lane.
// Pointwise kernels mirror the scalar mul/add sequence exactly (no FMA);
// reductions keep four running partials and fold them in a fixed order,
// so they can differ from the scalar sums by rounding only.

namespace qdarp::kernels {

namespace {

inline double fold(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
}

void cmul_avx2(cplx* a, const cplx* b, std::size_t n) {
  auto* pa = reinterpret_cast<double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d br = _mm256_movedup_pd(vb);              // (br, br)
    const __m256d bi_only = _mm256_unpackhi_pd(vb, vb);    // (bi, bi)
    const __m256d va_swap = _mm256_permute_pd(va, 0b0101); // (ai, ar)
    const __m256d re_im = _mm256_mul_pd(va, br);           // (ar*br, ai*br)
    const __m256d im_re = _mm256_mul_pd(va_swap, bi_only); // (ai*bi, ar*bi)
    _mm256_storeu_pd(pa + 2 * i, _mm256_addsub_pd(re_im, im_re));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi2 = b[i].imag();
    a[i] = {ar * br - ai * bi2, ar * bi2 + ai * br};
  }
}

void scale_avx2(cplx* a, double s, std::size_t n) {
  auto* pa = reinterpret_cast<double*>(a);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(pa + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(pa + 2 * i), vs));
  for (; i < n; ++i) a[i] = {a[i].real() * s, a[i].imag() * s};
}

void abs2_avx2(const cplx* a, double* out, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(pa + 2 * i);
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m128d lo = _mm256_castpd256_pd128(sq);
    const __m128d hi = _mm256_extractf128_pd(sq, 1);
    // (re0^2+im0^2, re1^2+im1^2)
    const __m128d sums = _mm_hadd_pd(lo, hi);
    _mm_storeu_pd(out + i, sums);
  }
  for (; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    out[i] = re * re + im * im;
  }
}

void abs_mag_avx2(const cplx* a, double* out, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(pa + 2 * i);
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m128d lo = _mm256_castpd256_pd128(sq);
    const __m128d hi = _mm256_extractf128_pd(sq, 1);
    _mm_storeu_pd(out + i, _mm_sqrt_pd(_mm_hadd_pd(lo, hi)));
  }
  for (; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    out[i] = __builtin_sqrt(re * re + im * im);
  }
}

double sum_abs2_avx2(const cplx* a, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double total = fold(acc);
  for (; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    total += re * re + im * im;
  }
  return total;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double total = fold(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

cplx csum_avx2(const cplx* a, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = _mm256_add_pd(acc, _mm256_loadu_pd(pa + 2 * i));
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);  // (re, im)
  double re = _mm_cvtsd_f64(pair);
  double im = _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  for (; i < n; ++i) {
    re += a[i].real();
    im += a[i].imag();
  }
  return {re, im};
}

double max_abs2_avx2(const cplx* a, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(pa + 2 * i);
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m256d swapped = _mm256_permute_pd(sq, 0b0101);
    best = _mm256_max_pd(best, _mm256_add_pd(sq, swapped));
  }
  const __m128d lo = _mm256_castpd256_pd128(best);
  const __m128d hi = _mm256_extractf128_pd(best, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  double out = _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
  for (; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    const double v = re * re + im * im;
    if (v > out) out = v;
  }
  return out;
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops = {cmul_avx2,    scale_avx2, abs2_avx2, abs_mag_avx2,
                          sum_abs2_avx2, sum_avx2,  csum_avx2, max_abs2_avx2};
  return ops;
}

}  // namespace qdarp::kernels

#endif  // QDARP_HAVE_AVX2
