// AVX2+FMA variants of the complex array kernels. Two interleaved
// complex<double> lanes per 256-bit register; odd tails fall back to the
// scalar loop body. Compiled with -mavx2 -mfma and entered only when the
// runtime dispatcher has confirmed CPU support.
#include "torwav/kernels.hpp"

#if defined(TORWAV_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace torwav::kernels::avx2 {

namespace {

inline const double* dp(const cd* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cd* p) { return reinterpret_cast<double*>(p); }

// [ar, ai] * [br, bi] for two complex lanes.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d bre = _mm256_movedup_pd(b);
  const __m256d bim = _mm256_permute_pd(b, 0xF);
  const __m256d asw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, bre, _mm256_mul_pd(asw, bim));
}

// a * conj(b)
inline __m256d cmul_conj(__m256d a, __m256d b) {
  const __m256d bre = _mm256_movedup_pd(b);
  const __m256d bim = _mm256_permute_pd(b, 0xF);
  const __m256d asw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmsubadd_pd(a, bre, _mm256_mul_pd(asw, bim));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d m = _mm_max_pd(lo, hi);
  m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
  return _mm_cvtsd_f64(m);
}

}  // namespace

void mul_add(cd* dst, const cd* a, const cd* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(a + i));
    const __m256d vb = _mm256_loadu_pd(dp(b + i));
    const __m256d vd = _mm256_loadu_pd(dp(dst + i));
    _mm256_storeu_pd(dp(dst + i), _mm256_add_pd(vd, cmul(va, vb)));
  }
  for (; i < n; ++i) dst[i] += a[i] * b[i];
}

void conj_mul_add(cd* dst, const cd* a, const cd* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(a + i));
    const __m256d vb = _mm256_loadu_pd(dp(b + i));
    const __m256d vd = _mm256_loadu_pd(dp(dst + i));
    _mm256_storeu_pd(dp(dst + i), _mm256_add_pd(vd, cmul_conj(va, vb)));
  }
  for (; i < n; ++i) dst[i] += a[i] * std::conj(b[i]);
}

void mul(cd* dst, const cd* a, const cd* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(a + i));
    const __m256d vb = _mm256_loadu_pd(dp(b + i));
    _mm256_storeu_pd(dp(dst + i), cmul(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void scale(cd* dst, cd s, std::size_t n) {
  const __m256d sre = _mm256_set1_pd(s.real());
  const __m256d sim = _mm256_set1_pd(s.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(dst + i));
    const __m256d asw = _mm256_permute_pd(va, 0x5);
    _mm256_storeu_pd(dp(dst + i), _mm256_fmaddsub_pd(va, sre, _mm256_mul_pd(asw, sim)));
  }
  for (; i < n; ++i) dst[i] *= s;
}

void axpy(cd* dst, cd s, const cd* a, std::size_t n) {
  const __m256d sre = _mm256_set1_pd(s.real());
  const __m256d sim = _mm256_set1_pd(s.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(a + i));
    const __m256d asw = _mm256_permute_pd(va, 0x5);
    const __m256d prod = _mm256_fmaddsub_pd(va, sre, _mm256_mul_pd(asw, sim));
    const __m256d vd = _mm256_loadu_pd(dp(dst + i));
    _mm256_storeu_pd(dp(dst + i), _mm256_add_pd(vd, prod));
  }
  for (; i < n; ++i) dst[i] += s * a[i];
}

double sup_abs(const cd* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(a + i));
    const __m256d sq = _mm256_mul_pd(va, va);
    acc = _mm256_max_pd(acc, _mm256_hadd_pd(sq, sq));
  }
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    m = std::max(m, re * re + im * im);
  }
  return std::sqrt(m);
}

double sup_abs_diff(const cd* a, const cd* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(dp(a + i)), _mm256_loadu_pd(dp(b + i)));
    const __m256d sq = _mm256_mul_pd(d, d);
    acc = _mm256_max_pd(acc, _mm256_hadd_pd(sq, sq));
  }
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double re = a[i].real() - b[i].real();
    const double im = a[i].imag() - b[i].imag();
    m = std::max(m, re * re + im * im);
  }
  return std::sqrt(m);
}

}  // namespace torwav::kernels::avx2

#endif  // TORWAV_HAVE_AVX2
