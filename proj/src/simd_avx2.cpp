#include "rbk/simd.hpp"

#include <algorithm>
#include <cmath>

#if defined(__x86_64__) || defined(_M_X64)
#define RBK_HAVE_AVX2_LANE 1
#include <immintrin.h>
#else
#define RBK_HAVE_AVX2_LANE 0
#endif

namespace rbk::simd::avx2 {

#if RBK_HAVE_AVX2_LANE

bool available() { return __builtin_cpu_supports("avx2"); }

namespace {

__attribute__((target("avx2"))) inline double hsum(__m256d v) {
  // ((v0+v2)+(v1+v3)) — fixed lane order, deterministic per run
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  __m128d swap = _mm_unpackhi_pd(s, s);
  return _mm_cvtsd_f64(_mm_add_sd(s, swap));
}

}  // namespace

__attribute__((target("avx2")))
double sum(std::span<const double> x) {
  const double* p = x.data();
  std::size_t n = x.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += p[i];
  return s;
}

__attribute__((target("avx2")))
double dot(std::span<const double> x, std::span<const double> y) {
  const double* a = x.data();
  const double* b = y.data();
  std::size_t n = x.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // mul+add, no FMA: keeps products bit-identical to the scalar lane
    acc = _mm256_add_pd(acc,
                        _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                      _mm256_loadu_pd(b + i)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

__attribute__((target("avx2")))
void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const double* a = x.data();
  double* out = y.data();
  std::size_t n = x.size();
  __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(a + i);
    __m256d yv = _mm256_loadu_pd(out + i);
    _mm256_storeu_pd(out + i, _mm256_add_pd(yv, _mm256_mul_pd(va, xv)));
  }
  for (; i < n; ++i) out[i] = out[i] + alpha * a[i];
}

__attribute__((target("avx2")))
WrmsResult wrms_error(std::span<const double> e, std::span<const double> y0,
                      std::span<const double> y1, double atol, double rtol) {
  const double* pe = e.data();
  const double* p0 = y0.data();
  const double* p1 = y1.data();
  std::size_t n = e.size();
  const __m256d vatol = _mm256_set1_pd(atol);
  const __m256d vrtol = _mm256_set1_pd(rtol);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = _mm256_setzero_pd();
  std::size_t active = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d ev = _mm256_loadu_pd(pe + i);
    __m256d a0 = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(p0 + i));
    __m256d a1 = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(p1 + i));
    __m256d w = _mm256_add_pd(
        vatol, _mm256_mul_pd(vrtol, _mm256_max_pd(a0, a1)));
    __m256d r = _mm256_div_pd(ev, w);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(r, r));
    __m256d nz = _mm256_or_pd(
        _mm256_cmp_pd(ev, zero, _CMP_NEQ_UQ),
        _mm256_or_pd(_mm256_cmp_pd(a0, zero, _CMP_NEQ_UQ),
                     _mm256_cmp_pd(a1, zero, _CMP_NEQ_UQ)));
    active += static_cast<std::size_t>(
        __builtin_popcount(_mm256_movemask_pd(nz)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    double w = atol + rtol * std::max(std::fabs(p0[i]), std::fabs(p1[i]));
    double r = pe[i] / w;
    s += r * r;
    if (pe[i] != 0.0 || p0[i] != 0.0 || p1[i] != 0.0) ++active;
  }
  std::size_t count = active == 0 ? 1 : active;
  return {std::sqrt(s / static_cast<double>(count)), active};
}

#else  // !RBK_HAVE_AVX2_LANE

bool available() { return false; }

double sum(std::span<const double> x) { return scalar::sum(x); }
double dot(std::span<const double> x, std::span<const double> y) {
  return scalar::dot(x, y);
}
void axpy(double a, std::span<const double> x, std::span<double> y) {
  scalar::axpy(a, x, y);
}
WrmsResult wrms_error(std::span<const double> e, std::span<const double> y0,
                      std::span<const double> y1, double atol, double rtol) {
  return scalar::wrms_error(e, y0, y1, atol, rtol);
}

#endif

}  // namespace rbk::simd::avx2
