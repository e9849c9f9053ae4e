#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace ul::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// lanes (0 + 2) - (1 + 3)
inline double hsum_alternating(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }

// |z|^2 for four consecutive complex values, in order.
inline __m256d abs2x4(const cplx* x) {
  const __m256d a = _mm256_loadu_pd(raw(x));
  const __m256d b = _mm256_loadu_pd(raw(x + 2));
  const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
  return _mm256_permute4x64_pd(h, 0b11011000);
}

}  // namespace

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  // prod holds (ar*br, ai*bi), cross holds (ar*bi, ai*br), two complexes per register
  __m256d prod = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(raw(a + i));
    const __m256d vb = _mm256_loadu_pd(raw(b + i));
    prod = _mm256_fmadd_pd(va, vb, prod);
    cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), cross);
  }
  double re = hsum_alternating(prod);
  double im = hsum(cross);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
  __m256d prod = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(raw(a + i));
    const __m256d vb = _mm256_loadu_pd(raw(b + i));
    prod = _mm256_fmadd_pd(va, vb, prod);
    cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), cross);
  }
  double re = hsum(prod);
  double im = hsum_alternating(cross);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void abs2(const cplx* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, abs2x4(x + i));
  for (; i < n; ++i) {
    const double re2 = x[i].real() * x[i].real();
    const double im2 = x[i].imag() * x[i].imag();
    out[i] = re2 + im2;
  }
}

double abs_max(const cplx* x, std::size_t n) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) best = _mm256_max_pd(best, abs2x4(x + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = 0.0;
  for (double v : lanes) m = v > m ? v : m;
  for (; i < n; ++i) {
    const double re2 = x[i].real() * x[i].real();
    const double im2 = x[i].imag() * x[i].imag();
    const double v = re2 + im2;
    if (v > m) m = v;
  }
  return std::sqrt(m);
}

double abs_pow_sum(const cplx* x, std::size_t n, double p) {
  std::size_t i = 0;
  if (p == 2.0) {
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, abs2x4(x + i));
    double sum = hsum(acc);
    for (; i < n; ++i) sum += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return sum;
  }
  const double half = 0.5 * p;
  double sum = 0.0;
  alignas(32) double lanes[4];
  for (; i + 4 <= n; i += 4) {
    _mm256_store_pd(lanes, abs2x4(x + i));
    for (double m : lanes) {
      if (m > 0.0) sum += std::pow(m, half);
    }
  }
  for (; i < n; ++i) {
    const double m = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    if (m > 0.0) sum += std::pow(m, half);
  }
  return sum;
}

double masked_sum(const double* w, const double* mask, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(mask + i), acc);
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += w[i] * mask[i];
  return sum;
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

}  // namespace ul::kernels::avx2
