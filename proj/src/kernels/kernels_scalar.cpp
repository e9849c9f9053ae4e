#include <cmath>

#include "kernels_impl.hpp"

namespace ul::kernels::scalar {

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void abs2(const cplx* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re2 = x[i].real() * x[i].real();
    const double im2 = x[i].imag() * x[i].imag();
    out[i] = re2 + im2;
  }
}

double abs_max(const cplx* x, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re2 = x[i].real() * x[i].real();
    const double im2 = x[i].imag() * x[i].imag();
    const double m = re2 + im2;
    if (m > best) best = m;
  }
  return std::sqrt(best);
}

double abs_pow_sum(const cplx* x, std::size_t n, double p) {
  double sum = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) sum += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return sum;
  }
  const double half = 0.5 * p;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    if (m > 0.0) sum += std::pow(m, half);
  }
  return sum;
}

double masked_sum(const double* w, const double* mask, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += w[i] * mask[i];
  return sum;
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

}  // namespace ul::kernels::scalar
