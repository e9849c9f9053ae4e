#pragma once

// Inner-loop arithmetic on interleaved complex<double> and double arrays.
//
// Every kernel has a scalar reference implementation. On x86-64 an AVX2+FMA
// variant is compiled separately and selected at runtime when the CPU
// supports it; UL_SIMD=scalar forces the reference path. The variants agree
// bit-for-bit on abs2/abs_max and to rounding on the reductions.

#include <complex>
#include <cstddef>
#include <string_view>

namespace ul::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
  // sum_i conj(a[i]) * b[i]
  cplx (*dotc)(const cplx* a, const cplx* b, std::size_t n);
  // out[i] = re^2 + im^2
  void (*abs2)(const cplx* x, double* out, std::size_t n);
  // max_i |x[i]|, 0 for n == 0
  double (*abs_max)(const cplx* x, std::size_t n);
  // sum_i |x[i]|^p
  double (*abs_pow_sum)(const cplx* x, std::size_t n, double p);
  // sum_i w[i] * mask[i]
  double (*masked_sum)(const double* w, const double* mask, std::size_t n);
  // y = A x with A row-major rows x cols
  void (*matvec)(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);
};

const KernelTable& scalar_table();

// nullptr when the variant is not compiled in or the CPU lacks the features.
const KernelTable* avx2_table();

// Table chosen once per process.
const KernelTable& active();

std::string_view isa_name(Isa isa);

}  // namespace ul::kernels
