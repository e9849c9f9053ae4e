#pragma once

#include "ul/kernels.hpp"

namespace ul::kernels {

namespace scalar {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
void abs2(const cplx* x, double* out, std::size_t n);
double abs_max(const cplx* x, std::size_t n);
double abs_pow_sum(const cplx* x, std::size_t n, double p);
double masked_sum(const double* w, const double* mask, std::size_t n);
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);
}  // namespace scalar

#if defined(UL_HAVE_AVX2)
namespace avx2 {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
void abs2(const cplx* x, double* out, std::size_t n);
double abs_max(const cplx* x, std::size_t n);
double abs_pow_sum(const cplx* x, std::size_t n, double p);
double masked_sum(const double* w, const double* mask, std::size_t n);
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);
}  // namespace avx2
#endif

}  // namespace ul::kernels
