#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ul/kernels.hpp"

namespace {

using ul::kernels::cplx;
using ul::kernels::KernelTable;

std::vector<cplx> random_data(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::vector<cplx> v(n);
  for (auto& z : v) z = cplx(scale * normal(gen), scale * normal(gen));
  return v;
}

std::vector<double> random_mask(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> m(n);
  for (auto& v : m) v = static_cast<double>(gen() & 1U);
  return m;
}

class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    simd_ = ul::kernels::avx2_table();
    if (simd_ == nullptr) GTEST_SKIP() << "AVX2+FMA not available on this CPU";
  }
  const KernelTable& ref() const { return ul::kernels::scalar_table(); }
  const KernelTable* simd_ = nullptr;
};

// Relative agreement of two reductions of n products.
void expect_close(cplx a, cplx b, double magnitude) {
  const double tol = 1e-14 * std::max(1.0, magnitude);
  EXPECT_NEAR(a.real(), b.real(), tol);
  EXPECT_NEAR(a.imag(), b.imag(), tol);
}

TEST_P(KernelEquivalence, DotAndDotc) {
  const std::size_t n = GetParam();
  const auto a = random_data(n, 11 + n);
  const auto b = random_data(n, 97 + n);
  double mag = 0.0;
  for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i]) * std::abs(b[i]);
  expect_close(ref().dot(a.data(), b.data(), n), simd_->dot(a.data(), b.data(), n), mag);
  expect_close(ref().dotc(a.data(), b.data(), n), simd_->dotc(a.data(), b.data(), n), mag);
}

TEST_P(KernelEquivalence, Abs2IsBitExact) {
  const std::size_t n = GetParam();
  const auto x = random_data(n, 5 + n, 1e3);
  std::vector<double> r(n), s(n);
  ref().abs2(x.data(), r.data(), n);
  simd_->abs2(x.data(), s.data(), n);
  EXPECT_EQ(r, s);
}

TEST_P(KernelEquivalence, AbsMaxIsBitExact) {
  const std::size_t n = GetParam();
  const auto x = random_data(n, 23 + n);
  EXPECT_EQ(ref().abs_max(x.data(), n), simd_->abs_max(x.data(), n));
}

TEST_P(KernelEquivalence, AbsPowSum) {
  const std::size_t n = GetParam();
  const auto x = random_data(n, 41 + n);
  for (double p : {1.5, 2.0, 3.0, 7.25}) {
    const double r = ref().abs_pow_sum(x.data(), n, p);
    EXPECT_NEAR(r, simd_->abs_pow_sum(x.data(), n, p), 1e-13 * std::max(1.0, r)) << "p=" << p;
  }
}

TEST_P(KernelEquivalence, MaskedSum) {
  const std::size_t n = GetParam();
  std::vector<double> w(n);
  std::mt19937_64 gen(3 + n);
  for (auto& v : w) v = std::ldexp(static_cast<double>(gen() >> 11), -53);
  const auto mask = random_mask(n, 7 + n);
  const double r = ref().masked_sum(w.data(), mask.data(), n);
  EXPECT_NEAR(r, simd_->masked_sum(w.data(), mask.data(), n), 1e-14 * std::max(1.0, r));
}

TEST_P(KernelEquivalence, Matvec) {
  const std::size_t n = GetParam();
  const std::size_t rows = 3;
  const auto a = random_data(rows * n, 71 + n);
  const auto x = random_data(n, 73 + n);
  std::vector<cplx> r(rows), s(rows);
  ref().matvec(a.data(), x.data(), r.data(), rows, n);
  simd_->matvec(a.data(), x.data(), s.data(), rows, n);
  for (std::size_t i = 0; i < rows; ++i) expect_close(r[i], s[i], 4.0 * static_cast<double>(n));
}

INSTANTIATE_TEST_SUITE_P(Lengths, KernelEquivalence,
                         ::testing::Values(0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 100, 257));

TEST(KernelScalar, ReferenceValues) {
  const auto& k = ul::kernels::scalar_table();
  const cplx a[] = {{1, 2}, {3, -1}};
  const cplx b[] = {{0, 1}, {2, 2}};
  // (1+2i)i + (3-i)(2+2i) = (-2+i) + (8+4i)
  EXPECT_EQ(k.dot(a, b, 2), cplx(6, 5));
  // (1-2i)i + (3+i)(2+2i) = (2+i) + (4+8i)
  EXPECT_EQ(k.dotc(a, b, 2), cplx(6, 9));
  EXPECT_EQ(k.abs_max(a, 2), std::sqrt(10.0));
  EXPECT_EQ(k.abs_max(a, 0), 0.0);
  EXPECT_DOUBLE_EQ(k.abs_pow_sum(a, 2, 2.0), 15.0);
  const double w[] = {1.0, 2.0, 4.0};
  const double m[] = {1.0, 0.0, 1.0};
  EXPECT_EQ(k.masked_sum(w, m, 3), 5.0);
}

TEST(KernelDispatch, ActiveTableIsOneOfTheVariants) {
  const auto& active = ul::kernels::active();
  const auto* simd = ul::kernels::avx2_table();
  EXPECT_TRUE(&active == &ul::kernels::scalar_table() || &active == simd);
  EXPECT_FALSE(ul::kernels::isa_name(active.isa).empty());
}

}  // namespace
