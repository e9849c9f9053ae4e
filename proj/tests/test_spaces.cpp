#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "ul/errors.hpp"
#include "ul/spaces.hpp"

namespace {

using ul::Complex;
using ul::DenseMatrix;
using ul::DenseVector;
using ul::Exponent;
using ul::Field;

TEST(ConjugateExponent, KnownValues) {
  EXPECT_EQ(ul::conjugate_exponent(2.0), 2.0);
  EXPECT_NEAR(ul::conjugate_exponent(4.0), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(ul::conjugate_exponent(1.5), 3.0, 1e-15);
}

TEST(ConjugateExponent, RejectsEndpointsAndJunk) {
  for (double p : {1.0, 0.5, -2.0, double(INFINITY), double(NAN)}) {
    EXPECT_THROW(ul::conjugate_exponent(p), ul::DomainError) << p;
    EXPECT_THROW(Exponent{p}, ul::DomainError) << p;
  }
}

TEST(ConjugateExponent, ReciprocalsSumToOne) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(1.0001, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const Exponent e(u(gen));
    EXPECT_NEAR(1.0 / e.p() + 1.0 / e.q(), 1.0, 1e-14);
  }
}

TEST(PNorm, KnownValues) {
  EXPECT_DOUBLE_EQ(ul::p_norm(DenseVector::real({3, 4}), 2.0), 5.0);
  EXPECT_EQ(ul::p_norm(DenseVector(5), 3.0), 0.0);
  // 4^(1/4) = sqrt(2)
  EXPECT_NEAR(ul::p_norm(DenseVector::real({1, 1, 1, 1}), 4.0), 1.4142135623730951, 1e-15);
  EXPECT_DOUBLE_EQ(ul::p_norm(DenseVector::real({1, -2, 3}), 1.0), 6.0);
}

TEST(PNorm, MatchesTermByTermOracle) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> normal;
  for (double p : {1.1, 1.5, 2.0, 3.0, 4.5, 12.0}) {
    for (std::size_t n : {1, 2, 5, 16, 33}) {
      oracle::Vec x(n);
      for (auto& z : x) z = Complex(normal(gen), normal(gen));
      const double expected = oracle::p_norm(x, p);
      EXPECT_NEAR(ul::p_norm(support::from_oracle(x), p), expected, 1e-13 * expected) << p << " " << n;
    }
  }
}

TEST(PNorm, ExtremeMagnitudesDoNotOverflow) {
  const auto big = DenseVector::real({1e200, 1e200});
  EXPECT_NEAR(ul::p_norm(big, 3.0) / 1e200, std::cbrt(2.0), 1e-14);
  const auto tiny = DenseVector::real({1e-200, 1e-200});
  EXPECT_NEAR(ul::p_norm(tiny, 3.0) / 1e-200, std::cbrt(2.0), 1e-14);
}

TEST(PNorm, RejectsEmptyAndBadExponent) {
  EXPECT_THROW(ul::p_norm(DenseVector(), 2.0), ul::DomainError);
  EXPECT_THROW(ul::p_norm(DenseVector::real({1}), 0.5), ul::DomainError);
  EXPECT_THROW(ul::p_norm(DenseVector::real({1}), NAN), ul::DomainError);
}

TEST(FunctionalNorm, KnownValues) {
  EXPECT_DOUBLE_EQ(ul::functional_norm(DenseVector::basis(4, 2), 3.0), 1.0);
  EXPECT_DOUBLE_EQ(ul::functional_norm(DenseVector::real({1, 1}), 2.0), std::sqrt(2.0));
  // q = 3/2 for p = 3: 2^(2/3)
  EXPECT_NEAR(ul::functional_norm(DenseVector::real({1, 1}), 3.0), 1.5874010519681994, 1e-15);
}

TEST(FunctionalNorm, AgreesWithSampledSupremum) {
  // sup over the unit 3-sphere of |x1 + x2| approaches 2^(2/3) from below.
  const double sampled = oracle::sampled_dual_norm({1.0, 1.0}, 3.0, 200000, 5);
  const double exact = ul::functional_norm(DenseVector::real({1, 1}), 3.0);
  EXPECT_LE(sampled, exact + 1e-12);
  EXPECT_GT(sampled, exact - 1e-2);
}

TEST(DenseVector, FieldTag) {
  DenseVector v(3);
  EXPECT_EQ(v.field(), Field::real);
  v.set(1, {2.0, 0.0});
  EXPECT_EQ(v.field(), Field::real);
  v.set(2, {0.0, 1.0});
  EXPECT_EQ(v.field(), Field::complex);
  EXPECT_THROW(DenseVector({Complex(0, 1)}, Field::real), ul::DomainError);
}

TEST(DenseVector, Arithmetic) {
  auto a = DenseVector::real({1, 2});
  const auto b = DenseVector::real({3, 5});
  EXPECT_EQ(a + b, DenseVector::real({4, 7}));
  EXPECT_EQ(b - a, DenseVector::real({2, 3}));
  EXPECT_EQ(Complex(2, 0) * a, DenseVector::real({2, 4}));
  EXPECT_THROW(a += DenseVector::real({1}), ul::StructuralError);
}

TEST(DenseMatrix, ShapeChecks) {
  EXPECT_THROW(DenseMatrix(2, 2, std::vector<Complex>(3), Field::real), ul::StructuralError);
  const auto a = DenseMatrix::real({{1, 2, 3}, {4, 5, 6}});
  EXPECT_THROW(a * a, ul::StructuralError);
  EXPECT_THROW(a * DenseVector::real({1, 2}), ul::StructuralError);
}

TEST(DenseMatrix, ProductsAgreeWithOracle) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal;
  oracle::Mat a(4, oracle::Vec(5)), b(5, oracle::Vec(3));
  for (auto& r : a)
    for (auto& z : r) z = {normal(gen), normal(gen)};
  for (auto& r : b)
    for (auto& z : r) z = {normal(gen), normal(gen)};
  const auto got = support::from_oracle(a) * support::from_oracle(b);
  const auto want = support::from_oracle(oracle::multiply(a, b));
  EXPECT_LT(ul::max_abs_diff(got, want), 1e-13);

  const oracle::Vec x = {{1, 2}, {0, -1}, {3, 0}, {0.5, 0.5}, {-2, 1}};
  const auto y = support::from_oracle(a) * support::from_oracle(x);
  EXPECT_LT(ul::max_abs_diff(y, support::from_oracle(oracle::apply(a, x))), 1e-13);
}

TEST(DenseMatrix, AdjointTransposeIdentity) {
  const auto a = DenseMatrix::complex({{{1, 1}, {2, 0}}, {{0, -3}, {4, 2}}});
  const auto h = a.adjoint();
  EXPECT_EQ(h(0, 1), Complex(0, 3));
  EXPECT_EQ(h(1, 0), Complex(2, 0));
  EXPECT_EQ(a.transpose()(0, 1), Complex(0, -3));
  EXPECT_EQ(DenseMatrix::identity(2) * a, a);
  EXPECT_DOUBLE_EQ(a.max_abs(), std::sqrt(20.0));
}

TEST(DenseMatrix, RealProductsStayReal) {
  const auto a = DenseMatrix::real({{1, 2}, {3, 4}});
  EXPECT_EQ((a * a).field(), Field::real);
  EXPECT_EQ((a * DenseVector::real({1, 1})).field(), Field::real);
}

TEST(Field, Names) {
  EXPECT_EQ(ul::parse_field("real"), Field::real);
  EXPECT_EQ(ul::parse_field("complex"), Field::complex);
  EXPECT_THROW(ul::parse_field("quaternion"), ul::StructuralError);
  EXPECT_EQ(ul::join(Field::real, Field::complex), Field::complex);
}

}  // namespace
