#pragma once

// p-orthonormal basis pairs in reference l^p coordinates.
//
// A pair stores the synthesis vectors as the columns of T and the coordinate
// functionals as the rows of F. For p = 2 the synthesis matrix of a valid
// pair is unitary; for p != 2 the isometries of finite l^p are exactly the
// generalized permutation matrices, so T must be one.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ul/errors.hpp"
#include "ul/spaces.hpp"

namespace ul {

inline constexpr double kStructuralTolerance = 1e-10;

class BasisPair {
 public:
  // Checks shapes only; use validate() for the basis axioms.
  BasisPair(Exponent p, DenseMatrix synthesis, DenseMatrix analysis);

  std::size_t n() const noexcept { return t_.rows(); }
  const Exponent& exponent() const noexcept { return p_; }
  double p() const noexcept { return p_.p(); }
  Field field() const noexcept { return join(t_.field(), f_.field()); }

  // T: column j is the j-th basis vector.
  const DenseMatrix& synthesis() const noexcept { return t_; }
  // F: row j is the j-th coordinate functional.
  const DenseMatrix& analysis() const noexcept { return f_; }

  DenseVector vector(std::size_t j) const { return t_.column(j); }
  DenseVector functional(std::size_t j) const { return f_.row_vector(j); }

  // (f_1(x), ..., f_n(x))
  DenseVector coefficients(const DenseVector& x) const { return f_ * x; }
  // sum_j a_j tau_j
  DenseVector synthesize(const DenseVector& a) const { return t_ * a; }

  std::uint64_t digest() const;

  friend bool operator==(const BasisPair&, const BasisPair&) = default;

 private:
  Exponent p_;
  DenseMatrix t_;
  DenseMatrix f_;
};

enum class Clause { biorthogonality, unit_vector_norm, unit_functional_norm, synthesis_isometry };
std::string_view clause_name(Clause c);

struct ValidationReport {
  bool valid = true;
  // Every violated clause, synthesis_isometry first when present.
  std::vector<Clause> violations;
  // Unit-p-norm coefficient vector a with the largest |‖Ta‖_p - ‖a‖_p| among
  // the tested vectors. Present iff !valid.
  std::optional<DenseVector> witness;
  double witness_mismatch = 0.0;

  double biorthogonality_error = 0.0;
  double vector_norm_error = 0.0;
  double functional_norm_error = 0.0;
  double isometry_error = 0.0;

  std::optional<Clause> violated_clause() const {
    if (violations.empty()) return std::nullopt;
    return violations.front();
  }
};

ValidationReport validate(const BasisPair& pair, std::size_t trials = 64, std::uint64_t seed = 0);

// Throws PreconditionError naming the first violated clause.
void require_valid(const BasisPair& pair, std::string_view what);

// Worst norm distortion |‖Va‖_p - ‖a‖_p| over canonical, all-ones, two-spike
// and `trials` seeded random unit vectors.
struct Distortion {
  DenseVector witness;
  double mismatch = 0.0;
};
Distortion worst_distortion(const DenseMatrix& v, double p, std::size_t trials, std::uint64_t seed);

bool is_unitary(const DenseMatrix& v, double tol = kStructuralTolerance);
bool is_generalized_permutation(const DenseMatrix& v, double tol = kStructuralTolerance);
// Unitary for p = 2, generalized permutation otherwise.
bool is_lp_isometry(const DenseMatrix& v, const Exponent& p, double tol = kStructuralTolerance);

class NotAnIsometry : public DomainError {
 public:
  NotAnIsometry(const std::string& what, DenseVector witness, double mismatch)
      : DomainError(what), witness_(std::move(witness)), mismatch_(mismatch) {}
  const DenseVector& witness() const noexcept { return witness_; }
  double mismatch() const noexcept { return mismatch_; }

 private:
  DenseVector witness_;
  double mismatch_;
};

BasisPair canonical_basis(std::size_t n, Exponent p);

// Unitary DFT: T[j][k] = n^(-1/2) exp(2 pi i jk / n), F = T^*. Only for p = 2.
BasisPair dft_basis(std::size_t n, Exponent p = Exponent(2.0));

// p = 2: seeded random unitary (orthogonal for the real field) with column j
// phase-fixed to a nonnegative real first entry. p != 2: random permutation
// times a random unimodular diagonal.
BasisPair random_basis(std::size_t n, Exponent p, std::uint64_t seed, Field field = Field::complex);

// Seeded random isometry of l^p(n) of the same two kinds as random_basis.
DenseMatrix random_isometry(std::size_t n, Exponent p, std::uint64_t seed, Field field = Field::complex);

// V with V tau_j = omega_j, i.e. V = T_B F_A.
DenseMatrix isometry_between(const BasisPair& from, const BasisPair& to);

// (f_j V^-1, V tau_j). Throws NotAnIsometry when V is not an l^p isometry.
BasisPair from_isometry(const DenseMatrix& v, const BasisPair& pair);

// Seeded Gaussian direction scaled to unit p-norm.
DenseVector random_unit_vector(std::size_t n, const Exponent& p, Field field, std::uint64_t seed);

// Matrix of x -> sum_j f_j(x) delta_j, i.e. F.
DenseMatrix embed_to_lp(const BasisPair& pair);

}  // namespace ul
