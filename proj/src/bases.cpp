#include "ul/bases.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eigen_bridge.hpp"
#include "ul/digest.hpp"
#include "ul/rng.hpp"

namespace ul {
namespace {

constexpr double kPi = Rng::kPi;

DenseVector unit_vector(DenseVector v, double p) {
  const double norm = p_norm(v, p);
  if (norm > 0.0) v *= Complex(1.0 / norm, 0.0);
  return v;
}

DenseVector random_vector(std::size_t n, Field field, Rng& rng) {
  DenseVector v(n, field);
  for (std::size_t i = 0; i < n; ++i) {
    v.set(i, field == Field::complex ? rng.complex_normal() : Complex(rng.normal(), 0.0));
  }
  return v;
}

double distortion_of(const DenseMatrix& v, const DenseVector& a, double p) {
  return std::abs(p_norm(v * a, p) - p_norm(a, p));
}

}  // namespace

BasisPair::BasisPair(Exponent p, DenseMatrix synthesis, DenseMatrix analysis)
    : p_(p), t_(std::move(synthesis)), f_(std::move(analysis)) {
  const Field field = join(t_.field(), f_.field());
  t_ = t_.promoted(field);
  f_ = f_.promoted(field);
  if (!t_.square() || !f_.square() || t_.rows() != f_.rows() || t_.rows() == 0) {
    throw StructuralError("basis pair needs two n x n matrices with n >= 1, got T " + std::to_string(t_.rows()) +
                          "x" + std::to_string(t_.cols()) + " and F " + std::to_string(f_.rows()) + "x" +
                          std::to_string(f_.cols()));
  }
}

std::uint64_t BasisPair::digest() const {
  Digest d;
  d.text("basis-pair").f64(p()).u64(n()).u64(field() == Field::real ? 0 : 1);
  d.complex_span(t_.entries()).complex_span(f_.entries());
  return d.value();
}

std::string_view clause_name(Clause c) {
  switch (c) {
    case Clause::biorthogonality:
      return "biorthogonality";
    case Clause::unit_vector_norm:
      return "unit_vector_norm";
    case Clause::unit_functional_norm:
      return "unit_functional_norm";
    case Clause::synthesis_isometry:
      return "synthesis_isometry";
  }
  return "unknown";
}

bool is_unitary(const DenseMatrix& v, double tol) {
  if (!v.square()) return false;
  return max_abs_diff(v.adjoint() * v, DenseMatrix::identity(v.rows())) <= tol;
}

bool is_generalized_permutation(const DenseMatrix& v, double tol) {
  if (!v.square()) return false;
  const std::size_t n = v.rows();
  std::vector<int> per_col(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    int per_row = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const double m = std::abs(v(r, c));
      if (m <= tol) continue;
      if (std::abs(m - 1.0) > tol) return false;
      ++per_row;
      ++per_col[c];
    }
    if (per_row != 1) return false;
  }
  return std::all_of(per_col.begin(), per_col.end(), [](int k) { return k == 1; });
}

bool is_lp_isometry(const DenseMatrix& v, const Exponent& p, double tol) {
  return p.hilbert() ? is_unitary(v, tol) : is_generalized_permutation(v, tol);
}

Distortion worst_distortion(const DenseMatrix& v, double p, std::size_t trials, std::uint64_t seed) {
  const std::size_t n = v.cols();
  Distortion worst{DenseVector::basis(n, 0), -1.0};
  auto consider = [&](DenseVector a) {
    a = unit_vector(std::move(a), p);
    const double d = distortion_of(v, a, p);
    if (d > worst.mismatch) worst = {std::move(a), d};
  };

  for (std::size_t j = 0; j < n; ++j) consider(DenseVector::basis(n, j));
  consider(DenseVector::real(std::vector<double>(n, 1.0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      DenseVector plus(n);
      plus.set(i, 1.0);
      plus.set(j, 1.0);
      consider(plus);
      DenseVector minus = plus;
      minus.set(j, -1.0);
      consider(minus);
      if (v.field() == Field::complex) {
        DenseVector rotated = plus;
        rotated.set(j, Complex(0.0, 1.0));
        consider(rotated);
      }
    }
  }
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) consider(random_vector(n, v.field(), rng));
  worst.mismatch = std::max(worst.mismatch, 0.0);
  return worst;
}

ValidationReport validate(const BasisPair& pair, std::size_t trials, std::uint64_t seed) {
  const std::size_t n = pair.n();
  const double p = pair.p();
  const double q = pair.exponent().q();
  const DenseMatrix& t = pair.synthesis();
  const DenseMatrix& f = pair.analysis();

  ValidationReport report;
  report.biorthogonality_error = max_abs_diff(f * t, DenseMatrix::identity(n));
  for (std::size_t j = 0; j < n; ++j) {
    report.vector_norm_error = std::max(report.vector_norm_error, std::abs(p_norm(t.column(j), p) - 1.0));
    report.functional_norm_error = std::max(report.functional_norm_error, std::abs(p_norm(f.row(j), q) - 1.0));
  }

  const bool structural = is_lp_isometry(t, pair.exponent());
  if (pair.exponent().hilbert()) {
    report.isometry_error = max_abs_diff(t.adjoint() * t, DenseMatrix::identity(n));
  }
  Distortion empirical = worst_distortion(t, p, trials, seed);
  report.isometry_error = std::max(report.isometry_error, empirical.mismatch);

  if (!structural || empirical.mismatch > kStructuralTolerance) report.violations.push_back(Clause::synthesis_isometry);
  if (report.biorthogonality_error > kStructuralTolerance) report.violations.push_back(Clause::biorthogonality);
  if (report.vector_norm_error > kStructuralTolerance) report.violations.push_back(Clause::unit_vector_norm);
  if (report.functional_norm_error > kStructuralTolerance) report.violations.push_back(Clause::unit_functional_norm);

  report.valid = report.violations.empty();
  if (!report.valid) {
    report.witness = std::move(empirical.witness);
    report.witness_mismatch = empirical.mismatch;
  }
  return report;
}

void require_valid(const BasisPair& pair, std::string_view what) {
  // The structural clauses decide validity; skip the random trials here.
  const ValidationReport r = validate(pair, 0, 0);
  if (!r.valid) {
    throw PreconditionError(std::string(what) + " is not a p-orthonormal basis: " +
                            std::string(clause_name(*r.violated_clause())) + " fails");
  }
}

BasisPair canonical_basis(std::size_t n, Exponent p) {
  if (n == 0) throw DomainError("canonical basis needs n >= 1");
  return BasisPair(p, DenseMatrix::identity(n), DenseMatrix::identity(n));
}

BasisPair dft_basis(std::size_t n, Exponent p) {
  if (n == 0) throw DomainError("DFT basis needs n >= 1");
  if (!p.hilbert()) {
    throw DomainError("the DFT matrix is an l^p isometry only for p = 2 (got p = " + std::to_string(p.p()) + ")");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> e(n * n);
  bool any_imag = false;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t m = (j * k) % n;
      Complex w;
      // Quarter turns are exact so that constant-modulus grams stay exact.
      if ((4 * m) % n == 0) {
        static constexpr Complex kQuarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        w = kQuarter[(4 * m) / n];
      } else {
        const double angle = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
        w = Complex(std::cos(angle), std::sin(angle));
      }
      e[j * n + k] = scale * w;
      any_imag = any_imag || w.imag() != 0.0;
    }
  }
  DenseMatrix t(n, n, std::move(e), any_imag ? Field::complex : Field::real);
  DenseMatrix f = t.adjoint();
  return BasisPair(p, std::move(t), std::move(f));
}

DenseMatrix random_isometry(std::size_t n, Exponent p, std::uint64_t seed, Field field) {
  if (n == 0) throw DomainError("random isometry needs n >= 1");
  Rng rng(seed);
  if (p.hilbert()) {
    Eigen::MatrixXcd g(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        g(r, c) = field == Field::complex ? rng.complex_normal() : Complex(rng.normal(), 0.0);
      }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
      const Complex lead = q(0, c);
      const double m = std::abs(lead);
      if (m > 0.0) q.col(c) *= std::conj(lead) / m;
    }
    return detail::from_eigen(q, field);
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  DenseMatrix v(n, n, field);
  for (std::size_t c = 0; c < n; ++c) {
    Complex d;
    if (field == Field::complex) {
      const double theta = rng.phase();
      d = Complex(std::cos(theta), std::sin(theta));
    } else {
      d = (rng.next() & 1) ? 1.0 : -1.0;
    }
    v.set(perm[c], c, d);
  }
  return v;
}

BasisPair random_basis(std::size_t n, Exponent p, std::uint64_t seed, Field field) {
  DenseMatrix t = random_isometry(n, p, seed, field);
  DenseMatrix f = t.adjoint();
  return BasisPair(p, std::move(t), std::move(f));
}

DenseMatrix isometry_between(const BasisPair& from, const BasisPair& to) {
  if (from.n() != to.n() || from.exponent() != to.exponent()) {
    throw StructuralError("isometry_between needs pairs with equal n and p");
  }
  require_valid(from, "source pair");
  require_valid(to, "target pair");
  return to.synthesis() * from.analysis();
}

BasisPair from_isometry(const DenseMatrix& v, const BasisPair& pair) {
  if (v.rows() != pair.n() || v.cols() != pair.n()) {
    throw StructuralError("isometry shape does not match the basis dimension");
  }
  if (!is_lp_isometry(v, pair.exponent())) {
    Distortion d = worst_distortion(v, pair.p(), 64, 0);
    throw NotAnIsometry("matrix is not an isometry of l^p for p = " + std::to_string(pair.p()) +
                            " (norm distortion " + std::to_string(d.mismatch) + ")",
                        std::move(d.witness), d.mismatch);
  }
  // V^-1 = V^* for both unitary and unimodular generalized permutation matrices.
  return BasisPair(pair.exponent(), v * pair.synthesis(), pair.analysis() * v.adjoint());
}

DenseVector random_unit_vector(std::size_t n, const Exponent& p, Field field, std::uint64_t seed) {
  if (n == 0) throw DomainError("dimension must be positive");
  Rng rng(seed);
  return unit_vector(random_vector(n, field, rng), p.p());
}

DenseMatrix embed_to_lp(const BasisPair& pair) {
  require_valid(pair, "pair");
  return pair.analysis();
}

}  // namespace ul
