#include "ul/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "eigen_bridge.hpp"
#include "ul/digest.hpp"
#include "ul/kernels.hpp"

namespace ul {
namespace {

std::vector<double> complement_mask(const std::vector<std::size_t>& s, std::size_t n) {
  std::vector<double> mask(n, 1.0);
  for (std::size_t i : s) mask[i] = 0.0;
  return mask;
}

std::vector<double> pth_powers(const DenseVector& c, double p) {
  std::vector<double> w(c.dim());
  kernels::active().abs2(c.data(), w.data(), c.dim());
  if (p != 2.0) {
    const double half = 0.5 * p;
    for (auto& v : w) v = v > 0.0 ? std::pow(v, half) : 0.0;
  }
  return w;
}

double masked_root(const std::vector<double>& w, const std::vector<double>& mask, double p) {
  return pth_root(kernels::active().masked_sum(w.data(), mask.data(), w.size()), p);
}

void require_same_space(const BasisPair& f, const BasisPair& g) {
  if (f.n() != g.n() || f.exponent() != g.exponent()) {
    throw StructuralError("both bases must have the same dimension and exponent");
  }
}

}  // namespace

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::fgj:
      return "fgj";
    case Variant::fgj_swapped:
      return "fgj_swapped";
    case Variant::fgj_local:
      return "fgj_local";
    case Variant::fgj_swapped_local:
      return "fgj_swapped_local";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  if (name == "fgj") return Variant::fgj;
  if (name == "fgj_swapped" || name == "swapped") return Variant::fgj_swapped;
  if (name == "fgj_local" || name == "local") return Variant::fgj_local;
  if (name == "fgj_swapped_local" || name == "swapped-local") return Variant::fgj_swapped_local;
  throw StructuralError("unknown variant '" + std::string(name) + "'");
}

bool is_swapped(Variant v) { return v == Variant::fgj_swapped || v == Variant::fgj_swapped_local; }
bool is_localized(Variant v) { return v == Variant::fgj_local || v == Variant::fgj_swapped_local; }

PreparedSubsets prepare(const SubsetPair& subsets) {
  return PreparedSubsets{subsets, complement_mask(subsets.m_set(), subsets.universe()),
                         complement_mask(subsets.n_set(), subsets.universe()), subsets.digest()};
}

CertificateEngine::CertificateEngine(BasisPair first, BasisPair second)
    : f_(std::move(first)),
      g_(std::move(second)),
      forward_((require_same_space(f_, g_), cross_gram(f_, g_))),
      swapped_(cross_gram(g_, f_)),
      mu_forward_(mu_global(forward_)),
      mu_swapped_(mu_global(swapped_)) {}

double CertificateEngine::mu(Variant v, const SubsetPair& subsets) const {
  if (subsets.universe() != n()) throw StructuralError("subset universe does not match the basis dimension");
  switch (v) {
    case Variant::fgj:
      return mu_forward_;
    case Variant::fgj_swapped:
      return mu_swapped_;
    case Variant::fgj_local:
      return mu_local(forward_, subsets);
    case Variant::fgj_swapped_local:
      return mu_local(swapped_, subsets);
  }
  return mu_forward_;
}

AdmissibilityReport CertificateEngine::admissibility(Variant v, const SubsetPair& subsets) const {
  const double m = mu(v, subsets);
  return is_swapped(v) ? admissibility_swapped(subsets, exponent(), m, is_localized(v))
                       : ul::admissibility(subsets, exponent(), m, is_localized(v));
}

Expansion CertificateEngine::expand(const DenseVector& x) const {
  if (x.dim() != n()) throw StructuralError("vector dimension does not match the basis dimension");
  Expansion e;
  e.norm = p_norm(x, exponent().p());
  e.weight_f = pth_powers(f_.coefficients(x), exponent().p());
  e.weight_g = pth_powers(g_.coefficients(x), exponent().p());
  e.digest = Digest().text("vector").complex_span(x.entries()).value();
  return e;
}

std::pair<double, double> CertificateEngine::tails(Variant v, const PreparedSubsets& subsets,
                                                  const Expansion& x) const {
  const double p = exponent().p();
  if (is_swapped(v)) {
    return {masked_root(x.weight_f, subsets.n_complement_mask, p), masked_root(x.weight_g, subsets.m_complement_mask, p)};
  }
  return {masked_root(x.weight_f, subsets.m_complement_mask, p), masked_root(x.weight_g, subsets.n_complement_mask, p)};
}

Certificate CertificateEngine::certify(Variant v, const PreparedSubsets& subsets, const AdmissibilityReport& adm,
                                       const Expansion& x) const {
  Certificate c;
  c.variant = v;
  c.subsets = subsets.subsets;
  c.lhs = x.norm;
  std::tie(c.tail_f, c.tail_g) = tails(v, subsets, x);
  c.admissibility = adm;
  if (adm.admissible) {
    c.constant = *adm.constant;
    c.rhs = *c.constant * (c.tail_f + c.tail_g);
    c.slack = *c.rhs - c.lhs;
  }
  c.pair_f = forward_.source_f;
  c.pair_g = forward_.source_g;
  std::uint64_t d = hash_combine(static_cast<std::uint64_t>(v), c.pair_f);
  d = hash_combine(d, c.pair_g);
  d = hash_combine(d, subsets.digest);
  c.input_digest = hash_combine(d, x.digest);
  return c;
}

Certificate CertificateEngine::certify(Variant v, const SubsetPair& subsets, const DenseVector& x) const {
  return certify(v, prepare(subsets), admissibility(v, subsets), expand(x));
}

Certificate verify(Variant v, const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                   const DenseVector& x) {
  return CertificateEngine(f, g).certify(v, subsets, x);
}

Certificate verify_fgj(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets, const DenseVector& x) {
  return verify(Variant::fgj, f, g, subsets, x);
}
Certificate verify_fgj_swapped(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                               const DenseVector& x) {
  return verify(Variant::fgj_swapped, f, g, subsets, x);
}
Certificate verify_fgj_local(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                             const DenseVector& x) {
  return verify(Variant::fgj_local, f, g, subsets, x);
}
Certificate verify_fgj_swapped_local(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                                     const DenseVector& x) {
  return verify(Variant::fgj_swapped_local, f, g, subsets, x);
}

InpRecord verify_inp(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets, const DenseVector& y) {
  require_same_space(f, g);
  if (y.dim() != f.n()) throw StructuralError("vector dimension does not match the basis dimension");
  if (subsets.universe() != f.n()) throw StructuralError("subset universe does not match the basis dimension");
  const double p = f.p();

  const DenseVector cf = f.coefficients(y);
  const double norm = p_norm(y, p);
  const double support_tol = 1e-10 * std::max(1.0, norm);
  for (std::size_t j : subsets.m_complement()) {
    if (std::abs(cf[j]) > support_tol) {
      throw PreconditionError("vector is not supported on M: coefficient " + std::to_string(j + 1) + " is " +
                              std::to_string(std::abs(cf[j])));
    }
  }

  InpRecord r;
  r.norm = norm;
  r.norm_bound = paper_norm_bound(mu_global(cross_gram(f, g)), subsets, f.exponent());
  if (!(r.norm_bound < 1.0)) {
    throw PreconditionError("tail inequality needs mu |N|^(1/p) |M|^(1/q) < 1, got " + std::to_string(r.norm_bound));
  }
  const auto weights = pth_powers(g.coefficients(y), p);
  r.lhs_tail = masked_root(weights, complement_mask(subsets.n_set(), f.n()), p);
  r.bound = (1.0 - r.norm_bound) * norm;
  r.holds = r.lhs_tail >= r.bound - kSlackTolerance;
  return r;
}

namespace {

// Both pairs already validated.
AnnihilationReport annihilate(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets) {
  if (subsets.universe() != f.n()) throw StructuralError("subset universe does not match the basis dimension");
  const std::size_t n = f.n();
  const auto& ms = subsets.m_set();
  const auto& ns = subsets.n_set();
  const std::size_t cols = ms.size() + ns.size();
  AnnihilationReport report;
  if (cols == 0) return report;

  Eigen::MatrixXcd stacked(n, cols);
  for (std::size_t c = 0; c < ms.size(); ++c) {
    for (std::size_t r = 0; r < n; ++r) stacked(r, c) = f.synthesis()(r, ms[c]);
  }
  for (std::size_t c = 0; c < ns.size(); ++c) {
    for (std::size_t r = 0; r < n; ++r) stacked(r, ms.size() + c) = -g.synthesis()(r, ns[c]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) >= kRankThreshold) ++rank;
  }
  report.intersection_dim = cols - rank;
  report.smallest_gap = cols > n ? 0.0 : sigma(sigma.size() - 1);

  if (report.intersection_dim > 0) {
    const Eigen::VectorXcd null = svd.matrixV().col(static_cast<Eigen::Index>(cols - 1));
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
    for (std::size_t c = 0; c < ms.size(); ++c) {
      for (std::size_t r = 0; r < n; ++r) x(r) += f.synthesis()(r, ms[c]) * null(c);
    }
    x /= x.norm();
    DenseVector w = detail::from_eigen(x, join(f.field(), g.field()));
    const DenseVector cf = f.coefficients(w);
    const DenseVector cg = g.coefficients(w);
    for (std::size_t j : subsets.m_complement()) report.residual_f = std::max(report.residual_f, std::abs(cf[j]));
    for (std::size_t k : subsets.n_complement()) report.residual_g = std::max(report.residual_g, std::abs(cg[k]));
    report.witness = std::move(w);
  }
  return report;
}

}  // namespace

AnnihilationReport annihilation_test(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets) {
  require_same_space(f, g);
  require_valid(f, "first pair");
  require_valid(g, "second pair");
  return annihilate(f, g, subsets);
}

AnnihilationReport CertificateEngine::annihilation(const SubsetPair& subsets) const {
  return annihilate(f_, g_, subsets);
}

HilbertReduction hilbert_reduction_check(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                                         const DenseVector& x) {
  require_same_space(f, g);
  if (!f.exponent().hilbert()) throw DomainError("the inner-product reduction needs p = 2");
  if (!is_unitary(f.synthesis()) || !is_unitary(g.synthesis())) {
    throw DomainError("the inner-product reduction needs orthonormal bases");
  }
  HilbertReduction out;
  const Certificate functional = verify_fgj(f, g, subsets, x);
  out.fgj_rhs = functional.rhs;

  // Inner-product route, deliberately independent of the functionals.
  const std::size_t n = f.n();
  const DenseMatrix& tau = f.synthesis();
  const DenseMatrix& omega = g.synthesis();
  auto inner = [n](const DenseMatrix& cols_a, std::size_t a, const DenseMatrix& cols_b, std::size_t b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += cols_a(i, a) * std::conj(cols_b(i, b));
    return s;
  };
  auto inner_x = [&](const DenseMatrix& basis, std::size_t j) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * std::conj(basis(i, j));
    return s;
  };
  double mu = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) mu = std::max(mu, std::abs(inner(tau, j, omega, k)));
  }
  double tail_tau = 0.0;
  for (std::size_t j : subsets.m_complement()) tail_tau += std::norm(inner_x(tau, j));
  double tail_omega = 0.0;
  for (std::size_t k : subsets.n_complement()) tail_omega += std::norm(inner_x(omega, k));
  const double sizes = static_cast<double>(subsets.m_size()) * static_cast<double>(subsets.n_size());
  const double product = std::sqrt(sizes) * mu;
  if (product < 1.0 - kAdmissibilityTieBand) {
    out.gj_rhs = (1.0 + 1.0 / (1.0 - product)) * (std::sqrt(tail_tau) + std::sqrt(tail_omega));
  }

  if (out.fgj_rhs.has_value() != out.gj_rhs.has_value()) {
    out.equal = false;
  } else if (!out.fgj_rhs) {
    out.equal = true;
  } else {
    out.max_difference = std::abs(*out.fgj_rhs - *out.gj_rhs);
    out.equal = out.max_difference <= kReductionTolerance * std::max(1.0, std::abs(*out.gj_rhs));
  }
  return out;
}

}  // namespace ul
