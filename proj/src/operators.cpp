#include "ul/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "eigen_bridge.hpp"
#include "ul/kernels.hpp"
#include "ul/parallel.hpp"
#include "ul/rng.hpp"

namespace ul {
namespace {

void check_indices(std::span<const std::size_t> s, std::size_t n) {
  for (std::size_t i : s) {
    if (i >= n) {
      throw StructuralError("index " + std::to_string(i + 1) + " outside {1, ..., " + std::to_string(n) + "}");
    }
  }
}

DenseVector masked_coefficients(const BasisPair& pair, std::span<const std::size_t> s, const DenseVector& x) {
  if (x.dim() != pair.n()) throw StructuralError("vector dimension does not match the basis");
  check_indices(s, pair.n());
  const DenseVector c = pair.coefficients(x);
  DenseVector kept(pair.n(), c.field());
  for (std::size_t j : s) kept.set(j, c[j]);
  return kept;
}

using Vec = std::vector<Complex>;

double ratio(const DenseMatrix& a, const Vec& x, double p, Vec& scratch) {
  scratch.resize(a.rows());
  kernels::active().matvec(a.data(), x.data(), scratch.data(), a.rows(), a.cols());
  const double den = p_norm(x, p);
  return den > 0.0 ? p_norm(scratch, p) / den : 0.0;
}

// v_i -> |v_i|^(r-1) v_i / |v_i|
Vec dual_map(const Vec& v, double r) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > 0.0) out[i] = (r == 2.0 ? 1.0 : std::pow(m, r - 1.0)) * (v[i] / m);
  }
  return out;
}

void normalize(Vec& x, double p) {
  const double norm = p_norm(x, p);
  if (norm > 0.0) {
    for (auto& z : x) z /= norm;
  }
}

Vec random_start(std::size_t n, Field field, Rng& rng) {
  Vec x(n);
  for (auto& z : x) z = field == Field::complex ? rng.complex_normal() : Complex(rng.normal(), 0.0);
  return x;
}

struct Trial {
  double value = -1.0;
  Vec x;
  bool converged = false;
};

Trial power_iterate(const DenseMatrix& a, const DenseMatrix& ah, Vec x, const Exponent& p, const NormBudget& budget) {
  Vec y;
  Vec z(a.cols());
  normalize(x, p.p());
  Trial best{ratio(a, x, p.p(), y), x, false};
  for (std::size_t it = 0; it < budget.max_iterations; ++it) {
    // y = A x was left in scratch by ratio()
    const Vec u = dual_map(y, p.p());
    kernels::active().matvec(ah.data(), u.data(), z.data(), ah.rows(), ah.cols());
    Vec next = dual_map(z, p.q());
    normalize(next, p.p());
    if (p_norm(next, p.p()) == 0.0) {
      best.converged = true;
      break;
    }
    const double value = ratio(a, next, p.p(), y);
    const double previous = best.value;
    if (value > best.value) best = Trial{value, next, false};
    if (value <= previous || (value - previous) <= budget.tolerance * std::max(previous, 1e-300)) {
      best.converged = true;
      break;
    }
  }
  return best;
}

DenseVector to_vector(Vec x, Field field) {
  if (field == Field::real) {
    for (auto& z : x) z = Complex(z.real(), 0.0);
  }
  return DenseVector(std::move(x), field);
}

// Lower end recomputed from the witness so the stored value is reproducible.
void set_lower(NormEstimate& est, const DenseMatrix& a, DenseVector witness, double p, NormMethod method) {
  const double value = p_norm(a * witness, p) / p_norm(witness, p);
  if (value > est.lower || est.witness.empty()) {
    est.lower = value;
    est.witness = std::move(witness);
    est.lower_method = method;
  }
}

void set_upper(NormEstimate& est, const DenseMatrix& a, const Exponent& p) {
  struct Candidate {
    double value;
    NormMethod method;
  };
  std::vector<Candidate> candidates;
  if (p.hilbert()) candidates.push_back({spectral_norm(a), NormMethod::spectral_p2});
  candidates.push_back({interpolation_bound(a, p), NormMethod::interpolation});
  candidates.push_back({entrywise_bound(a, p), NormMethod::paper_bound});
  const auto best = std::min_element(candidates.begin(), candidates.end(),
                                     [](const Candidate& l, const Candidate& r) { return l.value < r.value; });
  est.upper = best->value;
  est.method = best->method;
}

NormEstimate zero_estimate(const DenseMatrix& a) {
  NormEstimate est;
  est.witness = DenseVector::basis(a.cols(), 0);
  est.method = NormMethod::interpolation;
  est.lower_method = NormMethod::power_iteration;
  est.zero_operator = true;
  return est;
}

}  // namespace

DenseVector project(const BasisPair& pair, std::span<const std::size_t> s, const DenseVector& x) {
  return pair.synthesize(masked_coefficients(pair, s, x));
}

double restricted_norm(const BasisPair& pair, std::span<const std::size_t> s, const DenseVector& x) {
  if (x.dim() != pair.n()) throw StructuralError("vector dimension does not match the basis");
  check_indices(s, pair.n());
  const DenseVector c = pair.coefficients(x);
  Vec kept;
  kept.reserve(s.size());
  for (std::size_t j : s) kept.push_back(c[j]);
  if (kept.empty()) return 0.0;
  return p_norm(kept, pair.p());
}

DenseMatrix composite_matrix(const CrossGram& gram, const SubsetPair& subsets) {
  if (subsets.universe() != gram.n()) throw StructuralError("subset universe does not match the gram dimension");
  DenseMatrix c(gram.n(), gram.n(), gram.g.field());
  for (std::size_t k : subsets.n_set()) {
    for (std::size_t j : subsets.m_set()) c.set(k, j, gram.g(k, j));
  }
  return c;
}

double paper_norm_bound(double mu, const SubsetPair& subsets, const Exponent& p) {
  return mu * cardinality_bound(subsets.m_size(), subsets.n_size(), p);
}

std::string_view method_name(NormMethod m) {
  switch (m) {
    case NormMethod::exact_p1:
      return "exact_p1";
    case NormMethod::exact_pinf:
      return "exact_pinf";
    case NormMethod::spectral_p2:
      return "spectral_p2";
    case NormMethod::power_iteration:
      return "power_iteration";
    case NormMethod::interpolation:
      return "interpolation";
    case NormMethod::paper_bound:
      return "paper_bound";
    case NormMethod::dense_sampling:
      return "dense_sampling";
  }
  return "unknown";
}

NormMethod parse_method(std::string_view name) {
  for (auto m : {NormMethod::exact_p1, NormMethod::exact_pinf, NormMethod::spectral_p2, NormMethod::power_iteration,
                 NormMethod::interpolation, NormMethod::paper_bound, NormMethod::dense_sampling}) {
    if (method_name(m) == name) return m;
  }
  throw StructuralError("unknown norm method '" + std::string(name) + "'");
}

NormEstimate norm_p1(const DenseMatrix& a) {
  NormEstimate est;
  std::size_t best_col = 0;
  double best = -1.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) sum += std::abs(a(r, c));
    if (sum > best) {
      best = sum;
      best_col = c;
    }
  }
  est.lower = est.upper = std::max(best, 0.0);
  est.witness = DenseVector::basis(a.cols(), best_col);
  est.method = est.lower_method = NormMethod::exact_p1;
  est.zero_operator = best == 0.0;
  return est;
}

NormEstimate norm_pinf(const DenseMatrix& a) {
  NormEstimate est;
  std::size_t best_row = 0;
  double best = -1.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) sum += std::abs(a(r, c));
    if (sum > best) {
      best = sum;
      best_row = r;
    }
  }
  DenseVector w(a.cols(), a.field());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    const Complex z = a(best_row, c);
    const double m = std::abs(z);
    w.set(c, m > 0.0 ? std::conj(z) / m : Complex(1.0, 0.0));
  }
  est.lower = est.upper = std::max(best, 0.0);
  est.witness = std::move(w);
  est.method = est.lower_method = NormMethod::exact_pinf;
  est.zero_operator = best == 0.0;
  return est;
}

double interpolation_bound(const DenseMatrix& a, const Exponent& p) {
  const double one = norm_p1(a).upper;
  const double inf = norm_pinf(a).upper;
  if (one == 0.0 || inf == 0.0) return 0.0;
  return std::pow(one, 1.0 / p.p()) * std::pow(inf, 1.0 / p.q());
}

double entrywise_bound(const DenseMatrix& a, const Exponent& p) {
  std::size_t nonzero_rows = 0;
  std::vector<bool> col_used(a.cols(), false);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    bool used = false;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a(r, c) != Complex(0.0, 0.0)) {
        used = true;
        col_used[c] = true;
      }
    }
    if (used) ++nonzero_rows;
  }
  const auto nonzero_cols = static_cast<std::size_t>(std::count(col_used.begin(), col_used.end(), true));
  return a.max_abs() * cardinality_bound(nonzero_cols, nonzero_rows, p);
}

double spectral_norm(const DenseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(a));
  return svd.singularValues()(0);
}

NormEstimate opnorm_p(const DenseMatrix& a, const Exponent& p, const NormBudget& budget, std::uint64_t seed) {
  if (a.rows() == 0 || a.cols() == 0) throw DomainError("operator norm of an empty matrix");
  if (budget.restarts == 0 || budget.max_iterations == 0) throw DomainError("norm budget must be positive");
  if (a.max_abs() == 0.0) return zero_estimate(a);

  const DenseMatrix ah = a.adjoint();
  const Field field = a.field();

  // Slot 0 starts from the best canonical vector, the rest from seeded draws.
  std::size_t best_col = 0;
  double best_col_value = -1.0;
  Vec scratch;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    Vec e(a.cols());
    e[c] = 1.0;
    const double v = ratio(a, e, p.p(), scratch);
    if (v > best_col_value) {
      best_col_value = v;
      best_col = c;
    }
  }

  std::vector<Trial> trials(budget.restarts + 1);
  parallel_for(trials.size(), [&](std::size_t i) {
    Vec start;
    if (i == 0) {
      start.assign(a.cols(), Complex(0.0, 0.0));
      start[best_col] = 1.0;
    } else {
      Rng rng(derive_seed(seed, i));
      start = random_start(a.cols(), field, rng);
    }
    trials[i] = power_iterate(a, ah, std::move(start), p, budget);
  });

  std::size_t winner = 0;
  for (std::size_t i = 1; i < trials.size(); ++i) {
    if (trials[i].value > trials[winner].value) winner = i;
  }

  NormEstimate est;
  est.converged = trials[winner].converged;
  set_lower(est, a, to_vector(trials[winner].x, field), p.p(), NormMethod::power_iteration);
  set_lower(est, a, DenseVector::basis(a.cols(), best_col), p.p(), NormMethod::power_iteration);
  if (p.hilbert()) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(a), Eigen::ComputeThinV);
    set_lower(est, a, detail::from_eigen(Eigen::VectorXcd(svd.matrixV().col(0)), field), p.p(),
              NormMethod::spectral_p2);
  }
  set_upper(est, a, p);
  return est;
}

NormEstimate composite_opnorm(const CrossGram& gram, const SubsetPair& subsets, const Exponent& p,
                              const NormBudget& budget, std::uint64_t seed) {
  const DenseMatrix c = composite_matrix(gram, subsets);
  NormEstimate est = opnorm_p(c, p, budget, seed);
  const double coherence = paper_norm_bound(mu_global(gram), subsets, p);
  if (coherence < est.upper) {
    est.upper = coherence;
    est.method = NormMethod::paper_bound;
  }
  return est;
}

NormEstimate dense_sampling(const DenseMatrix& a, const Exponent& p, std::size_t samples, std::uint64_t seed) {
  if (a.rows() == 0 || a.cols() == 0) throw DomainError("operator norm of an empty matrix");
  if (samples == 0) throw DomainError("dense sampling needs at least one sample");
  if (a.max_abs() == 0.0) return zero_estimate(a);

  const Field field = a.field();
  constexpr std::size_t kKeep = 8;
  std::vector<Trial> top;
  Rng rng(seed);
  Vec scratch;
  for (std::size_t s = 0; s < samples; ++s) {
    Vec x = random_start(a.cols(), field, rng);
    normalize(x, p.p());
    const double v = ratio(a, x, p.p(), scratch);
    if (top.size() < kKeep || v > top.back().value) {
      top.push_back(Trial{v, std::move(x), true});
      std::sort(top.begin(), top.end(), [](const Trial& l, const Trial& r) { return l.value > r.value; });
      if (top.size() > kKeep) top.pop_back();
    }
  }

  // coordinate ascent on real and imaginary parts
  const std::size_t parts = field == Field::complex ? 2 : 1;
  for (auto& t : top) {
    double step = 0.1;
    for (int round = 0; round < 60; ++round) {
      bool improved = false;
      for (std::size_t i = 0; i < t.x.size(); ++i) {
        for (std::size_t part = 0; part < parts; ++part) {
          for (double sign : {1.0, -1.0}) {
            Vec y = t.x;
            y[i] += part == 0 ? Complex(sign * step, 0.0) : Complex(0.0, sign * step);
            normalize(y, p.p());
            const double v = ratio(a, y, p.p(), scratch);
            if (v > t.value) {
              t = Trial{v, std::move(y), true};
              improved = true;
            }
          }
        }
      }
      if (!improved) step *= 0.5;
    }
  }

  const auto best = std::max_element(top.begin(), top.end(),
                                     [](const Trial& l, const Trial& r) { return l.value < r.value; });
  NormEstimate est;
  set_lower(est, a, to_vector(best->x, field), p.p(), NormMethod::dense_sampling);
  set_upper(est, a, p);
  return est;
}

}  // namespace ul
