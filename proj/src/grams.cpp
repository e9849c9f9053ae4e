#include "ul/grams.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ul/digest.hpp"
#include "ul/kernels.hpp"

namespace ul {

std::vector<std::size_t> checked_index_set(std::vector<std::size_t> s, std::size_t universe) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw StructuralError("index set has duplicates");
  if (!s.empty() && s.back() >= universe) {
    throw StructuralError("index " + std::to_string(s.back() + 1) + " outside {1, ..., " + std::to_string(universe) +
                          "}");
  }
  return s;
}

SubsetPair::SubsetPair(std::vector<std::size_t> m, std::vector<std::size_t> n, std::size_t universe)
    : m_(checked_index_set(std::move(m), universe)), n_(checked_index_set(std::move(n), universe)), universe_(universe) {}

SubsetPair SubsetPair::one_based(const std::vector<std::size_t>& m, const std::vector<std::size_t>& n,
                                 std::size_t universe) {
  auto shift = [](const std::vector<std::size_t>& s) {
    std::vector<std::size_t> out;
    out.reserve(s.size());
    for (std::size_t i : s) {
      if (i == 0) throw StructuralError("subset indices are 1-based; got 0");
      out.push_back(i - 1);
    }
    return out;
  };
  return SubsetPair(shift(m), shift(n), universe);
}

SubsetPair SubsetPair::full(std::size_t universe) {
  std::vector<std::size_t> all(universe);
  for (std::size_t i = 0; i < universe; ++i) all[i] = i;
  return SubsetPair(all, all, universe);
}

SubsetPair SubsetPair::empty(std::size_t universe) { return SubsetPair({}, {}, universe); }

namespace {
std::vector<std::size_t> complement_of(const std::vector<std::size_t>& s, std::size_t universe) {
  std::vector<std::size_t> out;
  out.reserve(universe - s.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < universe; ++i) {
    if (k < s.size() && s[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}
}  // namespace

std::vector<std::size_t> SubsetPair::m_complement() const { return complement_of(m_, universe_); }
std::vector<std::size_t> SubsetPair::n_complement() const { return complement_of(n_, universe_); }

std::uint64_t SubsetPair::digest() const {
  Digest d;
  d.text("subsets").u64(universe_).u64(m_.size());
  for (auto i : m_) d.u64(i);
  d.u64(n_.size());
  for (auto i : n_) d.u64(i);
  return d.value();
}

CrossGram cross_gram(const BasisPair& first, const BasisPair& second) {
  if (first.n() != second.n() || first.exponent() != second.exponent()) {
    throw StructuralError("cross_gram needs pairs with equal n and p");
  }
  require_valid(first, "first pair");
  require_valid(second, "second pair");
  return CrossGram{second.analysis() * first.synthesis(), first.digest(), second.digest()};
}

double mu_global(const CrossGram& gram) { return gram.g.max_abs(); }

double mu_local(const CrossGram& gram, const SubsetPair& subsets) {
  if (subsets.universe() != gram.n()) throw StructuralError("subset universe does not match the gram dimension");
  double best = 0.0;
  for (std::size_t k : subsets.n_set()) {
    for (std::size_t j : subsets.m_set()) {
      const Complex z = gram.g(k, j);
      best = std::max(best, z.real() * z.real() + z.imag() * z.imag());
    }
  }
  return std::sqrt(best);
}

double cardinality_bound(std::size_t m_size, std::size_t n_size, const Exponent& p) {
  if (m_size == 0 || n_size == 0) return 0.0;
  const double a = static_cast<double>(m_size);
  const double b = static_cast<double>(n_size);
  if (p.hilbert()) return std::sqrt(a * b);
  return std::pow(a, 1.0 / p.q()) * std::pow(b, 1.0 / p.p());
}

AdmissibilityReport admissibility(const SubsetPair& subsets, const Exponent& p, double mu, bool localized) {
  if (!(mu >= 0.0)) throw DomainError("coherence must be nonnegative");
  AdmissibilityReport r;
  r.mu = mu;
  r.localized = localized;
  r.vacuous = subsets.vacuous();
  r.bound = cardinality_bound(subsets.m_size(), subsets.n_size(), p);
  const double product = r.bound * mu;
  r.admissible = product < 1.0 - kAdmissibilityTieBand;
  if (r.admissible) r.constant = 1.0 + 1.0 / (1.0 - product);
  return r;
}

AdmissibilityReport admissibility_swapped(const SubsetPair& subsets, const Exponent& p, double mu_f_omega,
                                          bool localized) {
  return admissibility(subsets, p, mu_f_omega, localized);
}

}  // namespace ul
