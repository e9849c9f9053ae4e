#pragma once

// Cross-Gram (coherence) matrices, subset pairs and the admissibility test
// that gates every uncertainty certificate.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ul/bases.hpp"

namespace ul {

/// Index sets M, N of {0, ..., universe-1}; sorted and duplicate-free.
/// User-facing I/O is 1-based, this type is 0-based.
class SubsetPair {
 public:
  SubsetPair(std::vector<std::size_t> m, std::vector<std::size_t> n, std::size_t universe);
  static SubsetPair one_based(const std::vector<std::size_t>& m, const std::vector<std::size_t>& n,
                              std::size_t universe);
  static SubsetPair full(std::size_t universe);
  static SubsetPair empty(std::size_t universe);

  const std::vector<std::size_t>& m_set() const noexcept { return m_; }
  const std::vector<std::size_t>& n_set() const noexcept { return n_; }
  std::size_t universe() const noexcept { return universe_; }
  std::size_t m_size() const noexcept { return m_.size(); }
  std::size_t n_size() const noexcept { return n_.size(); }
  bool vacuous() const noexcept { return m_.empty() || n_.empty(); }

  std::vector<std::size_t> m_complement() const;
  std::vector<std::size_t> n_complement() const;
  std::uint64_t digest() const;

  friend bool operator==(const SubsetPair&, const SubsetPair&) = default;
  friend auto operator<=>(const SubsetPair&, const SubsetPair&) = default;

 private:
  std::vector<std::size_t> m_;
  std::vector<std::size_t> n_;
  std::size_t universe_;
};

// Sorts, rejects duplicates and indices >= universe.
std::vector<std::size_t> checked_index_set(std::vector<std::size_t> s, std::size_t universe);

/// G[k][j] = g_k(tau_j) between a first pair (f, tau) and a second pair (g, omega).
struct CrossGram {
  DenseMatrix g;
  std::uint64_t source_f = 0;
  std::uint64_t source_g = 0;

  std::size_t n() const noexcept { return g.rows(); }
  friend bool operator==(const CrossGram&, const CrossGram&) = default;
};

CrossGram cross_gram(const BasisPair& first, const BasisPair& second);

double mu_global(const CrossGram& gram);
// max over j in M (columns), k in N (rows); 0 when M or N is empty.
double mu_local(const CrossGram& gram, const SubsetPair& subsets);

struct AdmissibilityReport {
  double mu = 0.0;
  // |M|^(1/q) |N|^(1/p)
  double bound = 0.0;
  bool admissible = false;
  // 1 + 1 / (1 - bound * mu), present iff admissible
  std::optional<double> constant;
  // M or N empty: bound is 0 by convention and the constant is exactly 2.
  bool vacuous = false;
  bool localized = false;

  friend bool operator==(const AdmissibilityReport&, const AdmissibilityReport&) = default;
};

// |M|^(1/q) |N|^(1/p), with 0^(1/q) = 0.
double cardinality_bound(std::size_t m_size, std::size_t n_size, const Exponent& p);

// Products bound * mu within this distance below 1 count as ties and are
// rejected, so rounding can never turn a boundary case into a certificate.
inline constexpr double kAdmissibilityTieBand = 1e-12;

AdmissibilityReport admissibility(const SubsetPair& subsets, const Exponent& p, double mu, bool localized = false);
// Same arithmetic with mu = max |f_j(omega_k)|.
AdmissibilityReport admissibility_swapped(const SubsetPair& subsets, const Exponent& p, double mu_f_omega,
                                          bool localized = false);

}  // namespace ul
