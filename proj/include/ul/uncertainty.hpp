#pragma once

// Certified evaluation of the functional uncertainty inequality
//
//   ‖x‖ <= C (‖x‖_{M^c,f} + ‖x‖_{N^c,g}),   C = 1 + 1 / (1 - |M|^(1/q) |N|^(1/p) mu)
//
// in its four forms (global or localized coherence, original or swapped
// roles), the intermediate tail inequality used to prove it, the
// annihilation consequence, and the p = 2 reduction to inner products.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "ul/operators.hpp"

namespace ul {

enum class Variant { fgj, fgj_swapped, fgj_local, fgj_swapped_local };
std::string_view variant_name(Variant v);
// Accepts both the record names (fgj_swapped, ...) and the CLI spellings
// (fgj, swapped, local, swapped-local).
Variant parse_variant(std::string_view name);
bool is_swapped(Variant v);
bool is_localized(Variant v);

struct Certificate {
  Variant variant = Variant::fgj;
  SubsetPair subsets = SubsetPair::empty(1);
  double lhs = 0.0;
  // f-expansion tail: over M^c (fgj, fgj_local) or N^c (swapped forms)
  double tail_f = 0.0;
  // g-expansion tail: over N^c (fgj, fgj_local) or M^c (swapped forms)
  double tail_g = 0.0;
  // Present iff admissibility.admissible.
  std::optional<double> constant;
  std::optional<double> rhs;
  std::optional<double> slack;
  AdmissibilityReport admissibility;
  std::uint64_t pair_f = 0;
  std::uint64_t pair_g = 0;
  std::uint64_t input_digest = 0;

  bool applicable() const noexcept { return admissibility.admissible; }
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

inline constexpr double kSlackTolerance = 1e-9;

struct AnnihilationReport;

/// Coefficient data of one test vector, shared by every subset pair.
struct Expansion {
  double norm = 0.0;
  std::vector<double> weight_f;  // |f_j(x)|^p
  std::vector<double> weight_g;  // |g_k(x)|^p
  std::uint64_t digest = 0;
};

/// Subset pair with complement masks precomputed.
struct PreparedSubsets {
  SubsetPair subsets;
  std::vector<double> m_complement_mask;
  std::vector<double> n_complement_mask;
  std::uint64_t digest = 0;
};
PreparedSubsets prepare(const SubsetPair& subsets);

/// Validated pair of bases with both cross-Grams cached; evaluates any number
/// of certificates without repeating the per-pair work.
class CertificateEngine {
 public:
  CertificateEngine(BasisPair first, BasisPair second);

  const BasisPair& first() const noexcept { return f_; }
  const BasisPair& second() const noexcept { return g_; }
  std::size_t n() const noexcept { return f_.n(); }
  const Exponent& exponent() const noexcept { return f_.exponent(); }

  // g_k(tau_j)
  const CrossGram& forward_gram() const noexcept { return forward_; }
  // f_j(omega_k), stored with rows indexed by j
  const CrossGram& swapped_gram() const noexcept { return swapped_; }

  double mu(Variant v, const SubsetPair& subsets) const;
  AdmissibilityReport admissibility(Variant v, const SubsetPair& subsets) const;

  Expansion expand(const DenseVector& x) const;

  // (tail_f, tail_g) for the variant's role assignment.
  std::pair<double, double> tails(Variant v, const PreparedSubsets& subsets, const Expansion& x) const;

  Certificate certify(Variant v, const PreparedSubsets& subsets, const AdmissibilityReport& adm,
                      const Expansion& x) const;
  Certificate certify(Variant v, const SubsetPair& subsets, const DenseVector& x) const;

  // annihilation_test without re-validating the pairs.
  AnnihilationReport annihilation(const SubsetPair& subsets) const;

 private:
  BasisPair f_;
  BasisPair g_;
  CrossGram forward_;
  CrossGram swapped_;
  double mu_forward_;
  double mu_swapped_;
};

Certificate verify_fgj(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets, const DenseVector& x);
Certificate verify_fgj_swapped(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                               const DenseVector& x);
Certificate verify_fgj_local(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                             const DenseVector& x);
Certificate verify_fgj_swapped_local(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                                     const DenseVector& x);
Certificate verify(Variant v, const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                   const DenseVector& x);

/// ‖y‖_{N^c,g} >= (1 - mu |N|^(1/p) |M|^(1/q)) ‖y‖ for y supported on M in the
/// f-expansion. Uses the global coherence.
struct InpRecord {
  double lhs_tail = 0.0;
  double bound = 0.0;
  double norm = 0.0;
  double norm_bound = 0.0;
  bool holds = false;
};
InpRecord verify_inp(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets, const DenseVector& y);

// Rank threshold on singular values of the stacked system.
inline constexpr double kRankThreshold = 1e-8;

/// span{tau_j : j in M} ∩ span{omega_k : k in N}, from the singular values of
/// [T_M, -Omega_N].
struct AnnihilationReport {
  std::size_t intersection_dim = 0;
  // Smallest singular value of the stacked system (0 when it has more
  // columns than rows); absent when M and N are both empty.
  std::optional<double> smallest_gap;
  // Unit 2-norm vector in both spans; present iff intersection_dim > 0.
  std::optional<DenseVector> witness;
  // max |f_j(w)| over j not in M and max |g_k(w)| over k not in N.
  double residual_f = 0.0;
  double residual_g = 0.0;

  friend bool operator==(const AnnihilationReport&, const AnnihilationReport&) = default;
};
AnnihilationReport annihilation_test(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets);

/// p = 2 only: the functional right-hand side against the inner-product one
/// (tails from <x, tau_j>, <x, omega_k>; coherence max |<tau_j, omega_k>|).
struct HilbertReduction {
  std::optional<double> fgj_rhs;
  std::optional<double> gj_rhs;
  double max_difference = 0.0;
  bool equal = false;
};
inline constexpr double kReductionTolerance = 1e-12;
HilbertReduction hilbert_reduction_check(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                                         const DenseVector& x);

}  // namespace ul
