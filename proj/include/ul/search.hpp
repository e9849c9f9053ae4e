#pragma once

// Admissible subset enumeration and the extremal-ratio search that probes
// how sharp the uncertainty constant is.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ul/uncertainty.hpp"

namespace ul {

struct SearchConfig {
  std::size_t max_subset_size = 3;
  std::size_t restarts = 32;
  std::size_t steps = 2000;
  double initial_step = 0.5;
  // step = initial_step * step_decay^(floor(step_index / decay_interval))
  double step_decay = 0.95;
  std::size_t decay_interval = 50;
  std::uint64_t seed = 0;
  Variant variant = Variant::fgj;

  // Throws DomainError on zero counts or a non-decreasing schedule.
  void check() const;
  double step_size(std::size_t step_index) const;

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

// All subsets of {0, ..., n-1} with at most k elements, by size then lexicographically.
std::vector<std::vector<std::size_t>> subsets_up_to(std::size_t n, std::size_t k);

std::uint64_t binomial(std::size_t n, std::size_t k);

struct AdmissibleEntry {
  SubsetPair subsets;
  AdmissibilityReport report;
  // Number of subset pairs this entry stands for (1 in localized mode).
  std::uint64_t count = 1;
};

/// Global mode: admissibility only depends on (|M|, |N|, mu), so one
/// representative ({1..a}, {1..b}) is emitted per admissible size pair with
/// the number of subset pairs it covers. Localized mode: explicit pairs,
/// depth-first with pruning of every superset of an inadmissible pair.
void for_each_admissible(const CrossGram& gram, const Exponent& p, std::size_t max_subset_size, bool localized,
                         const std::function<void(const AdmissibleEntry&)>& visit);
std::vector<AdmissibleEntry> enumerate_admissible(const CrossGram& gram, const Exponent& p,
                                                  std::size_t max_subset_size, bool localized);

// Every admissible subset pair spelled out (global mode expanded, localized
// mode as enumerated), sorted.
std::vector<SubsetPair> admissible_subset_pairs(const CrossGram& gram, const Exponent& p,
                                                std::size_t max_subset_size, bool localized);

// Reference enumeration without pruning; checks every pair.
std::vector<SubsetPair> admissible_subset_pairs_brute_force(const CrossGram& gram, const Exponent& p,
                                                            std::size_t max_subset_size, bool localized);

struct ExtremalResult {
  DenseVector best_x;  // ‖best_x‖_p = 1
  double ratio = 0.0;  // ‖x‖ / rhs
  double p = 2.0;
  SubsetPair subsets = SubsetPair::empty(1);
  Certificate certificate;
  std::vector<double> trace;  // best ratio per restart
  SearchConfig config;

  friend bool operator==(const ExtremalResult&, const ExtremalResult&) = default;
};

inline constexpr double kRatioTolerance = 1e-9;

/// Maximizes ‖x‖ / rhs(x) from seeded random restarts by coordinate
/// perturbation ascent on real and imaginary parts. Throws
/// PreconditionError on inadmissible subsets and TheoremViolation if a ratio
/// above 1 + 1e-9 is ever reached.
ExtremalResult extremal_ratio_search(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                                     const SearchConfig& config = {});

struct SharpnessRow {
  std::size_t n = 0;
  double p = 2.0;
  std::size_t m_size = 0;
  std::size_t n_size = 0;
  Variant variant = Variant::fgj;
  double max_ratio = 0.0;
  double gap = 0.0;  // 1 - max_ratio
  std::uint64_t witness_digest = 0;
};

// One row per (n, p, |M|, |N|) keeping the largest ratio; sorted by gap
// ascending. Throws DomainError on empty input.
std::vector<SharpnessRow> sharpness_report(std::span<const ExtremalResult> results);

}  // namespace ul
