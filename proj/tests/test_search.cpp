#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "oracles.hpp"
#include "ul/search.hpp"

namespace {

using ul::Exponent;
using ul::SearchConfig;
using ul::SubsetPair;
using ul::Variant;

const Exponent kTwo(2.0);

SearchConfig quick(std::uint64_t seed = 0) {
  SearchConfig c;
  c.restarts = 4;
  c.steps = 200;
  c.seed = seed;
  return c;
}

TEST(SearchConfig, Checks) {
  SearchConfig c;
  EXPECT_NO_THROW(c.check());
  c.restarts = 0;
  EXPECT_THROW(c.check(), ul::DomainError);
  c = SearchConfig{};
  c.step_decay = 1.0;
  EXPECT_THROW(c.check(), ul::DomainError);
  c = SearchConfig{};
  EXPECT_EQ(c.step_size(0), 0.5);
  EXPECT_EQ(c.step_size(49), 0.5);
  EXPECT_LT(c.step_size(50), c.step_size(49));
}

TEST(Subsets, CountsAndOrder) {
  const auto s = ul::subsets_up_to(6, 3);
  EXPECT_EQ(s.size(), 1u + 6u + 15u + 20u);
  EXPECT_EQ(s, oracle::subsets_up_to(6, 3));
  EXPECT_EQ(ul::subsets_up_to(16, 3).size(), 697u);
  EXPECT_EQ(ul::binomial(16, 3), 560u);
  EXPECT_EQ(ul::binomial(3, 5), 0u);
}

TEST(Enumerate, DftFourGlobalSizes) {
  const auto gram = ul::cross_gram(ul::canonical_basis(4, kTwo), ul::dft_basis(4));
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  for (const auto& e : ul::enumerate_admissible(gram, kTwo, 3, false)) {
    sizes.emplace_back(e.subsets.m_size(), e.subsets.n_size());
    EXPECT_EQ(e.count, ul::binomial(4, e.subsets.m_size()) * ul::binomial(4, e.subsets.n_size()));
  }
  for (std::size_t a = 0; a <= 3; ++a) {
    for (std::size_t b = 0; b <= 3; ++b) {
      const bool expected = a * b <= 3;
      EXPECT_EQ(std::find(sizes.begin(), sizes.end(), std::make_pair(a, b)) != sizes.end(), expected) << a << b;
    }
  }
}

TEST(Enumerate, UnitCoherenceOnlyVacuousPairs) {
  const Exponent three(3.0);
  const auto gram = ul::cross_gram(ul::canonical_basis(5, three), ul::random_basis(5, three, 2));
  for (const auto& s : ul::admissible_subset_pairs(gram, three, 3, false)) EXPECT_TRUE(s.vacuous());
  // Localized: a permutation gram leaves pairs off its pattern with mu = 0.
  std::size_t off_pattern = 0;
  for (const auto& s : ul::admissible_subset_pairs(gram, three, 3, true)) {
    if (s.vacuous()) continue;
    EXPECT_EQ(ul::mu_local(gram, s), 0.0);
    ++off_pattern;
  }
  EXPECT_GT(off_pattern, 0U);
}

TEST(Enumerate, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto gram = ul::cross_gram(ul::random_basis(6, kTwo, seed), ul::random_basis(6, kTwo, seed + 9));
    for (bool localized : {false, true}) {
      EXPECT_EQ(ul::admissible_subset_pairs(gram, kTwo, 3, localized),
                ul::admissible_subset_pairs_brute_force(gram, kTwo, 3, localized));
    }
  }
  const auto dft = ul::cross_gram(ul::canonical_basis(8, kTwo), ul::dft_basis(8));
  EXPECT_EQ(ul::admissible_subset_pairs(dft, kTwo, 3, false), ul::admissible_subset_pairs_brute_force(dft, kTwo, 3, false));
}

TEST(Enumerate, LocalizedContainsGlobal) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto gram = ul::cross_gram(ul::random_basis(6, kTwo, seed), ul::random_basis(6, kTwo, seed + 20));
    const auto global = ul::admissible_subset_pairs(gram, kTwo, 3, false);
    const auto local = ul::admissible_subset_pairs(gram, kTwo, 3, true);
    EXPECT_TRUE(std::includes(local.begin(), local.end(), global.begin(), global.end()));
  }
}

TEST(Search, EmptySubsetsQuarter) {
  const auto f = ul::canonical_basis(4, kTwo);
  const auto r = ul::extremal_ratio_search(f, ul::dft_basis(4), SubsetPair::empty(4), quick());
  EXPECT_NEAR(r.ratio, 0.25, 1e-15);
  for (double t : r.trace) EXPECT_NEAR(t, 0.25, 1e-15);
}

TEST(Search, DftSingletonBelowOne) {
  const auto f = ul::canonical_basis(4, kTwo);
  const auto g = ul::dft_basis(4);
  const auto r = ul::extremal_ratio_search(f, g, SubsetPair({0}, {0}, 4), quick(3));
  EXPECT_LT(r.ratio, 1.0);
  // tau_1 alone reaches 1 / (3 sqrt(3) / 2)
  EXPECT_GE(r.ratio, 1.0 / 2.598076211353316 - 1e-12);
  EXPECT_NEAR(ul::p_norm(r.best_x, 2.0), 1.0, 1e-14);
  const auto c = ul::verify_fgj(f, g, r.subsets, r.best_x);
  EXPECT_NEAR(c.lhs / *c.rhs, r.ratio, 1e-10);
  EXPECT_EQ(r.trace.size(), 4u);
}

TEST(Search, Deterministic) {
  const auto f = ul::canonical_basis(4, kTwo);
  const auto g = ul::dft_basis(4);
  const auto a = ul::extremal_ratio_search(f, g, SubsetPair({1}, {2}, 4), quick(5));
  const auto b = ul::extremal_ratio_search(f, g, SubsetPair({1}, {2}, 4), quick(5));
  EXPECT_EQ(a, b);
}

TEST(Search, ThreadCountDoesNotChangeResult) {
  const auto f = ul::canonical_basis(4, kTwo);
  const auto g = ul::dft_basis(4);
  ::setenv("UL_THREADS", "1", 1);
  const auto one = ul::extremal_ratio_search(f, g, SubsetPair({0}, {1}, 4), quick(8));
  ::setenv("UL_THREADS", "4", 1);
  const auto four = ul::extremal_ratio_search(f, g, SubsetPair({0}, {1}, 4), quick(8));
  ::unsetenv("UL_THREADS");
  EXPECT_EQ(one, four);
}

TEST(Search, InadmissibleIsPreconditionError) {
  const auto f = ul::canonical_basis(4, kTwo);
  EXPECT_THROW(ul::extremal_ratio_search(f, f, SubsetPair({0}, {0}, 4), quick()), ul::PreconditionError);
}

TEST(Search, GeneralExponent) {
  const Exponent three(3.0);
  const auto f = ul::random_basis(4, three, 1);
  const auto g = ul::random_basis(4, three, 2);
  const auto r = ul::extremal_ratio_search(f, g, SubsetPair({}, {0, 1}, 4), quick());
  EXPECT_LE(r.ratio, 1.0);
  EXPECT_EQ(r.p, 3.0);
}

TEST(Sharpness, Rows) {
  const auto f = ul::canonical_basis(4, kTwo);
  const auto g = ul::dft_basis(4);
  std::vector<ul::ExtremalResult> results;
  results.push_back(ul::extremal_ratio_search(f, g, SubsetPair({0}, {0}, 4), quick(1)));
  auto rows = ul::sharpness_report(results);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].max_ratio, results[0].ratio);
  EXPECT_EQ(rows[0].gap, 1.0 - results[0].ratio);

  results.push_back(ul::extremal_ratio_search(f, g, SubsetPair({1}, {3}, 4), quick(2)));
  results.push_back(ul::extremal_ratio_search(f, g, SubsetPair::empty(4), quick(3)));
  results.push_back(ul::extremal_ratio_search(f, g, SubsetPair({0, 1}, {0}, 4), quick(4)));
  rows = ul::sharpness_report(results);
  EXPECT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(rows[i - 1].gap, rows[i].gap);
  for (const auto& r : rows) EXPECT_GT(r.gap, 0.0);
  EXPECT_THROW(ul::sharpness_report({}), ul::DomainError);
}

}  // namespace
