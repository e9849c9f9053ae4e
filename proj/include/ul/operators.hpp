#pragma once

// Coordinate projections, restricted norms, the composite operator
// P_N V P_M, and certified intervals for p -> p operator norms.

#include <cstdint>
#include <span>
#include <string_view>

#include "ul/grams.hpp"

namespace ul {

// x -> sum_{j in S} f_j(x) tau_j
DenseVector project(const BasisPair& pair, std::span<const std::size_t> s, const DenseVector& x);

// (sum_{j in S} |f_j(x)|^p)^(1/p)
double restricted_norm(const BasisPair& pair, std::span<const std::size_t> s, const DenseVector& x);

// Entry (k, j) = G[k][j] for k in N and j in M, zero elsewhere.
DenseMatrix composite_matrix(const CrossGram& gram, const SubsetPair& subsets);

// mu |N|^(1/p) |M|^(1/q); 0 when M or N is empty.
double paper_norm_bound(double mu, const SubsetPair& subsets, const Exponent& p);

enum class NormMethod {
  exact_p1,
  exact_pinf,
  spectral_p2,
  power_iteration,
  interpolation,
  paper_bound,
  dense_sampling,
};
std::string_view method_name(NormMethod m);
NormMethod parse_method(std::string_view name);

/// Interval [lower, upper] for ‖A‖_{p->p}.
///
/// `lower` is ‖A w‖_p / ‖w‖_p for the stored witness w, so anyone can
/// recompute it. `method` names the estimator that produced `upper`;
/// `lower_method` the one that produced the witness.
struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  DenseVector witness;
  NormMethod method = NormMethod::interpolation;
  NormMethod lower_method = NormMethod::power_iteration;
  bool converged = true;
  bool zero_operator = false;

  friend bool operator==(const NormEstimate&, const NormEstimate&) = default;
};

struct NormBudget {
  std::size_t restarts = 8;
  std::size_t max_iterations = 500;
  double tolerance = 1e-10;
};

// Column-sum norm with a canonical witness; exact for p = 1.
NormEstimate norm_p1(const DenseMatrix& a);
// Row-sum norm with a unimodular witness; exact for p = inf.
NormEstimate norm_pinf(const DenseMatrix& a);

// ‖A‖_1^(1/p) ‖A‖_inf^(1/q)
double interpolation_bound(const DenseMatrix& a, const Exponent& p);
// max |a_kj| (#nonzero columns)^(1/q) (#nonzero rows)^(1/p)
double entrywise_bound(const DenseMatrix& a, const Exponent& p);
double spectral_norm(const DenseMatrix& a);

// The norm is taken over the field of A: real matrices are tested on real
// vectors only. Power-iteration restarts may run concurrently; the merge is
// by (lower, then restart index) and does not depend on scheduling.
NormEstimate opnorm_p(const DenseMatrix& a, const Exponent& p, const NormBudget& budget = {},
                      std::uint64_t seed = 0);

// opnorm_p of composite_matrix(gram, subsets) with paper_norm_bound (global mu)
// folded into the upper end.
NormEstimate composite_opnorm(const CrossGram& gram, const SubsetPair& subsets, const Exponent& p,
                              const NormBudget& budget = {}, std::uint64_t seed = 0);

// Lower bound from random unit-sphere samples followed by coordinate ascent
// from the best few. Cost grows quickly with n; meant for n <= 4.
NormEstimate dense_sampling(const DenseMatrix& a, const Exponent& p, std::size_t samples, std::uint64_t seed);

}  // namespace ul
