#include "ul/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "ul/digest.hpp"
#include "ul/parallel.hpp"
#include "ul/rng.hpp"

namespace ul {

void SearchConfig::check() const {
  if (max_subset_size == 0 || restarts == 0 || steps == 0 || decay_interval == 0) {
    throw DomainError("search counts must be positive");
  }
  if (!(initial_step > 0.0) || !(step_decay > 0.0 && step_decay < 1.0)) {
    throw DomainError("step sizes must start positive and strictly decrease (0 < decay < 1)");
  }
}

double SearchConfig::step_size(std::size_t step_index) const {
  return initial_step * std::pow(step_decay, static_cast<double>(step_index / decay_interval));
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<std::size_t>> subsets_up_to(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  k = std::min(k, n);
  for (std::size_t size = 0; size <= k; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      out.push_back(idx);
      // next combination in lexicographic order
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

namespace {

std::vector<std::size_t> first_indices(std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = i;
  return v;
}

void extend_n(const CrossGram& gram, const Exponent& p, std::size_t k, const std::vector<std::size_t>& m,
              std::vector<std::size_t>& n_set, std::size_t next,
              const std::function<void(const AdmissibleEntry&)>& visit) {
  if (n_set.size() == k) return;
  for (std::size_t i = next; i < gram.n(); ++i) {
    n_set.push_back(i);
    SubsetPair pair(m, n_set, gram.n());
    const AdmissibilityReport r = admissibility(pair, p, mu_local(gram, pair), true);
    // Supersets of an inadmissible pair are inadmissible: skip the subtree.
    if (r.admissible) {
      visit(AdmissibleEntry{pair, r, 1});
      extend_n(gram, p, k, m, n_set, i + 1, visit);
    }
    n_set.pop_back();
  }
}

}  // namespace

void for_each_admissible(const CrossGram& gram, const Exponent& p, std::size_t max_subset_size, bool localized,
                         const std::function<void(const AdmissibleEntry&)>& visit) {
  const std::size_t n = gram.n();
  if (max_subset_size > n) throw DomainError("max subset size exceeds the dimension");
  if (!localized) {
    const double mu = mu_global(gram);
    for (std::size_t a = 0; a <= max_subset_size; ++a) {
      for (std::size_t b = 0; b <= max_subset_size; ++b) {
        SubsetPair rep(first_indices(a), first_indices(b), n);
        AdmissibilityReport r = admissibility(rep, p, mu, false);
        if (r.admissible) visit(AdmissibleEntry{std::move(rep), std::move(r), binomial(n, a) * binomial(n, b)});
      }
    }
    return;
  }
  for (const auto& m : subsets_up_to(n, max_subset_size)) {
    SubsetPair empty_n(m, {}, n);
    visit(AdmissibleEntry{empty_n, admissibility(empty_n, p, 0.0, true), 1});
    std::vector<std::size_t> n_set;
    extend_n(gram, p, max_subset_size, m, n_set, 0, visit);
  }
}

std::vector<AdmissibleEntry> enumerate_admissible(const CrossGram& gram, const Exponent& p,
                                                  std::size_t max_subset_size, bool localized) {
  std::vector<AdmissibleEntry> out;
  for_each_admissible(gram, p, max_subset_size, localized, [&](const AdmissibleEntry& e) { out.push_back(e); });
  return out;
}

std::vector<SubsetPair> admissible_subset_pairs(const CrossGram& gram, const Exponent& p,
                                                std::size_t max_subset_size, bool localized) {
  std::vector<SubsetPair> out;
  if (localized) {
    for_each_admissible(gram, p, max_subset_size, true, [&](const AdmissibleEntry& e) { out.push_back(e.subsets); });
  } else {
    std::vector<std::vector<std::vector<std::size_t>>> by_size(max_subset_size + 1);
    for (auto& s : subsets_up_to(gram.n(), max_subset_size)) by_size[s.size()].push_back(std::move(s));
    for_each_admissible(gram, p, max_subset_size, false, [&](const AdmissibleEntry& e) {
      for (const auto& m : by_size[e.subsets.m_size()]) {
        for (const auto& n_set : by_size[e.subsets.n_size()]) out.emplace_back(m, n_set, gram.n());
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubsetPair> admissible_subset_pairs_brute_force(const CrossGram& gram, const Exponent& p,
                                                            std::size_t max_subset_size, bool localized) {
  std::vector<SubsetPair> out;
  const auto all = subsets_up_to(gram.n(), max_subset_size);
  const double global = mu_global(gram);
  for (const auto& m : all) {
    for (const auto& n_set : all) {
      SubsetPair pair(m, n_set, gram.n());
      const double mu = localized ? mu_local(gram, pair) : global;
      if (admissibility(pair, p, mu, localized).admissible) out.push_back(std::move(pair));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct RestartResult {
  double ratio = -1.0;
  DenseVector x;
};

std::string reproduction(const BasisPair& f, const BasisPair& g, const SubsetPair& s, const DenseVector& x,
                         double ratio) {
  std::ostringstream os;
  os.precision(17);
  os << "ratio " << ratio << " exceeds 1; pair_f " << digest_hex(f.digest()) << " pair_g " << digest_hex(g.digest())
     << " M {";
  for (auto i : s.m_set()) os << ' ' << i + 1;
  os << " } N {";
  for (auto i : s.n_set()) os << ' ' << i + 1;
  os << " } x [";
  for (std::size_t i = 0; i < x.dim(); ++i) os << ' ' << x[i].real() << (x[i].imag() < 0 ? "-" : "+") << std::abs(x[i].imag()) << 'i';
  os << " ]";
  return os.str();
}

}  // namespace

ExtremalResult extremal_ratio_search(const BasisPair& f, const BasisPair& g, const SubsetPair& subsets,
                                     const SearchConfig& config) {
  config.check();
  const CertificateEngine engine(f, g);
  const AdmissibilityReport adm = engine.admissibility(config.variant, subsets);
  if (!adm.admissible) {
    throw PreconditionError("extremal search needs admissible subsets (bound * mu = " +
                            std::to_string(adm.bound * adm.mu) + ")");
  }
  const PreparedSubsets prepared = prepare(subsets);
  const double p = engine.exponent().p();
  const double constant = *adm.constant;
  const Field field = join(f.field(), g.field());
  const std::size_t n = engine.n();

  auto ratio_of = [&](const DenseVector& x) {
    const Expansion e = engine.expand(x);
    const auto [tf, tg] = engine.tails(config.variant, prepared, e);
    const double rhs = constant * (tf + tg);
    if (rhs > 0.0) return e.norm / rhs;
    return e.norm > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  };
  auto normalized = [p](DenseVector x) {
    const double norm = p_norm(x, p);
    if (norm > 0.0) x *= Complex(1.0 / norm, 0.0);
    return x;
  };

  std::vector<RestartResult> restarts(config.restarts);
  parallel_for(config.restarts, [&](std::size_t r) {
    Rng rng(derive_seed(config.seed, r));
    DenseVector x(n, field);
    for (std::size_t i = 0; i < n; ++i) {
      x.set(i, field == Field::complex ? rng.complex_normal() : Complex(rng.normal(), 0.0));
    }
    x = normalized(std::move(x));
    double best = ratio_of(x);
    const std::size_t parts = field == Field::complex ? 2 : 1;
    for (std::size_t step = 0; step < config.steps; ++step) {
      const double h = config.step_size(step);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t part = 0; part < parts; ++part) {
          for (double sign : {1.0, -1.0}) {
            DenseVector y = x;
            y.set(i, y[i] + (part == 0 ? Complex(sign * h, 0.0) : Complex(0.0, sign * h)));
            if (p_norm(y, p) == 0.0) continue;
            y = normalized(std::move(y));
            const double v = ratio_of(y);
            if (v > best) {
              best = v;
              x = std::move(y);
            }
          }
        }
      }
    }
    restarts[r] = RestartResult{best, std::move(x)};
  });

  std::size_t winner = 0;
  for (std::size_t r = 1; r < restarts.size(); ++r) {
    if (restarts[r].ratio > restarts[winner].ratio) winner = r;
  }

  ExtremalResult result;
  result.p = p;
  result.subsets = subsets;
  result.config = config;
  result.best_x = normalized(restarts[winner].x);
  result.certificate = engine.certify(config.variant, prepared, adm, engine.expand(result.best_x));
  result.ratio = result.certificate.lhs / *result.certificate.rhs;
  result.trace.reserve(restarts.size());
  for (const auto& r : restarts) result.trace.push_back(r.ratio);

  const double worst = std::max(result.ratio, restarts[winner].ratio);
  if (!(worst <= 1.0 + kRatioTolerance)) {
    throw TheoremViolation(reproduction(f, g, subsets, result.best_x, worst));
  }
  return result;
}

std::vector<SharpnessRow> sharpness_report(std::span<const ExtremalResult> results) {
  if (results.empty()) throw DomainError("sharpness report needs at least one search result");
  std::map<std::tuple<std::size_t, double, std::size_t, std::size_t>, SharpnessRow> rows;
  for (const auto& r : results) {
    const auto key = std::make_tuple(r.subsets.universe(), r.p, r.subsets.m_size(), r.subsets.n_size());
    auto it = rows.find(key);
    if (it != rows.end() && it->second.max_ratio >= r.ratio) continue;
    SharpnessRow row;
    row.n = r.subsets.universe();
    row.p = r.p;
    row.m_size = r.subsets.m_size();
    row.n_size = r.subsets.n_size();
    row.variant = r.certificate.variant;
    row.max_ratio = r.ratio;
    row.gap = 1.0 - r.ratio;
    row.witness_digest = Digest().text("vector").complex_span(r.best_x.entries()).value();
    rows.insert_or_assign(key, row);
  }
  std::vector<SharpnessRow> out;
  out.reserve(rows.size());
  for (auto& [key, row] : rows) out.push_back(row);
  std::stable_sort(out.begin(), out.end(), [](const SharpnessRow& a, const SharpnessRow& b) { return a.gap < b.gap; });
  return out;
}

}  // namespace ul
