#include "ul/cli.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ul/digest.hpp"
#include "ul/io.hpp"
#include "ul/rng.hpp"

namespace ul::cli {
namespace {

using io::Json;

struct Options {
  std::string kind;
  std::string basis_f;
  std::string basis_g;
  std::string input;
  std::size_t n = 0;
  double p = 2.0;
  std::uint64_t seed = 0;
  std::string field = "complex";
  std::string out;
  std::string summary;
  std::string format = "json";
  std::vector<std::string> subsets;
  bool enumerate = false;
  std::size_t max_size = 3;
  std::string variant = "fgj";
  std::size_t random = 0;
  std::string vector_file;
  std::size_t trials = 64;
  std::size_t restarts = 0;
  std::size_t steps = 0;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

std::string with_manifest(Json body, const io::RunManifest& m) {
  body["manifest"] = io::manifest_to_json(m);
  return body.dump(2) + "\n";
}

io::RunManifest manifest(const std::string& command, Json config, std::vector<std::uint64_t> seeds,
                         std::vector<std::uint64_t> digests) {
  io::RunManifest m;
  m.command = command;
  m.config = std::move(config);
  m.seeds = std::move(seeds);
  m.input_digests = std::move(digests);
  m.timestamp = io::utc_timestamp();
  return m;
}

BasisPair load_basis(const std::string& path) { return io::basis_from_json(io::read_json_file(path)); }

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(start, end - start);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw InputError("bad subset index '" + std::string(item) + "'");
    }
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

// "M=1,3" "N=2" (either may be empty or absent) as 1-based indices.
SubsetPair parse_subsets(const std::vector<std::string>& tokens, std::size_t n) {
  std::vector<std::string> parts;
  for (const auto& t : tokens) {
    std::istringstream is(t);
    std::string word;
    while (is >> word) parts.push_back(word);
  }
  std::vector<std::size_t> m, nn;
  bool seen_m = false, seen_n = false;
  for (const auto& part : parts) {
    if (part.size() < 2 || part[1] != '=' || (part[0] != 'M' && part[0] != 'N')) {
      throw InputError("--subsets expects M=i,j,... and N=k,...; got '" + part + "'");
    }
    bool& seen = part[0] == 'M' ? seen_m : seen_n;
    if (seen) throw InputError(std::string("--subsets gives ") + part[0] + " twice");
    seen = true;
    (part[0] == 'M' ? m : nn) = parse_index_list(std::string_view(part).substr(2));
  }
  return SubsetPair::one_based(m, nn, n);
}

Field field_option(const std::string& name) {
  try {
    return parse_field(name);
  } catch (const std::exception&) {
    throw InputError("--field must be real or complex");
  }
}

Json common_config(const Options& o) {
  return Json{{"p", o.p}, {"seed", o.seed}};
}

int cmd_gen(const Options& o, std::ostream& out) {
  const Exponent p(o.p);
  if (o.n == 0) throw InputError("--n must be positive");
  BasisPair pair = canonical_basis(1, p);
  if (o.kind == "canonical") {
    pair = canonical_basis(o.n, p);
  } else if (o.kind == "dft") {
    if (!p.hilbert()) throw InputError("dft requires p = 2: the DFT is not an isometry of l^p for p != 2");
    pair = dft_basis(o.n, p);
  } else if (o.kind == "random-unitary") {
    if (!p.hilbert()) {
      throw InputError("random-unitary requires p = 2: a dense unitary is not an isometry of l^p for p != 2");
    }
    pair = random_basis(o.n, p, o.seed, field_option(o.field));
  } else if (o.kind == "random-genperm") {
    // random_isometry draws a generalized permutation for any p != 2.
    const DenseMatrix v = random_isometry(o.n, p.hilbert() ? Exponent(3.0) : p, o.seed, field_option(o.field));
    pair = BasisPair(p, v, v.adjoint());
  } else {
    throw InputError("unknown kind '" + o.kind + "' (canonical, dft, random-unitary, random-genperm)");
  }
  Json config = common_config(o);
  config["kind"] = o.kind;
  config["n"] = o.n;
  config["field"] = o.field;
  emit(o.out, with_manifest(io::basis_to_json(pair), manifest("gen", config, {o.seed}, {})), out);
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const BasisPair pair = load_basis(o.basis_f);
  const ValidationReport report = validate(pair, o.trials, o.seed);
  Json config{{"basis", o.basis_f}, {"trials", o.trials}, {"seed", o.seed}};
  emit(o.out, with_manifest(io::validation_to_json(report), manifest("validate", config, {o.seed}, {pair.digest()})),
       out);
  if (!report.valid) {
    err << "basis fails clause " << clause_name(*report.violated_clause()) << "\n";
    return kInputError;
  }
  return kOk;
}

int cmd_gram(const Options& o, std::ostream& out) {
  const BasisPair f = load_basis(o.basis_f);
  const BasisPair g = load_basis(o.basis_g);
  const CrossGram gram = cross_gram(f, g);
  Json body = io::gram_to_json(gram);
  body["mu"] = mu_global(gram);
  Json config{{"basis_f", o.basis_f}, {"basis_g", o.basis_g}};
  emit(o.out, with_manifest(std::move(body), manifest("gram", config, {}, {f.digest(), g.digest()})), out);
  return kOk;
}

std::vector<DenseVector> load_vectors(const std::string& path, std::size_t n) {
  const Json j = io::read_json_file(path);
  const Json& list = j.is_object() ? j.at("vectors") : j;
  if (!list.is_array()) throw InputError("vector file must hold an array of vectors");
  std::vector<DenseVector> out;
  for (const auto& v : list) {
    out.push_back(io::vector_from_json(v));
    if (out.back().dim() != n) throw InputError("vector dimension does not match the bases");
  }
  return out;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const BasisPair f = load_basis(o.basis_f);
  const BasisPair g = load_basis(o.basis_g);
  const Variant variant = parse_variant(o.variant);
  if (o.format != "json" && o.format != "csv") throw InputError("--format must be json or csv");
  if (o.subsets.empty() == !o.enumerate) throw InputError("give exactly one of --subsets and --enumerate");
  if ((o.random > 0) == !o.vector_file.empty()) throw InputError("give exactly one of --random k and --file");
  const CertificateEngine engine(f, g);
  const std::size_t n = engine.n();

  std::vector<SubsetPair> pairs;
  if (o.enumerate) {
    const CrossGram& gram = is_swapped(variant) ? engine.swapped_gram() : engine.forward_gram();
    if (o.max_size > n) throw InputError("--max-size exceeds n");
    pairs = admissible_subset_pairs(gram, engine.exponent(), o.max_size, is_localized(variant));
  } else {
    pairs.push_back(parse_subsets(o.subsets, n));
  }

  std::vector<DenseVector> vectors;
  if (o.random > 0) {
    for (std::size_t i = 0; i < o.random; ++i) {
      vectors.push_back(random_unit_vector(n, engine.exponent(), f.field() == Field::real && g.field() == Field::real
                                                                       ? Field::real
                                                                       : Field::complex,
                                           derive_seed(o.seed, i)));
    }
  } else {
    vectors = load_vectors(o.vector_file, n);
  }
  std::vector<Expansion> expansions;
  expansions.reserve(vectors.size());
  for (const auto& x : vectors) expansions.push_back(engine.expand(x));

  Json config = common_config(o);
  config["basis_f"] = o.basis_f;
  config["basis_g"] = o.basis_g;
  config["variant"] = variant_name(variant);
  config["subsets"] = o.subsets;
  config["enumerate"] = o.enumerate;
  config["max_size"] = o.max_size;
  config["random"] = o.random;
  config["file"] = o.vector_file;
  const io::RunManifest m = manifest("verify", config, {o.seed}, {f.digest(), g.digest()});

  std::ostringstream lines;
  lines << Json{{"manifest", io::manifest_to_json(m)}}.dump() << '\n';
  std::vector<io::SummaryRow> rows;
  bool violated = false;
  for (const auto& subsets : pairs) {
    const PreparedSubsets prepared = prepare(subsets);
    const AdmissibilityReport adm = engine.admissibility(variant, subsets);
    io::SummaryRow row{variant, n, engine.exponent().p(), subsets, adm.mu, adm.constant, std::nullopt};
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const Certificate c = engine.certify(variant, prepared, adm, expansions[i]);
      Json line = io::certificate_to_json(c);
      line["vector_index"] = i;
      lines << line.dump() << '\n';
      if (c.slack) {
        row.min_slack = row.min_slack ? std::min(*row.min_slack, *c.slack) : *c.slack;
        if (*c.slack < -kSlackTolerance) {
          violated = true;
          Json repro{{"certificate", io::certificate_to_json(c)},
                     {"x", io::vector_to_json(vectors[i])},
                     {"basis_f", io::basis_to_json(f)},
                     {"basis_g", io::basis_to_json(g)}};
          err << "theorem violation: " << repro.dump() << '\n';
        }
      }
    }
    rows.push_back(std::move(row));
  }
  const std::string csv = "# manifest " + io::manifest_to_json(m).dump() + "\n" + io::summary_csv(rows);
  if (!o.out.empty()) io::write_text_file(o.out, lines.str());
  if (!o.summary.empty()) io::write_text_file(o.summary, csv);
  if (o.format == "json" && o.out.empty()) out << lines.str();
  if (o.format == "csv" && o.summary.empty()) out << csv;
  return violated ? kViolation : kOk;
}

int cmd_annihilate(const Options& o, std::ostream& out, std::ostream& err) {
  const BasisPair f = load_basis(o.basis_f);
  const BasisPair g = load_basis(o.basis_g);
  if (o.subsets.empty()) throw InputError("annihilate needs --subsets");
  const SubsetPair subsets = parse_subsets(o.subsets, f.n());
  const AnnihilationReport report = annihilation_test(f, g, subsets);
  Json config{{"basis_f", o.basis_f}, {"basis_g", o.basis_g}, {"subsets", io::subsets_to_json(subsets)}};
  emit(o.out,
       with_manifest(io::annihilation_to_json(report), manifest("annihilate", config, {}, {f.digest(), g.digest()})),
       out);
  if (report.intersection_dim > 0) {
    err << "intersection dimension " << report.intersection_dim << ": a nonzero vector is supported on both sets\n";
    return kWitnessFound;
  }
  return kOk;
}

int cmd_search(const Options& o, std::ostream& out) {
  const BasisPair f = load_basis(o.basis_f);
  const BasisPair g = load_basis(o.basis_g);
  if (o.subsets.empty()) throw InputError("search needs --subsets");
  const SubsetPair subsets = parse_subsets(o.subsets, f.n());
  SearchConfig config;
  config.seed = o.seed;
  config.variant = parse_variant(o.variant);
  if (o.restarts > 0) config.restarts = o.restarts;
  if (o.steps > 0) config.steps = o.steps;
  const ExtremalResult result = extremal_ratio_search(f, g, subsets, config);
  Json echo{{"basis_f", o.basis_f},
            {"basis_g", o.basis_g},
            {"subsets", io::subsets_to_json(subsets)},
            {"search", io::search_config_to_json(config)}};
  emit(o.out, with_manifest(io::extremal_to_json(result), manifest("search", echo, {o.seed}, {f.digest(), g.digest()})),
       out);
  return kOk;
}

// Accepts a gram file ("G"), a basis file (its synthesis matrix "T") or a
// bare matrix file {"field", "A"}.
int cmd_opnorm(const Options& o, std::ostream& out) {
  const Json j = io::read_json_file(o.input);
  const Exponent p(o.p);
  NormBudget budget;
  if (o.restarts > 0) budget.restarts = o.restarts;
  NormEstimate estimate;
  std::uint64_t digest = 0;
  Json config = common_config(o);
  config["input"] = o.input;
  if (j.contains("G")) {
    const CrossGram gram = io::gram_from_json(j);
    digest = hash_combine(gram.source_f, gram.source_g);
    if (!o.subsets.empty()) {
      const SubsetPair subsets = parse_subsets(o.subsets, gram.n());
      config["subsets"] = io::subsets_to_json(subsets);
      estimate = composite_opnorm(gram, subsets, p, budget, o.seed);
    } else {
      estimate = opnorm_p(gram.g, p, budget, o.seed);
    }
  } else {
    if (!o.subsets.empty()) throw InputError("--subsets needs a gram file");
    DenseMatrix a(1, 1);
    if (j.contains("T")) {
      const BasisPair pair = io::basis_from_json(j);
      digest = pair.digest();
      a = pair.synthesis();
    } else if (j.contains("A")) {
      a = io::matrix_from_json(j.at("A"), parse_field(j.value("field", std::string("complex"))));
      Digest d;
      d.complex_span({a.data(), a.rows() * a.cols()});
      digest = d.value();
    } else {
      throw InputError("opnorm input needs a G, T or A matrix");
    }
    estimate = opnorm_p(a, p, budget, o.seed);
  }
  emit(o.out, with_manifest(io::norm_estimate_to_json(estimate), manifest("opnorm", config, {o.seed}, {digest})), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ulab: p-orthonormal bases and uncertainty certificates"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "write a basis pair");
  gen->add_option("kind", o.kind, "canonical | dft | random-unitary | random-genperm")->required();
  gen->add_option("--n", o.n, "dimension")->required();
  gen->add_option("--p", o.p, "exponent, 1 < p < inf");
  gen->add_option("--seed", o.seed);
  gen->add_option("--field", o.field, "real | complex (random kinds)");
  gen->add_option("--out", o.out);

  auto* val = app.add_subcommand("validate", "check the basis axioms");
  val->add_option("basis", o.basis_f)->required();
  val->add_option("--trials", o.trials, "random isometry probes");
  val->add_option("--seed", o.seed);
  val->add_option("--out", o.out);

  auto* gram = app.add_subcommand("gram", "cross-Gram matrix g_k(tau_j)");
  gram->add_option("basis_f", o.basis_f)->required();
  gram->add_option("basis_g", o.basis_g)->required();
  gram->add_option("--out", o.out);

  auto* ver = app.add_subcommand("verify", "emit uncertainty certificates");
  ver->add_option("basis_f", o.basis_f)->required();
  ver->add_option("basis_g", o.basis_g)->required();
  ver->add_option("--subsets", o.subsets, "M=1,3 N=2 (1-based)")->expected(1, 2);
  ver->add_flag("--enumerate", o.enumerate, "all admissible pairs up to --max-size");
  ver->add_option("--max-size", o.max_size);
  ver->add_option("--variant", o.variant, "fgj | swapped | local | swapped-local");
  ver->add_option("--random", o.random, "number of seeded random unit vectors");
  ver->add_option("--seed", o.seed);
  ver->add_option("--file", o.vector_file, "JSON array of vectors");
  ver->add_option("--out", o.out, "certificates as JSON lines");
  ver->add_option("--summary", o.summary, "CSV summary");
  ver->add_option("--format", o.format, "stdout format: json | csv");

  auto* ann = app.add_subcommand("annihilate", "intersection of the two coordinate subspaces");
  ann->add_option("basis_f", o.basis_f)->required();
  ann->add_option("basis_g", o.basis_g)->required();
  ann->add_option("--subsets", o.subsets)->expected(1, 2)->required();
  ann->add_option("--out", o.out);

  auto* search = app.add_subcommand("search", "extremal ratio search");
  search->add_option("basis_f", o.basis_f)->required();
  search->add_option("basis_g", o.basis_g)->required();
  search->add_option("--subsets", o.subsets)->expected(1, 2)->required();
  search->add_option("--variant", o.variant);
  search->add_option("--seed", o.seed);
  search->add_option("--restarts", o.restarts);
  search->add_option("--steps", o.steps);
  search->add_option("--out", o.out);

  auto* opn = app.add_subcommand("opnorm", "p -> p operator norm interval");
  opn->add_option("input", o.input, "gram, basis or matrix file")->required();
  opn->add_option("--p", o.p);
  opn->add_option("--subsets", o.subsets, "composite P_N G P_M of a gram")->expected(1, 2);
  opn->add_option("--seed", o.seed);
  opn->add_option("--restarts", o.restarts);
  opn->add_option("--out", o.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ulab: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*gen) return cmd_gen(o, out);
    if (*val) return cmd_validate(o, out, err);
    if (*gram) return cmd_gram(o, out);
    if (*ver) return cmd_verify(o, out, err);
    if (*ann) return cmd_annihilate(o, out, err);
    if (*search) return cmd_search(o, out);
    if (*opn) return cmd_opnorm(o, out);
  } catch (const TheoremViolation& e) {
    err << "ulab: theorem violation: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    err << "ulab: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace ul::cli
