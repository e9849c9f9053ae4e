#include "ul/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "ul/digest.hpp"

namespace ul::io {
namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> number_or_null(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

Json entry_to_json(const Complex& z, Field field) {
  if (field == Field::real) return Json(z.real());
  return Json::array({z.real(), z.imag()});
}

Complex entry_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 1 && j[0].is_number()) return {j[0].get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw StructuralError("scalar entries must be a number, [re] or [re, im]; got " + j.dump());
}

Json index_array(const std::vector<std::size_t>& s) {
  Json out = Json::array();
  for (auto i : s) out.push_back(i + 1);
  return out;
}

std::vector<std::size_t> index_array_from(const Json& j) {
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(v.get<std::size_t>());
  return out;
}

Json digest_json(std::uint64_t d) { return digest_hex(d); }
std::uint64_t digest_from(const Json& j) { return parse_digest_hex(j.get<std::string>()); }

Clause parse_clause(std::string_view name) {
  for (auto c : {Clause::biorthogonality, Clause::unit_vector_norm, Clause::unit_functional_norm,
                 Clause::synthesis_isometry}) {
    if (clause_name(c) == name) return c;
  }
  throw StructuralError("unknown clause '" + std::string(name) + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

Json matrix_to_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(entry_to_json(m(r, c), m.field()));
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseMatrix matrix_from_json(const Json& j, Field field) {
  if (!j.is_array() || j.empty()) throw StructuralError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw StructuralError("matrix rows must all have the same length");
    for (const auto& e : row) entries.push_back(entry_from_json(e));
  }
  return DenseMatrix(rows, cols, std::move(entries), field);
}

Json vector_to_json(const DenseVector& v) {
  Json entries = Json::array();
  for (const auto& z : v.entries()) entries.push_back(entry_to_json(z, v.field()));
  return Json{{"field", field_name(v.field())}, {"entries", std::move(entries)}};
}

DenseVector vector_from_json(const Json& j) {
  if (j.is_object()) {
    const Field field = parse_field(j.at("field").get<std::string>());
    std::vector<Complex> e;
    for (const auto& v : j.at("entries")) e.push_back(entry_from_json(v));
    return DenseVector(std::move(e), field);
  }
  if (!j.is_array()) throw StructuralError("vector must be an object or an array of entries");
  std::vector<Complex> e;
  bool complex = false;
  for (const auto& v : j) {
    e.push_back(entry_from_json(v));
    complex = complex || e.back().imag() != 0.0;
  }
  return DenseVector(std::move(e), complex ? Field::complex : Field::real);
}

Json basis_to_json(const BasisPair& pair) {
  return Json{{"n", pair.n()},
              {"p", pair.p()},
              {"field", field_name(pair.field())},
              {"T", matrix_to_json(pair.synthesis())},
              {"F", matrix_to_json(pair.analysis())}};
}

BasisPair basis_from_json(const Json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    const Exponent p(j.at("p").get<double>());
    const Field field = parse_field(j.at("field").get<std::string>());
    DenseMatrix t = matrix_from_json(j.at("T"), field);
    DenseMatrix f = matrix_from_json(j.at("F"), field);
    if (t.rows() != n || f.rows() != n) throw StructuralError("declared n does not match the matrices");
    return BasisPair(p, std::move(t), std::move(f));
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed basis file: ") + e.what());
  }
}

Json gram_to_json(const CrossGram& gram) {
  return Json{{"n", gram.n()},
              {"field", field_name(gram.g.field())},
              {"G", matrix_to_json(gram.g)},
              {"source_f", digest_json(gram.source_f)},
              {"source_g", digest_json(gram.source_g)}};
}

CrossGram gram_from_json(const Json& j) {
  const Field field = parse_field(j.at("field").get<std::string>());
  return CrossGram{matrix_from_json(j.at("G"), field), digest_from(j.at("source_f")), digest_from(j.at("source_g"))};
}

Json subsets_to_json(const SubsetPair& s) {
  return Json{{"n", s.universe()}, {"M", index_array(s.m_set())}, {"N", index_array(s.n_set())}};
}

SubsetPair subsets_from_json(const Json& j) {
  return SubsetPair::one_based(index_array_from(j.at("M")), index_array_from(j.at("N")), j.at("n").get<std::size_t>());
}

Json admissibility_to_json(const AdmissibilityReport& r) {
  return Json{{"mu", r.mu},
              {"bound", r.bound},
              {"admissible", r.admissible},
              {"constant", optional_number(r.constant)},
              {"vacuous", r.vacuous},
              {"localized", r.localized}};
}

AdmissibilityReport admissibility_from_json(const Json& j) {
  AdmissibilityReport r;
  r.mu = j.at("mu").get<double>();
  r.bound = j.at("bound").get<double>();
  r.admissible = j.at("admissible").get<bool>();
  r.constant = number_or_null(j, "constant");
  r.vacuous = j.at("vacuous").get<bool>();
  r.localized = j.at("localized").get<bool>();
  return r;
}

Json validation_to_json(const ValidationReport& r) {
  Json violations = Json::array();
  for (auto c : r.violations) violations.push_back(clause_name(c));
  return Json{{"valid", r.valid},
              {"violated_clause", r.violated_clause() ? Json(clause_name(*r.violated_clause())) : Json(nullptr)},
              {"violations", std::move(violations)},
              {"witness", r.witness ? vector_to_json(*r.witness) : Json(nullptr)},
              {"witness_mismatch", r.witness_mismatch},
              {"biorthogonality_error", r.biorthogonality_error},
              {"vector_norm_error", r.vector_norm_error},
              {"functional_norm_error", r.functional_norm_error},
              {"isometry_error", r.isometry_error}};
}

ValidationReport validation_from_json(const Json& j) {
  ValidationReport r;
  r.valid = j.at("valid").get<bool>();
  for (const auto& c : j.at("violations")) r.violations.push_back(parse_clause(c.get<std::string>()));
  if (!j.at("witness").is_null()) r.witness = vector_from_json(j.at("witness"));
  r.witness_mismatch = j.at("witness_mismatch").get<double>();
  r.biorthogonality_error = j.at("biorthogonality_error").get<double>();
  r.vector_norm_error = j.at("vector_norm_error").get<double>();
  r.functional_norm_error = j.at("functional_norm_error").get<double>();
  r.isometry_error = j.at("isometry_error").get<double>();
  return r;
}

Json certificate_to_json(const Certificate& c) {
  return Json{{"variant", variant_name(c.variant)},
              {"subsets", subsets_to_json(c.subsets)},
              {"lhs", c.lhs},
              {"rhs", optional_number(c.rhs)},
              {"constant", optional_number(c.constant)},
              {"tail_f", c.tail_f},
              {"tail_g", c.tail_g},
              {"slack", optional_number(c.slack)},
              {"admissibility", admissibility_to_json(c.admissibility)},
              {"pair_f", digest_json(c.pair_f)},
              {"pair_g", digest_json(c.pair_g)},
              {"input_digest", digest_json(c.input_digest)},
              {"tool_version", kToolVersion}};
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.variant = parse_variant(j.at("variant").get<std::string>());
  c.subsets = subsets_from_json(j.at("subsets"));
  c.lhs = j.at("lhs").get<double>();
  c.rhs = number_or_null(j, "rhs");
  c.constant = number_or_null(j, "constant");
  c.tail_f = j.at("tail_f").get<double>();
  c.tail_g = j.at("tail_g").get<double>();
  c.slack = number_or_null(j, "slack");
  c.admissibility = admissibility_from_json(j.at("admissibility"));
  c.pair_f = digest_from(j.at("pair_f"));
  c.pair_g = digest_from(j.at("pair_g"));
  c.input_digest = digest_from(j.at("input_digest"));
  return c;
}

Json norm_estimate_to_json(const NormEstimate& e) {
  return Json{{"lower", e.lower},
              {"upper", e.upper},
              {"witness", vector_to_json(e.witness)},
              {"method", method_name(e.method)},
              {"lower_method", method_name(e.lower_method)},
              {"converged", e.converged},
              {"zero_operator", e.zero_operator}};
}

NormEstimate norm_estimate_from_json(const Json& j) {
  NormEstimate e;
  e.lower = j.at("lower").get<double>();
  e.upper = j.at("upper").get<double>();
  e.witness = vector_from_json(j.at("witness"));
  e.method = parse_method(j.at("method").get<std::string>());
  e.lower_method = parse_method(j.at("lower_method").get<std::string>());
  e.converged = j.at("converged").get<bool>();
  e.zero_operator = j.at("zero_operator").get<bool>();
  return e;
}

Json annihilation_to_json(const AnnihilationReport& r) {
  return Json{{"intersection_dim", r.intersection_dim},
              {"smallest_gap", optional_number(r.smallest_gap)},
              {"witness", r.witness ? vector_to_json(*r.witness) : Json(nullptr)},
              {"residual_f", r.residual_f},
              {"residual_g", r.residual_g}};
}

AnnihilationReport annihilation_from_json(const Json& j) {
  AnnihilationReport r;
  r.intersection_dim = j.at("intersection_dim").get<std::size_t>();
  r.smallest_gap = number_or_null(j, "smallest_gap");
  if (!j.at("witness").is_null()) r.witness = vector_from_json(j.at("witness"));
  r.residual_f = j.at("residual_f").get<double>();
  r.residual_g = j.at("residual_g").get<double>();
  return r;
}

Json search_config_to_json(const SearchConfig& c) {
  return Json{{"max_subset_size", c.max_subset_size},
              {"restarts", c.restarts},
              {"steps", c.steps},
              {"initial_step", c.initial_step},
              {"step_decay", c.step_decay},
              {"decay_interval", c.decay_interval},
              {"seed", c.seed},
              {"variant", variant_name(c.variant)}};
}

SearchConfig search_config_from_json(const Json& j) {
  SearchConfig c;
  c.max_subset_size = j.at("max_subset_size").get<std::size_t>();
  c.restarts = j.at("restarts").get<std::size_t>();
  c.steps = j.at("steps").get<std::size_t>();
  c.initial_step = j.at("initial_step").get<double>();
  c.step_decay = j.at("step_decay").get<double>();
  c.decay_interval = j.at("decay_interval").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.variant = parse_variant(j.at("variant").get<std::string>());
  return c;
}

Json extremal_to_json(const ExtremalResult& r) {
  return Json{{"best_x", vector_to_json(r.best_x)},
              {"ratio", r.ratio},
              {"p", r.p},
              {"subsets", subsets_to_json(r.subsets)},
              {"certificate", certificate_to_json(r.certificate)},
              {"trace", r.trace},
              {"config", search_config_to_json(r.config)}};
}

ExtremalResult extremal_from_json(const Json& j) {
  ExtremalResult r;
  r.best_x = vector_from_json(j.at("best_x"));
  r.ratio = j.at("ratio").get<double>();
  r.p = j.at("p").get<double>();
  r.subsets = subsets_from_json(j.at("subsets"));
  r.certificate = certificate_from_json(j.at("certificate"));
  r.trace = j.at("trace").get<std::vector<double>>();
  r.config = search_config_from_json(j.at("config"));
  return r;
}

Json manifest_to_json(const RunManifest& m) {
  Json digests = Json::array();
  for (auto d : m.input_digests) digests.push_back(digest_hex(d));
  return Json{{"command", m.command},       {"config", m.config},          {"tool_version", m.tool_version},
              {"seeds", m.seeds},           {"input_digests", digests},    {"timestamp", m.timestamp}};
}

RunManifest manifest_from_json(const Json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.config = j.at("config");
  m.tool_version = j.at("tool_version").get<std::string>();
  m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  for (const auto& d : j.at("input_digests")) m.input_digests.push_back(digest_from(d));
  m.timestamp = j.at("timestamp").get<std::string>();
  return m;
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  // Reproducible builds convention: a fixed epoch makes outputs byte-identical.
  if (const char* fixed = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(fixed, &end, 10);
    if (end != fixed && *end == '\0' && v >= 0) now = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {
std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string joined_indices(const std::vector<std::size_t>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i] + 1);
  }
  return out;
}
}  // namespace

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream os;
  os << "variant,n,p,M_size,N_size,mu,constant,min_slack,M,N\n";
  for (const auto& r : rows) {
    os << variant_name(r.variant) << ',' << r.n << ',' << format_double(r.p) << ',' << r.subsets.m_size() << ','
       << r.subsets.n_size() << ',' << format_double(r.mu) << ',' << optional_cell(r.constant) << ','
       << optional_cell(r.min_slack) << ',' << joined_indices(r.subsets.m_set()) << ','
       << joined_indices(r.subsets.n_set()) << '\n';
  }
  return os.str();
}

std::string sharpness_csv(const std::vector<SharpnessRow>& rows) {
  std::ostringstream os;
  os << "n,p,M_size,N_size,variant,max_ratio,gap,witness_digest\n";
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.p) << ',' << r.m_size << ',' << r.n_size << ',' << variant_name(r.variant)
       << ',' << format_double(r.max_ratio) << ',' << format_double(r.gap) << ',' << digest_hex(r.witness_digest)
       << '\n';
  }
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot write '" + path + "'");
  out << text;
  if (!out) throw StructuralError("write to '" + path + "' failed");
}

}  // namespace ul::io
