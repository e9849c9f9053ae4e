#pragma once

// JSON and CSV encodings for everything the CLI reads or writes.
//
// Complex entries are [re, im]; real-field entries are plain numbers (readers
// also accept [re] and [re, im]). Subsets are 1-based index arrays. Digests
// are 16-digit lowercase hex strings.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ul/search.hpp"

namespace ul::io {

using Json = nlohmann::json;

inline constexpr std::string_view kToolVersion = "0.1.0";

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

Json matrix_to_json(const DenseMatrix& m);
DenseMatrix matrix_from_json(const Json& j, Field field);

Json vector_to_json(const DenseVector& v);
// Accepts {"field", "entries"} or a bare entry array (complex if any entry
// has a nonzero imaginary part).
DenseVector vector_from_json(const Json& j);

Json basis_to_json(const BasisPair& pair);
BasisPair basis_from_json(const Json& j);

Json gram_to_json(const CrossGram& gram);
CrossGram gram_from_json(const Json& j);

Json subsets_to_json(const SubsetPair& s);
SubsetPair subsets_from_json(const Json& j);

Json admissibility_to_json(const AdmissibilityReport& r);
AdmissibilityReport admissibility_from_json(const Json& j);

Json validation_to_json(const ValidationReport& r);
ValidationReport validation_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json norm_estimate_to_json(const NormEstimate& e);
NormEstimate norm_estimate_from_json(const Json& j);

Json annihilation_to_json(const AnnihilationReport& r);
AnnihilationReport annihilation_from_json(const Json& j);

Json search_config_to_json(const SearchConfig& c);
SearchConfig search_config_from_json(const Json& j);

Json extremal_to_json(const ExtremalResult& r);
ExtremalResult extremal_from_json(const Json& j);

struct RunManifest {
  std::string command;
  Json config = Json::object();
  std::string tool_version{kToolVersion};
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint64_t> input_digests;
  std::string timestamp;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};
Json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);
// UTC ISO-8601; SOURCE_DATE_EPOCH overrides the clock.
std::string utc_timestamp();

// One CSV row per certificate group: variant,n,p,M_size,N_size,mu,constant,min_slack,M,N
struct SummaryRow {
  Variant variant = Variant::fgj;
  std::size_t n = 0;
  double p = 2.0;
  SubsetPair subsets = SubsetPair::empty(1);
  double mu = 0.0;
  std::optional<double> constant;
  std::optional<double> min_slack;
};
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string sharpness_csv(const std::vector<SharpnessRow>& rows);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace ul::io
