#pragma once

// Command-line front end. Every command is also available as a function
// returning JSON so the Python module and the tests share one code path.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hammaps/classify.hpp"
#include "hammaps/ffield.hpp"
#include "hammaps/omap.hpp"

namespace hammaps {

inline constexpr std::uint64_t kSlowGroupCap = 100'000'000;

enum class OutputFormat { kJson, kCsv, kMd };
// Throws InvalidInput for anything but "json", "csv", "md".
OutputFormat parse_format(const std::string& text);

struct ReportConfig {
  OutputFormat format = OutputFormat::kJson;
  // Empty: standard output.
  std::string output;
  std::uint64_t group_cap = kDefaultGroupCap;
  std::size_t arc_cap = kDefaultArcCap;
  bool slow = false;
  unsigned workers = 1;

  SearchOptions search_options() const;
};

// Defaults, with the group cap taken from HAMMAPS_CAP when set.
ReportConfig config_from_env();

// Throws InvalidInput unless q is a prime power.
Field field_for(std::uint32_t q);
// Parses omega in t, or returns the default generator. Throws InvalidInput if
// the element does not generate F*.
FieldElement resolve_omega(const Field& field, const std::optional<std::string>& text);

// {d, q, p, e, omega, omega_min_poly}
nlohmann::json map_header(std::uint32_t d, const FieldElement& omega);
nlohmann::json invariants_json(const MapInvariants& inv);
nlohmann::json census_json(const EmbeddingCensus& census);
nlohmann::json galois_json(const GaloisStructure& g);
nlohmann::json merged_json(std::uint32_t d, std::uint32_t q, const std::vector<std::uint32_t>& K,
                           const MergedExistence& m);

// Header plus invariants of H(d, omega); the map itself goes to `map_out`.
nlohmann::json construct_json(std::uint32_t d, std::uint32_t q,
                              const std::optional<std::string>& omega,
                              const ReportConfig& config,
                              std::optional<OrientedMap>* map_out = nullptr);
// Census of H(d,q), or the merged-graph verdict when K is given.
nlohmann::json enumerate_json(std::uint32_t d, std::uint32_t q,
                              const std::optional<std::vector<std::uint32_t>>& K,
                              const ReportConfig& config);
nlohmann::json iso_json(const OrientedMap& a, const OrientedMap& b);
// One row per generator class of F_q with invariants, predictions and
// pairings. Throws ConsistencyError if a row disagrees with its prediction.
nlohmann::json report_json(std::uint32_t d, std::uint32_t q, const ReportConfig& config);
std::string render_report(const nlohmann::json& report, OutputFormat format);

// Parses argv and runs one subcommand. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hammaps
