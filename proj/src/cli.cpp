#include "hammaps/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hammaps/cayley.hpp"
#include "hammaps/errors.hpp"

namespace hammaps {

using nlohmann::json;

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::kJson;
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "md") return OutputFormat::kMd;
  throw InvalidInput("unknown format '" + text + "' (expected json, csv or md)");
}

SearchOptions ReportConfig::search_options() const {
  SearchOptions o;
  o.group_cap = slow ? std::max(group_cap, kSlowGroupCap) : group_cap;
  o.arc_cap = arc_cap;
  o.workers = workers;
  return o;
}

ReportConfig config_from_env() {
  ReportConfig c;
  if (const char* env = std::getenv("HAMMAPS_CAP"); env != nullptr && *env != '\0') {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string(env).size() || v == 0) {
      throw InvalidInput(std::string("HAMMAPS_CAP must be a positive integer, got '") + env + "'");
    }
    c.group_cap = v;
  }
  return c;
}

Field field_for(std::uint32_t q) {
  PrimePower pp;
  if (!prime_power(q, pp)) throw InvalidInput(std::to_string(q) + " is not a prime power");
  return Field::make(pp.p, pp.e);
}

FieldElement resolve_omega(const Field& field, const std::optional<std::string>& text) {
  if (!text) return default_generator(field);
  FieldElement w = field.parse(*text);
  if (!is_generator(w)) {
    throw InvalidInput("omega = " + w.to_string() + " does not generate the multiplicative group of " +
                       field.to_string() + " (its order is " +
                       (w.is_zero() ? std::string("undefined") : std::to_string(element_order(w))) +
                       ")");
  }
  return w;
}

json map_header(std::uint32_t d, const FieldElement& omega) {
  const Field& f = omega.field();
  return {{"d", d},
          {"q", f.q()},
          {"p", f.p()},
          {"e", f.e()},
          {"omega", omega.to_string()},
          {"omega_min_poly", poly_to_string(minimal_polynomial(omega))}};
}

json invariants_json(const MapInvariants& inv) {
  return {{"type", {{"m", inv.m}, {"n", inv.n}, {"l", inv.l}}},
          {"chi", inv.chi},
          {"genus", inv.genus},
          {"aut_order", inv.aut_order},
          {"regular", inv.regular},
          {"reflexible", inv.reflexible}};
}

json census_json(const EmbeddingCensus& census) {
  json j;
  j["d"] = census.d;
  j["q"] = census.q;
  PrimePower pp;
  if (prime_power(census.q, pp)) {
    j["p"] = pp.p;
    j["e"] = pp.e;
  } else {
    j["p"] = nullptr;
    j["e"] = nullptr;
  }
  j["K"] = census.K;
  j["expected_count"] = census.expected_count ? json(*census.expected_count) : json(nullptr);
  j["count"] = census.maps.size();
  json maps = json::array();
  for (const auto& e : census.maps) {
    json m;
    m["omega"] = e.omega ? json(e.omega->to_string()) : json(nullptr);
    m["omega_min_poly"] =
        e.omega ? json(poly_to_string(minimal_polynomial(*e.omega))) : json(nullptr);
    m["type"] = {{"m", e.invariants.m}, {"n", e.invariants.n}, {"l", e.invariants.l}};
    m["chi"] = e.invariants.chi;
    m["genus"] = e.invariants.genus;
    m["aut_order"] = e.invariants.aut_order;
    m["reflexible"] = e.invariants.reflexible;
    m["mirror_partner_index"] = e.mirror_partner ? json(*e.mirror_partner) : json(nullptr);
    m["wilson_orbit_id"] = e.wilson_orbit;
    maps.push_back(std::move(m));
  }
  j["maps"] = std::move(maps);
  j["certified_by"] = to_string(census.certified_by);
  j["search"] = {{"x_candidates", census.stats.x_candidates},
                 {"x_classes", census.stats.x_classes},
                 {"y_candidates", census.stats.y_candidates},
                 {"accepted_pairs", census.stats.accepted_pairs}};
  return j;
}

json galois_json(const GaloisStructure& g) {
  return {{"q", g.q},
          {"p", g.p},
          {"e", g.e},
          {"d", g.d},
          {"units_mod_q_minus_1", g.units},
          {"p_subgroup", g.p_subgroup},
          {"quotient_invariants", g.quotient_invariants},
          {"degree", g.degree},
          {"n", g.n},
          {"h_subgroup", g.h_subgroup},
          {"rational", g.rational},
          {"field", g.field_description}};
}

json merged_json(std::uint32_t d, std::uint32_t q, const std::vector<std::uint32_t>& K,
                 const MergedExistence& m) {
  json j{{"d", d},
         {"q", q},
         {"K", K},
         {"verdict", to_string(m.verdict)},
         {"certified_by", to_string(m.certified_by)},
         {"search_certified", m.certified_by == Certification::kSearch},
         {"reason", m.reason}};
  j["census"] = m.census ? census_json(*m.census) : json(nullptr);
  if (m.witness) {
    const EulerGenus g = euler_genus(*m.witness);
    j["witness"] = {{"arcs", m.witness->arc_count()},
                    {"vertices", m.witness->vertex_count()},
                    {"type", type_of(*m.witness).to_string()},
                    {"genus", g.genus}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json construct_json(std::uint32_t d, std::uint32_t q, const std::optional<std::string>& omega,
                    const ReportConfig& config, std::optional<OrientedMap>* map_out) {
  const Field f = field_for(q);
  const FieldElement w = resolve_omega(f, omega);
  OrientedMap map = hamming_map(d, w, config.arc_cap);
  const MapInvariants inv = invariants(map);
  json j = map_header(d, w);
  j["type"] = type_of(map).to_string();
  j["invariants"] = invariants_json(inv);
  j["arcs"] = map.arc_count();
  j["vertices"] = map.vertex_count();
  j["faces"] = map.face_count();
  if (map_out) *map_out = std::move(map);
  return j;
}

json enumerate_json(std::uint32_t d, std::uint32_t q,
                    const std::optional<std::vector<std::uint32_t>>& K,
                    const ReportConfig& config) {
  const SearchOptions opts = config.search_options();
  if (K) return merged_json(d, q, *K, merged_existence(d, q, *K, opts));
  PrimePower pp;
  if (prime_power(q, pp)) return census_json(classify_hamming(d, q, opts));
  EmbeddingCensus census = enumerate_embeddings(MergedGraph(d, q), opts);
  if (!census.maps.empty()) {
    throw ConsistencyError("found embeddings of H(" + std::to_string(d) + "," +
                           std::to_string(q) + ") although q is not a prime power");
  }
  return census_json(census);
}

json iso_json(const OrientedMap& a, const OrientedMap& b) {
  auto phi = are_isomorphic(a, b);
  json j{{"isomorphic", phi.has_value()}};
  j["bijection"] = phi ? json(*phi) : json(nullptr);
  return j;
}

json report_json(std::uint32_t d, std::uint32_t q, const ReportConfig& config) {
  const Field f = field_for(q);
  const PredictedType pt = predicted_type(d, q);
  const std::int64_t pg = predicted_genus(d, q);
  std::vector<CensusEntry> entries;
  for (const auto& w : class_representatives(f)) {
    CensusEntry e{hamming_map(d, w, config.arc_cap), {}, {}, std::nullopt, 0, w};
    e.invariants = invariants(e.map);
    entries.push_back(std::move(e));
  }
  annotate_pairings(entries);
  json rows = json::array();
  for (const auto& e : entries) {
    const MapInvariants& inv = e.invariants;
    const bool matches = inv.regular && inv.m == pt.m && inv.n == pt.n && inv.l == pt.l &&
                         inv.genus == pg;
    if (!matches) {
      throw ConsistencyError("H(" + std::to_string(d) + ", " + e.omega->to_string() +
                             ") disagrees with the predicted type or genus");
    }
    json row = map_header(d, *e.omega);
    row["type"] = "{" + std::to_string(inv.m) + "," + std::to_string(inv.n) + "}_" +
                  std::to_string(inv.l);
    row["m"] = inv.m;
    row["n"] = inv.n;
    row["l"] = inv.l;
    row["chi"] = inv.chi;
    row["genus"] = inv.genus;
    row["aut_order"] = inv.aut_order;
    row["reflexible"] = inv.reflexible;
    row["mirror_partner_index"] = e.mirror_partner ? json(*e.mirror_partner) : json(nullptr);
    row["wilson_orbit_id"] = e.wilson_orbit;
    rows.push_back(std::move(row));
  }
  const auto expected = expected_hamming_count(d, q);
  return {{"d", d},
          {"q", q},
          {"predicted", {{"m", pt.m}, {"n", pt.n}, {"l", pt.l}, {"genus", pg}}},
          {"expected_count", expected ? json(*expected) : json(nullptr)},
          {"rows", rows}};
}

std::string render_report(const json& report, OutputFormat format) {
  if (format == OutputFormat::kJson) return report.dump(2) + "\n";
  static const char* const kColumns[] = {"d",     "q",         "omega",      "omega_min_poly",
                                         "type",  "genus",     "chi",        "aut_order",
                                         "reflexible", "mirror_partner_index", "wilson_orbit_id"};
  auto cell = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  std::ostringstream out;
  if (format == OutputFormat::kCsv) {
    bool first = true;
    for (const char* c : kColumns) {
      out << (first ? "" : ",") << c;
      first = false;
    }
    out << '\n';
    for (const auto& row : report.at("rows")) {
      first = true;
      for (const char* c : kColumns) {
        std::string s = cell(row.at(c));
        if (s.find_first_of(",\"") != std::string::npos) {
          std::string quoted = "\"";
          for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          s = quoted + "\"";
        }
        out << (first ? "" : ",") << s;
        first = false;
      }
      out << '\n';
    }
  } else {
    out << '|';
    for (const char* c : kColumns) out << ' ' << c << " |";
    out << "\n|";
    for (std::size_t i = 0; i < std::size(kColumns); ++i) out << "---|";
    out << '\n';
    for (const auto& row : report.at("rows")) {
      out << '|';
      for (const char* c : kColumns) out << ' ' << cell(row.at(c)) << " |";
      out << '\n';
    }
  }
  return out.str();
}

namespace {

OrientedMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open map file '" + path + "'");
  return read_map(in);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orientably regular embeddings of Hamming graphs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::uint64_t cap_flag = 0;
  std::size_t arc_cap = kDefaultArcCap;
  app.add_option("--cap", cap_flag, "Group-size cap (overrides HAMMAPS_CAP)");
  app.add_option("--arc-cap", arc_cap, "Arc-count cap")->check(CLI::PositiveNumber);

  std::uint32_t d = 0;
  std::uint32_t q = 0;
  std::optional<std::string> omega;
  std::string out_path;
  std::string format = "json";
  bool slow = false;
  unsigned workers = 1;
  std::vector<std::uint32_t> merged;
  std::string file_a;
  std::string file_b;
  std::int64_t j = 1;

  auto* construct = app.add_subcommand("construct", "Build the Hamming map H(d, omega)");
  construct->add_option("d", d, "Dimension")->required()->check(CLI::PositiveNumber);
  construct->add_option("q", q, "Field size")->required();
  construct->add_option("--omega", omega, "Generator of F_q* as a polynomial in t");
  construct->add_option("--out", out_path, "Map file (header goes to <out>.json)");

  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive census of regular embeddings");
  enumerate->add_option("d", d, "Dimension")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("q", q, "Alphabet size")->required();
  auto* merged_opt =
      enumerate->add_option("--merged", merged, "Distance set K, e.g. 1,2")->delimiter(',');
  enumerate->add_flag("--slow", slow, "Raise the group cap for the large cases");
  enumerate->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  enumerate->add_option("--out", out_path, "Write JSON here instead of standard output");

  auto* iso = app.add_subcommand("iso", "Test two map files for isomorphism");
  iso->add_option("a", file_a)->required();
  iso->add_option("b", file_b)->required();

  auto* wil = app.add_subcommand("wilson", "Apply the Wilson operation R -> R^j");
  wil->add_option("file", file_a)->required();
  wil->add_option("j", j)->required();
  wil->add_option("--out", out_path, "Write the map here instead of standard output");

  auto* mir = app.add_subcommand("mirror", "Mirror image R -> R^-1");
  mir->add_option("file", file_a)->required();
  mir->add_option("--out", out_path, "Write the map here instead of standard output");

  auto* gal = app.add_subcommand("galois", "Galois structure of the generator classes");
  gal->add_option("q", q, "Field size")->required();
  std::uint32_t gal_d = 1;
  gal->add_option("--d", gal_d, "Dimension used for the subgroup H of Z*_n")
      ->check(CLI::PositiveNumber);

  auto* rep = app.add_subcommand("report", "Invariant table of all Hamming maps H(d, omega)");
  rep->add_option("d", d, "Dimension")->required()->check(CLI::PositiveNumber);
  rep->add_option("q", q, "Field size")->required();
  rep->add_option("--format", format, "json, csv or md");
  rep->add_option("--out", out_path, "Write the report here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kInvalidInput);
  }

  try {
    ReportConfig config = config_from_env();
    if (cap_flag != 0) config.group_cap = cap_flag;
    config.arc_cap = arc_cap;
    config.slow = slow;
    config.workers = workers;
    config.output = out_path;

    if (*construct) {
      std::optional<OrientedMap> map;
      json j_out = construct_json(d, q, omega, config, &map);
      const std::string path =
          out_path.empty() ? "hamming_d" + std::to_string(d) + "_q" + std::to_string(q) + ".omap"
                           : out_path;
      write_text(path, map_to_string(*map));
      write_text(path + ".json", map_header(d, resolve_omega(field_for(q), omega)).dump(2) + "\n");
      j_out["map_file"] = path;
      out << j_out.dump(2) << '\n';
    } else if (*enumerate) {
      std::optional<std::vector<std::uint32_t>> K;
      if (merged_opt->count() > 0) K = merged;
      emit(enumerate_json(d, q, K, config).dump(2) + "\n", out_path, out);
    } else if (*iso) {
      out << iso_json(load_map(file_a), load_map(file_b)).dump() << '\n';
    } else if (*wil) {
      emit(map_to_string(wilson(load_map(file_a), j)), out_path, out);
    } else if (*mir) {
      emit(map_to_string(mirror(load_map(file_a))), out_path, out);
    } else if (*gal) {
      out << galois_json(galois_structure(q, gal_d)).dump(2) << '\n';
    } else if (*rep) {
      const OutputFormat fmt = parse_format(format);
      emit(render_report(report_json(d, q, config), fmt), out_path, out);
    }
  } catch (const CapExceeded& e) {
    err << "error: " << e.what();
    if (*enumerate && !slow) err << " (use --slow or raise --cap / HAMMAPS_CAP)";
    err << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  }
  return 0;
}

}  // namespace hammaps
