// acceptance.cpp
// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.
//
//   1  golden invariant table through the report command
//   2  exhaustive census counts, including the slow tier
//   3  census equals the set of Hamming maps
//   4  Frobenius classes are the isomorphism classes over F_25
//   5  invariant suites (Petrie length, power sums, element orders,
//      Cayley predictions, Wilson/mirror algebra)
//   6  reflexible exactly for q <= 4
//   7  Galois structure
//   8  merged Hamming graphs

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hammaps/cayley.hpp"
#include "hammaps/classify.hpp"
#include "hammaps/cli.hpp"
#include "hammaps/errors.hpp"

using namespace hammaps;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failure messages for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

struct DQ {
  std::uint32_t d;
  std::uint32_t q;
};

std::string dq(std::uint32_t d, std::uint32_t q) {
  return "(" + std::to_string(d) + "," + std::to_string(q) + ")";
}

Field field_of(std::uint32_t q) { return field_for(q); }

// (d, q) with q a prime power <= 25 and at most `max_arcs` arcs.
std::vector<DQ> test_matrix(std::uint64_t max_arcs) {
  std::vector<DQ> out;
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u}) {
    for (std::uint32_t d = 1;; ++d) {
      std::uint64_t arcs = std::uint64_t{d} * (q - 1);
      for (std::uint32_t i = 0; i < d; ++i) arcs *= q;
      if (arcs > max_arcs) break;
      out.push_back({d, q});
    }
  }
  return out;
}

// ---------------------------------------------------------------- 1

Check criterion_golden_table() {
  struct Row {
    std::uint32_t d, q;
    const char* type;
    std::int64_t genus;
    std::size_t aut;
  };
  const std::vector<Row> rows = {
      {2, 2, "{4,2}_4", 0, 8},        {2, 3, "{4,4}_6", 1, 36},
      {2, 4, "{6,6}_4", 9, 96},       {2, 5, "{8,8}_10", 26, 200},
      {2, 7, "{12,12}_14", 99, 588},  {3, 2, "{6,3}_4", 1, 24},
      {3, 3, "{9,6}_6", 19, 162},     {3, 4, "{9,9}_4", 81, 576},
      {4, 2, "{8,4}_4", 5, 64},       {4, 3, "{8,8}_6", 82, 648},
      {5, 2, "{10,5}_4", 17, 160},    {6, 2, "{12,6}_4", 49, 384},
      {2, 25, "{48,48}_10", 6876, 48 * 625},
  };
  Check c;
  const auto t0 = Clock::now();
  const ReportConfig config;
  for (const Row& r : rows) {
    const auto report = report_json(r.d, r.q, config);
    const auto& out = report.at("rows");
    c.expect(!out.empty(), dq(r.d, r.q) + ": no rows");
    for (const auto& row : out) {
      const std::string where = dq(r.d, r.q) + " omega=" + row.at("omega").get<std::string>();
      c.expect(row.at("type").get<std::string>() == r.type,
               where + ": type " + row.at("type").get<std::string>() + " != " + r.type);
      c.expect(row.at("genus").get<std::int64_t>() == r.genus,
               where + ": genus " + row.at("genus").dump());
      c.expect(row.at("aut_order").get<std::size_t>() == r.aut,
               where + ": |Aut+| " + row.at("aut_order").dump());
    }
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s exceeds 60 s");
  return c;
}

// ---------------------------------------------------------------- 2, 3

struct CensusCase {
  std::uint32_t d, q;
  std::size_t expected;
  double time_limit;
  bool slow;
};

const std::vector<CensusCase> kCensusCases = {
    {1, 3, 1, 300, false}, {1, 4, 1, 300, false}, {1, 5, 2, 300, false},
    {1, 7, 2, 300, false}, {2, 2, 1, 300, false}, {2, 3, 1, 300, false},
    {2, 4, 1, 300, false}, {2, 5, 2, 300, false}, {3, 3, 1, 300, false},
    {1, 6, 0, 60, false},  {3, 2, 2, 300, false}, {2, 6, 0, 1800, true},
    {2, 7, 2, 1800, true},
};

std::map<std::pair<std::uint32_t, std::uint32_t>, EmbeddingCensus> g_census;

Check criterion_census_counts() {
  Check c;
  for (const CensusCase& k : kCensusCases) {
    SearchOptions opts;
    if (k.slow) opts.group_cap = kSlowGroupCap;
    const auto t0 = Clock::now();
    try {
      EmbeddingCensus census = enumerate_embeddings(MergedGraph(k.d, k.q), opts);
      const double elapsed = seconds_since(t0);
      c.expect(census.maps.size() == k.expected,
               dq(k.d, k.q) + ": found " + std::to_string(census.maps.size()) + ", want " +
                   std::to_string(k.expected));
      c.expect(census.certified_by == Certification::kSearch, dq(k.d, k.q) + ": not search");
      c.expect(elapsed < k.time_limit, dq(k.d, k.q) + ": " + std::to_string(elapsed) + " s");
      const auto predicted = expected_hamming_count(k.d, k.q);
      c.expect(predicted && *predicted == k.expected,
               dq(k.d, k.q) + ": expected_hamming_count disagrees");
      g_census.emplace(std::make_pair(k.d, k.q), std::move(census));
    } catch (const Error& e) {
      c.expect(false, dq(k.d, k.q) + ": " + e.what());
    }
  }
  return c;
}

Check criterion_census_equals_construction() {
  Check c;
  for (const CensusCase& k : kCensusCases) {
    if (k.q <= 2) continue;
    const auto it = g_census.find({k.d, k.q});
    if (it == g_census.end()) {
      c.expect(false, dq(k.d, k.q) + ": census unavailable");
      continue;
    }
    std::set<std::vector<std::uint32_t>> found;
    for (const auto& e : it->second.maps) found.insert(e.code);
    std::set<std::vector<std::uint32_t>> built;
    PrimePower pp;
    if (prime_power(k.q, pp)) {
      for (const auto& w : generator_classes(field_of(k.q)).generators) {
        built.insert(canonical_code(hamming_map(k.d, w)));
      }
    }
    std::size_t divergences = 0;
    for (const auto& code : found) divergences += built.count(code) == 0;
    for (const auto& code : built) divergences += found.count(code) == 0;
    c.expect(divergences == 0, dq(k.d, k.q) + ": " + std::to_string(divergences) +
                                   " divergences between census and Hamming maps");
  }
  return c;
}

// ---------------------------------------------------------------- 4

Check criterion_frobenius_classes() {
  Check c;
  const Field f = Field::make(5, 2);
  const auto gc = generator_classes(f);
  c.expect(gc.generators.size() == 8, "F_25 has " + std::to_string(gc.generators.size()) +
                                          " generators");
  c.expect(gc.classes.size() == 4, "F_25 has " + std::to_string(gc.classes.size()) + " classes");
  std::map<std::uint32_t, std::size_t> cls;
  for (std::size_t i = 0; i < gc.classes.size(); ++i) {
    for (const auto& w : gc.classes[i]) cls[w.code()] = i;
  }
  for (std::uint32_t d : {1u, 2u}) {
    std::vector<OrientedMap> maps;
    for (const auto& w : gc.generators) maps.push_back(hamming_map(d, w));
    std::size_t pairs = 0;
    // Union-find over isomorphism to count classes.
    std::vector<std::size_t> parent(maps.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < maps.size(); ++i) {
      for (std::size_t j = i + 1; j < maps.size(); ++j) {
        ++pairs;
        const bool iso = are_isomorphic(maps[i], maps[j]).has_value();
        const bool same = cls[gc.generators[i].code()] == cls[gc.generators[j].code()];
        c.expect(iso == same, "d=" + std::to_string(d) + ": pair " + gc.generators[i].to_string() +
                                  ", " + gc.generators[j].to_string() +
                                  (iso ? " isomorphic across classes" : " not isomorphic"));
        if (iso) parent[find(i)] = find(j);
      }
    }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < maps.size(); ++i) roots.insert(find(i));
    c.expect(pairs == 28, "d=" + std::to_string(d) + ": " + std::to_string(pairs) + " pairs");
    c.expect(roots.size() == 4,
             "d=" + std::to_string(d) + ": " + std::to_string(roots.size()) + " iso classes");
  }
  return c;
}

// ---------------------------------------------------------------- 5

Perm translation(const Field& f, const VertexSpace& s, VertexId w) {
  std::vector<std::uint32_t> images(s.size());
  const auto wc = s.decode(w);
  for (VertexId v = 0; v < s.size(); ++v) {
    auto c = s.decode(v);
    for (std::uint32_t i = 0; i < s.d(); ++i) c[i] = f.add(c[i], wc[i]);
    images[v] = s.encode(c);
  }
  return Perm(std::move(images));
}

VertexId negate(const Field& f, const VertexSpace& s, VertexId v) {
  auto c = s.decode(v);
  for (auto& x : c) x = f.neg(x);
  return s.encode(c);
}

void petrie_and_predictions(Check& c) {
  for (const DQ k : test_matrix(30000)) {
    const Field f = field_of(k.q);
    const std::uint64_t n = std::uint64_t{k.d} * (k.q - 1);
    for (const auto& w : generator_classes(f).generators) {
      const std::string where = "H" + dq(k.d, k.q) + " omega=" + w.to_string();
      const OrientedMap m = hamming_map(k.d, w);
      const MapType t = type_of(m);
      if (!t.uniform()) {
        c.expect(false, where + ": not uniform");
        continue;
      }
      // A single edge (n = 1) has no zig-zag turn; every other map has l = 2p.
      if (n >= 2) c.expect(t.l() == 2 * f.p(), where + ": Petrie length " + std::to_string(t.l()));
      const LinearCayleyDatum datum{monomial_matrix(k.d, w), rotation_sequence(k.d, w)[0]};
      const CayleyPredictions pred = cayley_predictions(datum);
      if (pred.face_valency) {
        c.expect(*pred.face_valency == t.m(), where + ": face valency prediction");
      }
      c.expect(pred.petrie_length == t.l(), where + ": Petrie prediction");
    }
  }
}

void power_sums(Check& c) {
  for (const DQ k : test_matrix(1000000)) {
    const Field f = field_of(k.q);
    for (const auto& w : generator_classes(f).generators) {
      const FieldMatrix s = matrix_power_sum(k.d, w);
      bool ok = true;
      for (std::size_t a = 0; a < k.d; ++a) {
        for (std::size_t b = 0; b < k.d; ++b) ok = ok && s.at(a, b) == (k.q == 2 ? 1u : 0u);
      }
      c.expect(ok, "power sum for " + dq(k.d, k.q) + " omega=" + w.to_string());
    }
  }
}

void element_scan(Check& c) {
  for (const DQ k : test_matrix(10000)) {
    const Field f = field_of(k.q);
    const VertexSpace space(k.d, k.q);
    const std::uint64_t n = std::uint64_t{k.d} * (k.q - 1);
    const StandardGenerators g = standard_generators(k.d, default_generator(f));
    if (g.group.order() > 10000) continue;
    const std::string where = "G" + dq(k.d, k.q);
    c.expect(g.x.order() == n, where + ": order(x)");
    std::set<Perm> powers;
    for (std::uint64_t i = 0; i < n; ++i) powers.insert(g.x.pow(static_cast<std::int64_t>(i)));
    const Perm g2 = g.x.pow(static_cast<std::int64_t>(n / 2));
    std::size_t involutions = 0;
    for (const Perm& h : g.group.elements()) {
      const VertexId v = h[0];
      const Perm lin = compose(translation(f, space, negate(f, space, v)), h);
      c.expect(powers.count(lin) == 1, where + ": linear part outside <x>");
      if (lin.order() == n) {
        std::uint32_t weight = 0;
        for (std::uint32_t i = 0; i < k.d; ++i) weight += space.coord(v, i);
        const bool expect_n = k.q > 2 || weight % 2 == 0;
        c.expect((h.order() == n) == expect_n, where + ": order of an element v.g");
      }
      const bool is_inv = !h.is_identity() && compose(h, h).is_identity();
      bool predicted;
      if (k.q % 2 == 1) {
        predicted = lin == g2;
      } else {
        predicted = (lin.is_identity() && v != 0) ||
                    (k.d % 2 == 0 && n % 2 == 0 && lin == g2 && g2[v] == v);
      }
      c.expect(is_inv == predicted, where + ": involution classification");
      involutions += is_inv;
    }
    std::uint64_t want = space.size();
    if (k.q % 2 == 0) {
      std::uint64_t half = 1;
      for (std::uint32_t i = 0; i < k.d / 2; ++i) half *= k.q;
      want = space.size() - 1 + (k.d % 2 == 0 ? half : 0);
    }
    c.expect(involutions == want, where + ": " + std::to_string(involutions) + " involutions");
  }
}

void wilson_mirror_algebra(Check& c) {
  struct Sample {
    std::uint32_t d, q;
    std::size_t stride;
  };
  for (const Sample s : {Sample{1, 5, 1}, Sample{2, 5, 1}, Sample{2, 25, 5}}) {
    const Field f = field_of(s.q);
    const auto gens = generator_classes(f).generators;
    const std::int64_t n = static_cast<std::int64_t>(s.d) * (s.q - 1);
    for (std::size_t gi = 0; gi < gens.size(); gi += s.stride) {
      const FieldElement& w = gens[gi];
      const std::string where = "H" + dq(s.d, s.q) + " omega=" + w.to_string();
      const OrientedMap h = hamming_map(s.d, w);
      c.expect(mirror(mirror(h)) == h, where + ": mirror is not an involution");
      c.expect(wilson(h, -1).rotation() == mirror(h).rotation(), where + ": H_{-1} != mirror");
      c.expect(are_isomorphic(mirror(h), hamming_map(s.d, w.inverse())).has_value(),
               where + ": mirror not H(d, omega^-1)");
      c.expect(wilson(h, 1) == h, where + ": H_1 is not the identity");
      for (std::int64_t j = 1; j < n; ++j) {
        if (std::gcd(j, n) != 1) continue;
        const OrientedMap hj = wilson(h, j);
        c.expect(are_isomorphic(hj, hamming_map(s.d, w.pow(j))).has_value(),
                 where + ": H_" + std::to_string(j) + " not H(d, omega^j)");
        for (std::int64_t k = 1; k < n; ++k) {
          if (std::gcd(k, n) != 1) continue;
          c.expect(wilson(hj, k).rotation() == wilson(h, (j * k) % n).rotation(),
                   where + ": H_k H_j != H_jk");
          if (s.q == 25) break;
        }
      }
    }
  }
}

Check criterion_invariant_suites() {
  Check c;
  petrie_and_predictions(c);
  power_sums(c);
  element_scan(c);
  wilson_mirror_algebra(c);
  return c;
}

// ---------------------------------------------------------------- 6

Check criterion_reflexibility() {
  Check c;
  for (const DQ k : test_matrix(30000)) {
    for (const auto& w : generator_classes(field_of(k.q)).generators) {
      const OrientedMap m = hamming_map(k.d, w);
      const bool refl = are_isomorphic(m, mirror(m)).has_value();
      c.expect(refl == (k.q <= 4), "H" + dq(k.d, k.q) + " omega=" + w.to_string() +
                                       (refl ? " reflexible" : " chiral"));
    }
  }
  return c;
}

// ---------------------------------------------------------------- 7

Check criterion_galois() {
  Check c;
  const std::vector<std::pair<std::uint32_t, std::uint64_t>> degrees = {
      {2, 1}, {3, 1}, {4, 1}, {5, 2}, {7, 2}, {25, 4}};
  for (auto [q, deg] : degrees) {
    const GaloisStructure g = galois_structure(q);
    c.expect(g.degree == deg, "q=" + std::to_string(q) + ": degree " + std::to_string(g.degree));
  }
  c.expect(galois_structure(25).quotient_invariants == std::vector<std::uint64_t>{2, 2},
           "q=25: quotient is not C2 x C2");
  for (const DQ k : {DQ{1, 5}, DQ{2, 5}, DQ{2, 25}}) {
    c.expect(galois_orbit_check(k.d, k.q), "orbit check failed for " + dq(k.d, k.q));
  }
  return c;
}

// ---------------------------------------------------------------- 8

Check criterion_merged() {
  Check c;
  for (const DQ k : {DQ{2, 4}, DQ{2, 5}}) {
    const MergedExistence m = merged_existence(k.d, k.q, {2});
    c.expect(m.verdict == MergedVerdict::kNone, dq(k.d, k.q) + "_{2}: verdict");
    c.expect(m.certified_by == Certification::kSearch, dq(k.d, k.q) + "_{2}: not search-certified");
    c.expect(m.census && m.census->maps.empty(), dq(k.d, k.q) + "_{2}: census not empty");
  }
  const MergedExistence k16 = merged_existence(2, 4, {1, 2});
  c.expect(k16.verdict == MergedVerdict::kExistsComplete, "(2,4)_{1,2}: verdict");
  c.expect(k16.witness.has_value(), "(2,4)_{1,2}: no witness");
  if (k16.witness) {
    c.expect(underlying_graph_equals(*k16.witness, MergedGraph(2, 4, {1, 2})),
             "(2,4)_{1,2}: witness is not K_16");
    c.expect(is_orientably_regular(*k16.witness).regular, "(2,4)_{1,2}: witness not regular");
  }
  // Verdicts not settled by search must say so.
  const MergedExistence cited = merged_existence(3, 4, {1, 3});
  c.expect(cited.certified_by != Certification::kSearch, "(3,4)_{1,3}: claims search");
  c.expect(cited.reason.find("not search-certified") != std::string::npos,
           "(3,4)_{1,3}: reason does not flag the missing search");
  const auto j = merged_json(3, 4, {1, 3}, cited);
  c.expect(j.at("search_certified") == false, "(3,4)_{1,3}: JSON flag");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "golden invariant table", criterion_golden_table},
      {2, "census counts", criterion_census_counts},
      {3, "census equals the Hamming maps", criterion_census_equals_construction},
      {4, "Frobenius classes over F_25", criterion_frobenius_classes},
      {5, "invariant suites", criterion_invariant_suites},
      {6, "reflexibility", criterion_reflexibility},
      {7, "Galois structure", criterion_galois},
      {8, "merged Hamming graphs", criterion_merged},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = Clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    failed += !ok;
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name
         << " (" << c.checks << " checks, " << seconds_since(t0) << " s)";
    std::cout << line.str() << '\n';
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) {
      std::cout << "    " << c.failures[i] << '\n';
    }
    if (c.failures.size() > 10) std::cout << "    ... " << c.failures.size() - 10 << " more\n";
  }
  return failed == 0 ? 0 : 1;
}
