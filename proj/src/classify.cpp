#include "hammaps/classify.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "hammaps/errors.hpp"

namespace hammaps {

std::string to_string(Certification c) {
  switch (c) {
    case Certification::kSearch:
      return "search";
    case Certification::kTheorem:
      return "theorem";
    case Certification::kConstruction:
      return "construction";
  }
  return "unknown";
}

std::string to_string(MergedVerdict v) {
  switch (v) {
    case MergedVerdict::kExistsHamming:
      return "exists_hamming";
    case MergedVerdict::kExistsComplete:
      return "exists_complete";
    case MergedVerdict::kNone:
      return "none";
  }
  return "unknown";
}

namespace {

bool is_single_cycle_on(const Perm& g, const std::vector<VertexId>& nbrs) {
  const std::size_t n = nbrs.size();
  std::uint32_t x = nbrs.front();
  for (std::size_t i = 1; i < n; ++i) {
    x = g[x];
    if (x == nbrs.front()) return false;
  }
  return g[x] == nbrs.front();
}

// Representatives of the orbits of `cands` under conjugation by `conj`,
// in order of first appearance.
std::vector<Perm> conjugacy_representatives(const std::vector<Perm>& cands,
                                            const std::vector<Perm>& conj) {
  std::unordered_map<Perm, std::size_t, PermHash> index;
  for (std::size_t i = 0; i < cands.size(); ++i) index.emplace(cands[i], i);
  std::vector<Perm> conj_inv;
  for (const auto& s : conj) conj_inv.push_back(s.inverse());
  std::vector<bool> seen(cands.size(), false);
  std::vector<Perm> reps;
  for (std::size_t start = 0; start < cands.size(); ++start) {
    if (seen[start]) continue;
    reps.push_back(cands[start]);
    seen[start] = true;
    std::vector<std::size_t> queue{start};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (std::size_t k = 0; k < conj.size(); ++k) {
        const Perm c = compose(compose(conj[k], cands[queue[h]]), conj_inv[k]);
        auto it = index.find(c);
        if (it == index.end()) {
          throw ConsistencyError("conjugation left the candidate set");
        }
        if (!seen[it->second]) {
          seen[it->second] = true;
          queue.push_back(it->second);
        }
      }
    }
  }
  return reps;
}

struct Found {
  std::size_t x_index;
  std::size_t y_index;
  OrientedMap map;
};

// Tries every (x, y) pair and keeps one map per canonical code, preferring
// the smallest (x, y) index pair so the result is independent of `workers`.
std::map<std::vector<std::uint32_t>, Found> search_pairs(
    const MergedGraph& graph, const std::vector<Perm>& xs, const std::vector<Perm>& ys,
    std::size_t arcs, unsigned workers, std::size_t& accepted) {
  const VertexId v0 = 0;
  const VertexId u0 = graph.neighbors(v0).front();
  workers = std::max(1u, workers);
  std::vector<std::map<std::vector<std::uint32_t>, Found>> partial(workers);
  std::vector<std::size_t> counts(workers, 0);
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](unsigned w) {
    try {
      std::vector<std::pair<VertexId, VertexId>> arc_seen;
      for (std::size_t yi = w; yi < ys.size(); yi += workers) {
        for (std::size_t xi = 0; xi < xs.size(); ++xi) {
          const std::array<Perm, 2> gens{xs[xi], ys[yi]};
          ClosureResult closed = close(gens, arcs);
          if (!closed.group || closed.group->order() != arcs) continue;
          const GroupStore& g = *closed.group;
          arc_seen.clear();
          for (const auto& h : g.elements()) arc_seen.emplace_back(h[v0], h[u0]);
          std::sort(arc_seen.begin(), arc_seen.end());
          if (std::adjacent_find(arc_seen.begin(), arc_seen.end()) != arc_seen.end()) {
            continue;
          }
          OrientedMap map = map_from_generators(g, xs[xi], ys[yi], v0);
          if (!underlying_graph_equals(map, graph)) {
            throw ConsistencyError("accepted pair does not embed the input graph");
          }
          ++counts[w];
          auto code = canonical_code(map);
          auto it = partial[w].find(code);
          if (it == partial[w].end()) {
            partial[w].emplace(std::move(code), Found{xi, yi, std::move(map)});
          } else if (std::pair(xi, yi) < std::pair(it->second.x_index, it->second.y_index)) {
            it->second = Found{xi, yi, std::move(map)};
          }
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::map<std::vector<std::uint32_t>, Found> merged;
  for (unsigned w = 0; w < workers; ++w) {
    accepted += counts[w];
    for (auto& [code, f] : partial[w]) {
      auto it = merged.find(code);
      if (it == merged.end()) {
        merged.emplace(code, std::move(f));
      } else if (std::pair(f.x_index, f.y_index) <
                 std::pair(it->second.x_index, it->second.y_index)) {
        it->second = std::move(f);
      }
    }
  }
  return merged;
}

std::size_t checked_arcs(const MergedGraph& graph, std::size_t arc_cap) {
  const std::uint64_t arcs = std::uint64_t{graph.vertex_count()} * graph.valency();
  if (arcs > arc_cap) {
    throw CapExceeded("the graph has " + std::to_string(arcs) +
                          " arcs, above the arc cap of " + std::to_string(arc_cap),
                      arcs);
  }
  return static_cast<std::size_t>(arcs);
}

EmbeddingCensus finish_census(const MergedGraph& graph,
                              std::map<std::vector<std::uint32_t>, Found> found,
                              SearchStats stats) {
  EmbeddingCensus census;
  census.d = graph.d();
  census.q = graph.q();
  census.K = graph.distances();
  census.stats = stats;
  census.certified_by = Certification::kSearch;
  if (graph.is_plain_hamming()) census.expected_count = expected_hamming_count(graph.d(), graph.q());
  for (auto& [code, f] : found) {
    CensusEntry e{std::move(f.map), code, {}, std::nullopt, 0, std::nullopt};
    e.invariants = invariants(e.map);
    if (!e.invariants.regular) {
      throw ConsistencyError("an accepted map is not orientably regular");
    }
    census.maps.push_back(std::move(e));
  }
  annotate_pairings(census.maps);
  return census;
}

}  // namespace

EmbeddingCensus enumerate_embeddings(const MergedGraph& graph, const SearchOptions& options) {
  const WreathGroup aut = aut_group(graph, options.group_cap);
  const std::size_t arcs = checked_arcs(graph, options.arc_cap);
  const VertexSpace& space = graph.space();
  const VertexId v0 = 0;
  const auto nbrs = graph.neighbors(v0);
  const VertexId u0 = nbrs.front();

  SearchStats stats;
  std::vector<Perm> xs;
  aut.for_each_mapping(v0, v0, [&](const WreathElement& g) {
    // Cheap n-cycle test on N(v0) before building the full permutation.
    VertexId x = nbrs.front();
    for (std::size_t i = 1; i < nbrs.size(); ++i) {
      x = g.apply(space, x);
      if (x == nbrs.front()) return;
    }
    if (g.apply(space, x) != nbrs.front()) return;
    xs.push_back(g.to_perm(space));
  });
  stats.x_candidates = xs.size();
  xs = conjugacy_representatives(xs, aut.stabilizer_generators(v0));
  stats.x_classes = xs.size();

  std::vector<Perm> ys;
  aut.for_each_involution_mapping(v0, u0,
                                  [&](const WreathElement& g) { ys.push_back(g.to_perm(space)); });
  stats.y_candidates = ys.size();

  auto found = search_pairs(graph, xs, ys, arcs, options.workers, stats.accepted_pairs);
  return finish_census(graph, std::move(found), stats);
}

EmbeddingCensus enumerate_embeddings_with_group(const MergedGraph& graph,
                                                const GroupStore& aut,
                                                const SearchOptions& options) {
  if (aut.degree() != graph.vertex_count()) {
    throw InvalidInput("group degree differs from the vertex count");
  }
  const std::size_t arcs = checked_arcs(graph, options.arc_cap);
  const VertexId v0 = 0;
  const auto nbrs = graph.neighbors(v0);
  const VertexId u0 = nbrs.front();

  SearchStats stats;
  std::vector<Perm> stab;
  std::vector<Perm> xs;
  std::vector<Perm> ys;
  for (const auto& g : aut.elements()) {
    if (g[v0] == v0) {
      stab.push_back(g);
      if (is_single_cycle_on(g, nbrs)) xs.push_back(g);
    }
    if (g[v0] == u0 && g[u0] == v0 && compose(g, g).is_identity()) ys.push_back(g);
  }
  stats.x_candidates = xs.size();
  xs = conjugacy_representatives(xs, stab);
  stats.x_classes = xs.size();
  stats.y_candidates = ys.size();

  auto found = search_pairs(graph, xs, ys, arcs, options.workers, stats.accepted_pairs);
  return finish_census(graph, std::move(found), stats);
}

std::optional<std::uint64_t> expected_hamming_count(std::uint32_t d, std::uint32_t q) {
  if (d == 0) throw InvalidInput("dimension must be positive");
  PrimePower pp;
  if (!prime_power(q, pp)) return 0;
  if (q > 2) return euler_phi(q - 1) / pp.e;
  if (d == 2) return 1;
  if (d % 2 == 0) return std::nullopt;
  std::uint64_t count = 1;
  std::uint32_t rest = d;
  for (std::uint32_t r = 2; r * r <= rest; ++r) {
    if (rest % r != 0) continue;
    count *= 2;
    while (rest % r == 0) rest /= r;
  }
  if (rest > 1) count *= 2;
  return count;
}

std::vector<FieldElement> class_representatives(const Field& field) {
  std::vector<FieldElement> reps;
  for (const auto& c : generator_classes(field).classes) reps.push_back(c.front());
  return reps;
}

void annotate_pairings(std::vector<CensusEntry>& entries) {
  const std::size_t k = entries.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto match = [&](const OrientedMap& m) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < k; ++j) {
      if (are_isomorphic(m, entries[j].map)) return j;
    }
    return std::nullopt;
  };
  for (std::size_t i = 0; i < k; ++i) {
    entries[i].mirror_partner = match(mirror(entries[i].map));
    const MapType t = type_of(entries[i].map);
    if (t.vertex_sizes.front() != t.vertex_sizes.back()) continue;
    const std::int64_t n = static_cast<std::int64_t>(t.n());
    for (std::int64_t j = 2; j < n; ++j) {
      if (std::gcd(j, n) != 1) continue;
      if (auto m = match(wilson(entries[i].map, j))) parent[find(*m)] = find(i);
    }
  }
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t root = find(i);
    auto it = ids.find(root);
    if (it == ids.end()) it = ids.emplace(root, ids.size()).first;
    entries[i].wilson_orbit = it->second;
  }
}

EmbeddingCensus classify_hamming(std::uint32_t d, std::uint32_t q,
                                 const SearchOptions& options) {
  EmbeddingCensus census = enumerate_embeddings(MergedGraph(d, q), options);
  std::vector<std::string> divergences;
  if (census.expected_count && census.maps.size() != *census.expected_count) {
    divergences.push_back("census has " + std::to_string(census.maps.size()) +
                          " maps, expected " + std::to_string(*census.expected_count));
  }
  PrimePower pp;
  if (prime_power(q, pp)) {
    const Field field = Field::make(pp.p, pp.e);
    std::vector<bool> matched(census.maps.size(), false);
    for (const auto& omega : class_representatives(field)) {
      const auto code = canonical_code(hamming_map(d, omega, options.arc_cap));
      auto it = std::find_if(census.maps.begin(), census.maps.end(),
                             [&](const CensusEntry& e) { return e.code == code; });
      if (it == census.maps.end()) {
        divergences.push_back("H(" + std::to_string(d) + ", " + omega.to_string() +
                              ") is missing from the census");
        continue;
      }
      const std::size_t idx = static_cast<std::size_t>(it - census.maps.begin());
      if (matched[idx]) {
        divergences.push_back("H(" + std::to_string(d) + ", " + omega.to_string() +
                              ") coincides with another generator class");
      }
      matched[idx] = true;
      it->omega = omega;
    }
    if (q > 2) {
      for (std::size_t i = 0; i < matched.size(); ++i) {
        if (!matched[i]) {
          divergences.push_back("census map " + std::to_string(i) + " of type {" +
                                std::to_string(census.maps[i].invariants.m) + "," +
                                std::to_string(census.maps[i].invariants.n) +
                                "} is not a Hamming map");
        }
      }
    }
  }
  if (!divergences.empty()) {
    std::string msg = "classification of H(" + std::to_string(d) + "," + std::to_string(q) +
                      ") diverges:";
    for (const auto& s : divergences) msg += "\n  " + s;
    throw ConsistencyError(msg);
  }
  return census;
}

namespace {

std::vector<std::uint64_t> units_mod(std::uint64_t m) {
  if (m == 1) return {0};
  std::vector<std::uint64_t> u;
  for (std::uint64_t a = 1; a < m; ++a) {
    if (std::gcd(a, m) == 1) u.push_back(a);
  }
  return u;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (k) {
    if (k & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    k >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 2; r * r <= n; ++r) {
    if (n % r) continue;
    out.push_back(r);
    while (n % r == 0) n /= r;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Invariant factors of the finite abelian group Z*_m / P from the number of
// solutions of x^k in P for prime powers k.
std::vector<std::uint64_t> quotient_invariants(const std::vector<std::uint64_t>& units,
                                               const std::vector<std::uint64_t>& sub,
                                               std::uint64_t m) {
  const std::uint64_t order = units.size() / sub.size();
  std::vector<bool> in_sub(std::max<std::uint64_t>(m, 1), false);
  for (auto s : sub) in_sub[s] = true;
  auto solutions = [&](std::uint64_t k) {
    std::uint64_t c = 0;
    for (auto u : units) c += in_sub[m == 1 ? 0 : powmod(u, k, m)];
    return c / sub.size();
  };
  // Elementary divisors per prime, largest exponent first.
  std::vector<std::vector<std::uint64_t>> by_rank;
  for (std::uint64_t r : prime_factors(order)) {
    std::vector<std::uint64_t> logs{0};
    std::uint64_t rk = 1;
    while (true) {
      rk *= r;
      std::uint64_t c = solutions(rk);
      std::uint64_t lg = 0;
      while (c > 1) {
        c /= r;
        ++lg;
      }
      if (lg == logs.back()) break;
      logs.push_back(lg);
    }
    // Number of cyclic factors of exponent >= j is logs[j] - logs[j-1].
    std::vector<std::uint64_t> powers;
    const std::size_t top = logs.size() - 1;
    for (std::size_t j = top; j >= 1; --j) {
      const std::uint64_t at_least = logs[j] - logs[j - 1];
      const std::uint64_t above = j < top ? logs[j + 1] - logs[j] : 0;
      std::uint64_t pw = 1;
      for (std::size_t t = 0; t < j; ++t) pw *= r;
      for (std::uint64_t c = 0; c < at_least - above; ++c) powers.push_back(pw);
    }
    for (std::size_t i = 0; i < powers.size(); ++i) {
      if (by_rank.size() <= i) by_rank.emplace_back();
      by_rank[i].push_back(powers[i]);
    }
  }
  std::vector<std::uint64_t> inv;
  for (const auto& group : by_rank) {
    std::uint64_t f = 1;
    for (auto x : group) f *= x;
    inv.push_back(f);
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

}  // namespace

GaloisStructure galois_structure(std::uint32_t q, std::uint32_t d) {
  PrimePower pp;
  if (!prime_power(q, pp)) throw InvalidInput(std::to_string(q) + " is not a prime power");
  if (d == 0) throw InvalidInput("dimension must be positive");
  GaloisStructure g;
  g.q = q;
  g.p = pp.p;
  g.e = pp.e;
  g.d = d;
  const std::uint64_t m = q - 1;
  g.units = units_mod(m);
  if (m == 1) {
    g.p_subgroup = {0};
  } else {
    for (std::uint64_t x = 1 % m;;) {
      g.p_subgroup.push_back(x);
      x = mulmod(x, pp.p, m);
      if (x == 1 % m) break;
    }
    std::sort(g.p_subgroup.begin(), g.p_subgroup.end());
  }
  g.degree = g.units.size() / g.p_subgroup.size();
  if (g.units.size() % g.p_subgroup.size() != 0 || g.degree != euler_phi(m) / pp.e ||
      g.units.size() != euler_phi(m)) {
    throw ConsistencyError("unit group computation disagrees with phi(q-1)/e");
  }
  g.quotient_invariants = quotient_invariants(g.units, g.p_subgroup, m);

  g.n = static_cast<std::uint64_t>(d) * m;
  for (auto u : units_mod(g.n)) {
    const std::uint64_t r = m == 1 ? 0 : u % m;
    if (std::binary_search(g.p_subgroup.begin(), g.p_subgroup.end(), r)) {
      g.h_subgroup.push_back(u);
    }
  }
  g.rational = g.degree == 1;
  if (g.rational) {
    g.field_description = "Q (degree 1: every map is defined over the rationals)";
  } else {
    g.field_description = "splitting field of " + std::to_string(pp.p) + " in Q(zeta_" +
                          std::to_string(m) + "), degree " + std::to_string(g.degree) +
                          " over Q";
  }
  return g;
}

bool galois_orbit_check(std::uint32_t d, std::uint32_t q, const SearchOptions& options) {
  PrimePower pp;
  if (!prime_power(q, pp)) throw InvalidInput(std::to_string(q) + " is not a prime power");
  const Field field = Field::make(pp.p, pp.e);
  const auto reps = class_representatives(field);
  std::vector<OrientedMap> maps;
  for (const auto& w : reps) maps.push_back(hamming_map(d, w, options.arc_cap));
  const std::int64_t n = static_cast<std::int64_t>(d) * (q - 1);
  std::vector<bool> reached(maps.size(), false);
  for (std::int64_t j = 1; j <= std::max<std::int64_t>(n, 1); ++j) {
    if (std::gcd(j, n) != 1) continue;
    const OrientedMap image = wilson(maps.front(), j);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (!reached[i] && are_isomorphic(image, maps[i])) reached[i] = true;
    }
  }
  return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

MergedExistence merged_existence(std::uint32_t d, std::uint32_t q,
                                 std::vector<std::uint32_t> K,
                                 const SearchOptions& options) {
  const MergedGraph graph(d, q, std::move(K));
  PrimePower pp;
  const bool prime_pow = prime_power(q, pp);
  MergedExistence out;

  auto try_search = [&]() -> bool {
    if (exceptional_automorphisms(graph)) return false;
    try {
      out.census = enumerate_embeddings(graph, options);
    } catch (const CapExceeded&) {
      return false;
    }
    out.certified_by = Certification::kSearch;
    if (!out.census->maps.empty()) out.witness = out.census->maps.front().map;
    return true;
  };

  if (graph.is_plain_hamming()) {
    if (try_search()) {
      out.verdict = out.census->maps.empty() ? MergedVerdict::kNone : MergedVerdict::kExistsHamming;
      out.reason = out.census->maps.empty() ? "exhaustive search found no embedding"
                                            : "exhaustive search found the Hamming maps";
      if (prime_pow != !out.census->maps.empty()) {
        throw ConsistencyError("search disagrees with the prime-power criterion");
      }
      return out;
    }
    if (prime_pow) {
      out.verdict = MergedVerdict::kExistsHamming;
      out.certified_by = Certification::kConstruction;
      out.witness = hamming_map(d, default_generator(Field::make(pp.p, pp.e)), options.arc_cap);
      out.reason = "the Hamming map H(d, omega) is an orientably regular embedding";
    } else {
      out.verdict = MergedVerdict::kNone;
      out.certified_by = Certification::kTheorem;
      out.reason = "H(d,q) has an orientably regular embedding only for prime powers q";
    }
    return out;
  }

  if (graph.is_complete()) {
    if (!prime_pow) {
      out.verdict = MergedVerdict::kNone;
      out.certified_by = Certification::kTheorem;
      out.reason = "K_N has an orientably regular embedding only when N is a prime power";
      return out;
    }
    const std::uint64_t big_e = static_cast<std::uint64_t>(pp.e) * d;
    const Field big = Field::make(pp.p, static_cast<std::uint32_t>(big_e));
    OrientedMap biggs = hamming_map(1, default_generator(big), options.arc_cap);
    if (!underlying_graph_equals(biggs, MergedGraph(1, big.q()))) {
      throw ConsistencyError("Biggs map over " + big.to_string() + " is not complete");
    }
    if (!is_orientably_regular(biggs).regular) {
      throw ConsistencyError("Biggs map is not orientably regular");
    }
    out.verdict = MergedVerdict::kExistsComplete;
    out.certified_by = Certification::kConstruction;
    out.witness = std::move(biggs);
    out.reason = "the Biggs map H(1, omega) over " + big.to_string() + " embeds K_" +
                 std::to_string(big.q());
    return out;
  }

  if (q <= 3) {
    throw InvalidInput("no classification is available for merged Hamming graphs with q <= 3 "
                       "and K other than {1} or {1..d}");
  }
  if (try_search()) {
    if (!out.census->maps.empty()) {
      throw ConsistencyError("search found an embedding of H(" + std::to_string(d) + "," +
                             std::to_string(q) + ")_K, contradicting the classification");
    }
    out.verdict = MergedVerdict::kNone;
    out.reason = "exhaustive search over S_q wr S_d found no embedding";
    return out;
  }
  out.verdict = MergedVerdict::kNone;
  out.certified_by = Certification::kTheorem;
  if (auto why = exceptional_automorphisms(graph)) {
    out.reason = "not search-certified: " + *why +
                 "; the classification theorem for q >= 4 excludes an embedding";
  } else {
    out.reason = "not search-certified (above the caps); the classification theorem for "
                 "q >= 4 allows only K = {1} or K = {1..d}";
  }
  return out;
}

}  // namespace hammaps
