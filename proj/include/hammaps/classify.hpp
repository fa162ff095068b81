#pragma once

// Exhaustive enumeration of orientably regular embeddings of H(d,q)_K,
// comparison with the Hamming maps, Galois structure of the generator
// classes, and existence verdicts for merged Hamming graphs.
//
// Search: with v0 = 0 and u0 its smallest neighbour, the rotation x runs over
// representatives of the Aut_{v0}-conjugacy classes of elements acting on
// N(v0) as one n-cycle, and y over the involutions swapping v0 and u0. A pair
// is accepted when <x, y> has exactly one element per arc and acts regularly
// on arcs. Conjugating by powers of x justifies fixing y(v0) = u0.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hammaps/cayley.hpp"
#include "hammaps/ffield.hpp"
#include "hammaps/hamming.hpp"
#include "hammaps/omap.hpp"
#include "hammaps/permgroup.hpp"

namespace hammaps {

struct SearchOptions {
  std::uint64_t group_cap = kDefaultGroupCap;
  std::size_t arc_cap = kDefaultArcCap;
  unsigned workers = 1;
};

enum class Certification { kSearch, kTheorem, kConstruction };
std::string to_string(Certification c);

struct CensusEntry {
  OrientedMap map;
  std::vector<std::uint32_t> code;
  MapInvariants invariants;
  // Index of the entry isomorphic to the mirror image, itself if reflexible.
  std::optional<std::size_t> mirror_partner;
  // Entries reachable from each other by Wilson operations share an id.
  std::size_t wilson_orbit = 0;
  // Set for Hamming maps: a generator whose H(d, omega) is this entry.
  std::optional<FieldElement> omega;
};

struct SearchStats {
  std::size_t x_candidates = 0;
  std::size_t x_classes = 0;
  std::size_t y_candidates = 0;
  std::size_t accepted_pairs = 0;
};

struct EmbeddingCensus {
  std::uint32_t d = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> K;
  // Sorted by canonical code; pairwise non-isomorphic.
  std::vector<CensusEntry> maps;
  std::optional<std::uint64_t> expected_count;
  Certification certified_by = Certification::kSearch;
  SearchStats stats;
};

// Throws InvalidInput for graphs whose automorphism group is not the wreath
// product, CapExceeded when |A| or the arc count is above the caps.
EmbeddingCensus enumerate_embeddings(const MergedGraph& graph,
                                     const SearchOptions& options = {});

// Same search with an explicitly supplied automorphism group (for example
// from brute_force_automorphisms). The group is fully materialised.
EmbeddingCensus enumerate_embeddings_with_group(const MergedGraph& graph,
                                                const GroupStore& aut,
                                                const SearchOptions& options = {});

// Number of orientably regular embeddings of H(d,q): phi(q-1)/e for prime
// powers q > 2, none for other q, 2^r for q = 2 and odd d (r distinct primes
// of d), 1 for Q_2. Unknown (nullopt) for q = 2 and even d >= 4.
std::optional<std::uint64_t> expected_hamming_count(std::uint32_t d, std::uint32_t q);

// One generator per Frobenius class, in class order.
std::vector<FieldElement> class_representatives(const Field& field);

// Enumerates H(d,q) and matches the census against the Hamming maps. For
// q > 2 the two sets must coincide; for q = 2 the Hamming map must occur.
// Annotates census entries with omega. Throws ConsistencyError describing
// every divergence.
EmbeddingCensus classify_hamming(std::uint32_t d, std::uint32_t q,
                                 const SearchOptions& options = {});

// Mirror partners and Wilson orbits for a list of pairwise non-isomorphic
// maps. Partners outside the list stay unset.
void annotate_pairings(std::vector<CensusEntry>& entries);

struct GaloisStructure {
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::uint32_t d = 1;
  // Z*_{q-1} and the subgroup generated by p.
  std::vector<std::uint64_t> units;
  std::vector<std::uint64_t> p_subgroup;
  // Invariant factors of Z*_{q-1} / <p>, ascending; empty when trivial.
  std::vector<std::uint64_t> quotient_invariants;
  std::uint64_t degree = 0;
  // Preimage of <p> in Z*_n, n = d(q-1).
  std::uint64_t n = 0;
  std::vector<std::uint64_t> h_subgroup;
  bool rational = false;
  std::string field_description;
};

// Throws InvalidInput if q is not a prime power.
GaloisStructure galois_structure(std::uint32_t q, std::uint32_t d = 1);

// Whether the Hamming maps H(d, omega) form one orbit under Wilson operations
// up to isomorphism.
bool galois_orbit_check(std::uint32_t d, std::uint32_t q,
                        const SearchOptions& options = {});

enum class MergedVerdict { kExistsHamming, kExistsComplete, kNone };
std::string to_string(MergedVerdict v);

struct MergedExistence {
  MergedVerdict verdict = MergedVerdict::kNone;
  Certification certified_by = Certification::kTheorem;
  std::string reason;
  // Present when the verdict was settled by search.
  std::optional<EmbeddingCensus> census;
  // A regular embedding when one exists.
  std::optional<OrientedMap> witness;
};

// Throws InvalidInput for q <= 3 with K neither {1} nor {1..d}, where no
// classification is available.
MergedExistence merged_existence(std::uint32_t d, std::uint32_t q,
                                 std::vector<std::uint32_t> K,
                                 const SearchOptions& options = {});

}  // namespace hammaps
