#pragma once

// Oriented combinatorial maps on arcs [0, 2E).
//
//   R  rotation: next arc counterclockwise around the common tail vertex
//   L  reversal: the same edge traversed the other way (fixed-point-free
//      involution)
//
// Vertices are the orbits of R, edges the orbits of L and faces the orbits
// of R∘L (apply L, then R).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hammaps/permgroup.hpp"

namespace hammaps {

class OrientedMap {
 public:
  // Throws InvalidInput if the degrees differ, L is not a fixed-point-free
  // involution, <R, L> is not transitive, or the labels have the wrong length.
  static OrientedMap build(Perm rotation, Perm reversal,
                           std::vector<std::uint32_t> labels = {});

  std::size_t arc_count() const noexcept { return R_.degree(); }
  const Perm& rotation() const noexcept { return R_; }
  const Perm& reversal() const noexcept { return L_; }
  // Optional per-arc decoration, usually the tail vertex. Empty if absent.
  const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }

  std::size_t vertex_count() const noexcept { return vertices_; }
  std::size_t edge_count() const noexcept { return R_.degree() / 2; }
  std::size_t face_count() const noexcept { return faces_; }

  // R∘L
  Perm face_permutation() const { return compose(R_, L_); }

  friend bool operator==(const OrientedMap&, const OrientedMap&) = default;

 private:
  OrientedMap() = default;

  Perm R_;
  Perm L_;
  std::vector<std::uint32_t> labels_;
  std::size_t vertices_ = 0;
  std::size_t faces_ = 0;
};

enum class PetrieConvention {
  // First step R∘L, then R⁻¹∘L, alternating.
  kRightFirst,
  // First step R⁻¹∘L.
  kLeftFirst,
};

struct MapType {
  // Sorted orbit lengths. For an orientably regular map each holds one
  // repeated value.
  std::vector<std::size_t> face_sizes;
  std::vector<std::size_t> vertex_sizes;
  std::vector<std::size_t> petrie_lengths;

  bool uniform() const noexcept;
  // Valid only when uniform().
  std::size_t m() const { return face_sizes.front(); }
  std::size_t n() const { return vertex_sizes.front(); }
  std::size_t l() const { return petrie_lengths.front(); }
  // "{m,n}_l", or the multisets when not uniform.
  std::string to_string() const;
};

MapType type_of(const OrientedMap& map,
                PetrieConvention convention = PetrieConvention::kRightFirst);

// Length of the Petrie walk starting at (arc, first turn).
std::size_t petrie_walk_length(const OrientedMap& map, std::uint32_t arc,
                               PetrieConvention convention = PetrieConvention::kRightFirst);

struct EulerGenus {
  std::int64_t chi = 0;
  std::int64_t genus = 0;
};

// Throws ConsistencyError on odd Euler characteristic.
EulerGenus euler_genus(const OrientedMap& map);

struct Regularity {
  bool regular = false;
  std::size_t aut_order = 0;
};

Regularity is_orientably_regular(const OrientedMap& map);

// Arc bijection phi with phi R1 = R2 phi and phi L1 = L2 phi, if one exists.
std::optional<std::vector<std::uint32_t>> are_isomorphic(const OrientedMap& a,
                                                         const OrientedMap& b);

// Tries to extend a -> b to an isomorphism by propagation along R and L.
// Writes the bijection into `phi` on success.
bool extend_isomorphism(const OrientedMap& from, const OrientedMap& to,
                        std::uint32_t a, std::uint32_t b,
                        std::vector<std::uint32_t>& phi);

// Isomorphism-complete canonical form: lexicographic minimum over starting
// arcs of the breadth-first first-visit numbering under moves R, R⁻¹, L.
// Quadratic in the arc count.
std::vector<std::uint32_t> canonical_code(const OrientedMap& map);

OrientedMap mirror(const OrientedMap& map);
// R replaced by R^j. Requires constant vertex valency n and gcd(j, n) == 1.
OrientedMap wilson(const OrientedMap& map, std::int64_t j);
// Faces and vertices swap roles: R' = R∘L, L' = L.
OrientedMap dual(const OrientedMap& map);

struct MapInvariants {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t l = 0;
  std::int64_t chi = 0;
  std::int64_t genus = 0;
  std::size_t aut_order = 0;
  bool regular = false;
  bool reflexible = false;
};

// Full invariant bundle. m, n and l are 0 when the map is not uniform in
// type.
MapInvariants invariants(const OrientedMap& map);

// Exchange format:
//   omap <arcCount>
//   <R images, space separated>
//   <L images>
//   [<labels>]
void write_map(std::ostream& out, const OrientedMap& map);
OrientedMap read_map(std::istream& in);
std::string map_to_string(const OrientedMap& map);
OrientedMap map_from_string(const std::string& text);

}  // namespace hammaps
