#pragma once

// Hamming graphs H(d,q), their merged variants H(d,q)_K, and the wreath
// product S_q wr S_d acting on the vertex set Q^d.
//
// Vertices are indices in [0, q^d) in little-endian mixed radix: coordinate
// 0 is the least significant digit. Coordinates are 0-based here; the
// distance set K uses the usual 1-based distances 1..d.

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hammaps/permgroup.hpp"

namespace hammaps {

using VertexId = std::uint32_t;

inline constexpr std::uint64_t kDefaultGroupCap = 2'000'000;

class VertexSpace {
 public:
  // Throws InvalidInput unless d >= 1, q >= 2 and q^d fits in 32 bits.
  VertexSpace(std::uint32_t d, std::uint32_t q);

  std::uint32_t d() const noexcept { return d_; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t size() const noexcept { return size_; }

  VertexId encode(std::span<const std::uint32_t> coords) const;
  std::vector<std::uint32_t> decode(VertexId v) const;
  std::uint32_t coord(VertexId v, std::uint32_t i) const noexcept {
    return (v / radix_[i]) % q_;
  }
  VertexId with_coord(VertexId v, std::uint32_t i, std::uint32_t value) const noexcept {
    return v - coord(v, i) * radix_[i] + value * radix_[i];
  }
  std::uint32_t radix(std::uint32_t i) const noexcept { return radix_[i]; }

  friend bool operator==(const VertexSpace& a, const VertexSpace& b) noexcept {
    return a.d_ == b.d_ && a.q_ == b.q_;
  }

 private:
  std::uint32_t d_;
  std::uint32_t q_;
  std::uint32_t size_;
  std::vector<std::uint32_t> radix_;
};

std::uint32_t hamming_distance(const VertexSpace& space, VertexId v, VertexId w);

class MergedGraph {
 public:
  // K: distances in 1..d, non-empty. Duplicates are removed.
  MergedGraph(std::uint32_t d, std::uint32_t q, std::vector<std::uint32_t> K = {1});

  const VertexSpace& space() const noexcept { return space_; }
  std::uint32_t d() const noexcept { return space_.d(); }
  std::uint32_t q() const noexcept { return space_.q(); }
  const std::vector<std::uint32_t>& distances() const noexcept { return K_; }
  std::uint32_t vertex_count() const noexcept { return space_.size(); }
  // sum over k in K of C(d,k) (q-1)^k
  std::uint64_t valency() const noexcept;
  bool is_plain_hamming() const noexcept { return K_.size() == 1 && K_[0] == 1; }
  bool is_complete() const noexcept { return K_.size() == space_.d(); }

  bool adjacent(VertexId v, VertexId w) const;
  // Ascending index order.
  std::vector<VertexId> neighbors(VertexId v) const;
  std::vector<std::vector<VertexId>> adjacency() const;

  // One line per vertex: "v: n1 n2 ...".
  void dump(std::ostream& out) const;

 private:
  VertexSpace space_;
  std::vector<std::uint32_t> K_;
  std::vector<bool> in_K_;
};

// Element of S_q wr S_d. Coordinate i's value v_i is sent through sigma_i and
// then moved to place tau(i): w_{tau(i)} = sigma_i(v_i).
struct WreathElement {
  std::vector<std::vector<std::uint32_t>> sigmas;
  std::vector<std::uint32_t> tau;

  static WreathElement identity(std::uint32_t d, std::uint32_t q);

  VertexId apply(const VertexSpace& space, VertexId v) const;
  Perm to_perm(const VertexSpace& space) const;
  WreathElement inverse() const;

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

// (a * b) acts as "b first, then a", matching compose() on Perm.
WreathElement compose(const WreathElement& a, const WreathElement& b);

// The automorphism group S_q wr S_d of a non-exceptional H(d,q)_K, held by
// generators with a lazily built element store.
class WreathGroup {
 public:
  WreathGroup(std::uint32_t d, std::uint32_t q, std::uint64_t cap);

  const VertexSpace& space() const noexcept { return space_; }
  // (q!)^d d!, saturating at UINT64_MAX.
  std::uint64_t order() const noexcept { return order_; }
  // Coxeter generators of each S_q factor, then a transposition and a d-cycle
  // of the places (the latter two only for d >= 2).
  const std::vector<Perm>& generators() const noexcept { return generators_; }
  // Materialises every element. Throws CapExceeded above the cap.
  const GroupStore& elements() const;

  // Structured enumeration without materialising the group. The element
  // passed to `fn` is only valid during the call.
  // Every g with g(from) == to.
  void for_each_mapping(VertexId from, VertexId to,
                        const std::function<void(const WreathElement&)>& fn) const;
  // Involutions g with g(from) == to (and hence g(to) == from).
  void for_each_involution_mapping(
      VertexId from, VertexId to,
      const std::function<void(const WreathElement&)>& fn) const;
  // Generators of the stabiliser of `v`.
  std::vector<Perm> stabilizer_generators(VertexId v) const;

 private:
  VertexSpace space_;
  std::uint64_t cap_;
  std::uint64_t order_;
  std::vector<Perm> generators_;
  struct Lazy {
    std::once_flag once;
    std::shared_ptr<const GroupStore> store;
  };
  std::shared_ptr<Lazy> lazy_;
};

// Throws InvalidInput when Aut H(d,q)_K is known to be strictly larger than
// the wreath product, or is not known to equal it (q <= 3 with K != {1}).
// Throws CapExceeded if (q!)^d d! exceeds the cap.
WreathGroup aut_group(const MergedGraph& graph, std::uint64_t cap = kDefaultGroupCap);

// Describes why aut_group() would refuse the graph, or nothing if it is the
// wreath product.
std::optional<std::string> exceptional_automorphisms(const MergedGraph& graph);

// Backtracking search for every automorphism of a small graph (|V| <= 40).
// Used only to validate the wreath-product description.
GroupStore brute_force_automorphisms(const std::vector<std::vector<VertexId>>& adjacency,
                                     std::size_t cap = kDefaultGroupCap);

}  // namespace hammaps
