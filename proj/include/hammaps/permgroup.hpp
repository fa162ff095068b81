#pragma once

// Finite permutations and brute-force group closure.
//
// Composition convention: compose(a, b) applies b first, then a, so that
// compose(a, b)[i] == a[b[i]]. The abstract product "g x" used by the map
// constructions is compose(g, x).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace hammaps {

class Perm {
 public:
  Perm() = default;
  // Identity on n points.
  explicit Perm(std::size_t n);
  // Throws InvalidInput unless `images` is a permutation of [0, n).
  explicit Perm(std::vector<std::uint32_t> images);
  // Cycles over [0, n); points not mentioned are fixed.
  static Perm from_cycles(std::size_t n,
                          const std::vector<std::vector<std::uint32_t>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint32_t operator[](std::size_t i) const noexcept { return images_[i]; }
  std::uint32_t operator()(std::uint32_t i) const noexcept { return images_[i]; }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Perm inverse() const;
  Perm pow(std::int64_t k) const;
  // lcm of cycle lengths.
  std::uint64_t order() const;
  // cycle length -> multiplicity
  std::map<std::size_t, std::size_t> cycle_type() const;
  std::vector<std::vector<std::uint32_t>> cycles() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  struct Unchecked {};
  Perm(std::vector<std::uint32_t> images, Unchecked) : images_(std::move(images)) {}
  friend Perm compose(const Perm& a, const Perm& b);

  std::vector<std::uint32_t> images_;
};

// a after b. Throws InvalidInput on degree mismatch.
Perm compose(const Perm& a, const Perm& b);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

struct ClosureResult;

// A finite permutation group with an explicit, deduplicated element list.
// Iteration order is insertion order of the breadth-first closure, so it is
// reproducible for a fixed generator list.
class GroupStore {
 public:
  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Perm>& elements() const noexcept { return elements_; }
  const std::vector<Perm>& generators() const noexcept { return generators_; }
  const Perm& operator[](std::size_t i) const noexcept { return elements_[i]; }
  std::optional<std::size_t> index_of(const Perm& g) const;
  bool contains(const Perm& g) const { return index_of(g).has_value(); }

 private:
  friend ClosureResult close(std::span<const Perm> gens, std::size_t cap);
  friend GroupStore group_from_elements(std::vector<Perm> elements);

  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, std::size_t, PermHash> index_;
};

struct ClosureResult {
  // Set iff the closure completed within the cap.
  std::optional<GroupStore> group;
  // Elements found before stopping (the full order when complete).
  std::size_t explored = 0;
};

// Breadth-first product closure. Stops as soon as more than `cap` elements
// are found. Throws InvalidInput on an empty generator list or mixed degrees.
ClosureResult close(std::span<const Perm> gens, std::size_t cap);

// Wraps an explicit element list that is already closed (checked: identity
// present, no duplicates, closed under composition). Generators are the full
// list.
GroupStore group_from_elements(std::vector<Perm> elements);

// As close(), but throws CapExceeded instead of returning an incomplete result.
GroupStore close_or_throw(std::span<const Perm> gens, std::size_t cap);

struct ActionReport {
  bool transitive = false;
  bool regular = false;
  // Stabiliser of point 0.
  std::size_t stabilizer_order = 0;
  std::size_t orbit_count = 0;
};

using Action = std::function<std::uint32_t(const Perm&, std::uint32_t)>;

// `action(g, x)` must define a group action on [0, domain_size).
ActionReport action_tests(const GroupStore& group, std::size_t domain_size,
                          const Action& action);

// Natural action on the points the permutations move.
ActionReport action_tests(const GroupStore& group);

}  // namespace hammaps
