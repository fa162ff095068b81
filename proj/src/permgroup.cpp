#include "hammaps/permgroup.hpp"

#include <numeric>
#include <string>

#include "hammaps/errors.hpp"

namespace hammaps {

Perm::Perm(std::size_t n) : images_(n) {
  std::iota(images_.begin(), images_.end(), 0u);
}

Perm::Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::uint32_t x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw InvalidInput("image list is not a permutation");
    }
    seen[x] = true;
  }
}

Perm Perm::from_cycles(std::size_t n,
                       const std::vector<std::vector<std::uint32_t>>& cycles) {
  std::vector<std::uint32_t> images(n);
  std::iota(images.begin(), images.end(), 0u);
  std::vector<bool> touched(n, false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= n || touched[c[i]]) throw InvalidInput("malformed cycle list");
      touched[c[i]] = true;
      images[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Perm(std::move(images), Unchecked{});
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  std::vector<std::uint32_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[images_[i]] = static_cast<std::uint32_t>(i);
  }
  return Perm(std::move(inv), Unchecked{});
}

Perm Perm::pow(std::int64_t k) const {
  // Per cycle: point at position i maps to position i + k.
  std::vector<std::uint32_t> out(images_.size());
  for (const auto& cyc : cycles()) {
    const std::int64_t len = static_cast<std::int64_t>(cyc.size());
    std::int64_t shift = k % len;
    if (shift < 0) shift += len;
    for (std::int64_t i = 0; i < len; ++i) {
      out[cyc[i]] = cyc[(i + shift) % len];
    }
  }
  return Perm(std::move(out), Unchecked{});
}

std::uint64_t Perm::order() const {
  std::uint64_t result = 1;
  for (const auto& [len, count] : cycle_type()) {
    result = std::lcm(result, static_cast<std::uint64_t>(len));
  }
  return result;
}

std::map<std::size_t, std::size_t> Perm::cycle_type() const {
  std::map<std::size_t, std::size_t> type;
  for (const auto& c : cycles()) ++type[c.size()];
  return type;
}

std::vector<std::vector<std::uint32_t>> Perm::cycles() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::uint32_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> cyc;
    for (std::uint32_t x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      cyc.push_back(x);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) {
    throw InvalidInput("degree mismatch: " + std::to_string(a.degree()) + " vs " +
                       std::to_string(b.degree()));
  }
  std::vector<std::uint32_t> out(a.degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.images_[b.images_[i]];
  return Perm(std::move(out), Perm::Unchecked{});
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint32_t x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::optional<std::size_t> GroupStore::index_of(const Perm& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ClosureResult close(std::span<const Perm> gens, std::size_t cap) {
  if (gens.empty()) throw InvalidInput("closure needs at least one generator");
  const std::size_t n = gens.front().degree();
  for (const auto& g : gens) {
    if (g.degree() != n) throw InvalidInput("generators have different degrees");
  }
  GroupStore store;
  store.degree_ = n;
  store.generators_.assign(gens.begin(), gens.end());
  Perm id(n);
  store.index_.emplace(id, 0);
  store.elements_.push_back(std::move(id));
  for (std::size_t head = 0; head < store.elements_.size(); ++head) {
    for (const auto& s : store.generators_) {
      Perm h = compose(store.elements_[head], s);
      if (store.index_.contains(h)) continue;
      if (store.elements_.size() >= cap) {
        return {std::nullopt, store.elements_.size() + 1};
      }
      store.index_.emplace(h, store.elements_.size());
      store.elements_.push_back(std::move(h));
    }
  }
  const std::size_t order = store.elements_.size();
  return {std::move(store), order};
}

GroupStore group_from_elements(std::vector<Perm> elements) {
  if (elements.empty()) throw InvalidInput("empty element list");
  GroupStore store;
  store.degree_ = elements.front().degree();
  for (auto& g : elements) {
    if (g.degree() != store.degree_) throw InvalidInput("mixed degrees");
    if (!store.index_.emplace(g, store.elements_.size()).second) {
      throw InvalidInput("duplicate element");
    }
    store.elements_.push_back(std::move(g));
  }
  if (!store.contains(Perm(store.degree_))) {
    throw InvalidInput("element list lacks the identity");
  }
  // Full closure check is quadratic; large stores are spot-checked.
  const std::size_t probe =
      store.elements_.size() <= 4096 ? store.elements_.size() : 64;
  for (std::size_t i = 0; i < probe; ++i) {
    for (std::size_t j = 0; j < probe; ++j) {
      if (!store.contains(compose(store.elements_[i], store.elements_[j]))) {
        throw InvalidInput("element list is not closed under composition");
      }
    }
  }
  store.generators_ = store.elements_;
  return store;
}

GroupStore close_or_throw(std::span<const Perm> gens, std::size_t cap) {
  ClosureResult r = close(gens, cap);
  if (!r.group) {
    throw CapExceeded("group closure exceeded cap of " + std::to_string(cap) +
                          " elements",
                      r.explored);
  }
  return std::move(*r.group);
}

ActionReport action_tests(const GroupStore& group, std::size_t domain_size,
                          const Action& action) {
  ActionReport report;
  if (domain_size == 0) return report;
  std::vector<bool> seen(domain_size, false);
  for (std::uint32_t start = 0; start < domain_size; ++start) {
    if (seen[start]) continue;
    ++report.orbit_count;
    std::vector<std::uint32_t> queue{start};
    seen[start] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& g : group.generators()) {
        const std::uint32_t y = action(g, queue[i]);
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
      }
    }
  }
  for (const auto& g : group.elements()) {
    if (action(g, 0) == 0) ++report.stabilizer_order;
  }
  report.transitive = report.orbit_count == 1;
  report.regular = report.transitive && group.order() == domain_size;
  return report;
}

ActionReport action_tests(const GroupStore& group) {
  return action_tests(group, group.degree(),
                      [](const Perm& g, std::uint32_t x) { return g[x]; });
}

}  // namespace hammaps
