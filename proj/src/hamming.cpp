#include "hammaps/hamming.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "hammaps/errors.hpp"

namespace hammaps {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All permutations of [0, n) in lexicographic order.
std::vector<std::vector<std::uint32_t>> all_permutations(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool is_involution(const std::vector<std::uint32_t>& p) {
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    if (p[p[i]] != i) return false;
  }
  return true;
}

std::vector<std::uint32_t> invert(const std::vector<std::uint32_t>& p) {
  std::vector<std::uint32_t> inv(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

}  // namespace

VertexSpace::VertexSpace(std::uint32_t d, std::uint32_t q) : d_(d), q_(q) {
  if (d == 0) throw InvalidInput("dimension d must be at least 1");
  if (q < 2) throw InvalidInput("alphabet size q must be at least 2");
  std::uint64_t size = 1;
  radix_.resize(d);
  for (std::uint32_t i = 0; i < d; ++i) {
    radix_[i] = static_cast<std::uint32_t>(size);
    size *= q;
    if (size > std::numeric_limits<std::uint32_t>::max()) {
      throw InvalidInput("q^d does not fit in 32 bits");
    }
  }
  size_ = static_cast<std::uint32_t>(size);
}

VertexId VertexSpace::encode(std::span<const std::uint32_t> coords) const {
  if (coords.size() != d_) throw InvalidInput("coordinate vector has wrong length");
  VertexId v = 0;
  for (std::uint32_t i = 0; i < d_; ++i) {
    if (coords[i] >= q_) throw InvalidInput("coordinate out of range");
    v += coords[i] * radix_[i];
  }
  return v;
}

std::vector<std::uint32_t> VertexSpace::decode(VertexId v) const {
  if (v >= size_) throw InvalidInput("vertex index out of range");
  std::vector<std::uint32_t> c(d_);
  for (std::uint32_t i = 0; i < d_; ++i) {
    c[i] = v % q_;
    v /= q_;
  }
  return c;
}

std::uint32_t hamming_distance(const VertexSpace& space, VertexId v, VertexId w) {
  if (v >= space.size() || w >= space.size()) {
    throw InvalidInput("vertex index out of range");
  }
  std::uint32_t dist = 0;
  for (std::uint32_t i = 0; i < space.d(); ++i) {
    dist += v % space.q() != w % space.q();
    v /= space.q();
    w /= space.q();
  }
  return dist;
}

MergedGraph::MergedGraph(std::uint32_t d, std::uint32_t q, std::vector<std::uint32_t> K)
    : space_(d, q), K_(std::move(K)), in_K_(d + 1, false) {
  std::sort(K_.begin(), K_.end());
  K_.erase(std::unique(K_.begin(), K_.end()), K_.end());
  if (K_.empty()) throw InvalidInput("distance set K must be non-empty");
  for (std::uint32_t k : K_) {
    if (k < 1 || k > d) {
      throw InvalidInput("distance " + std::to_string(k) + " outside 1.." +
                         std::to_string(d));
    }
    in_K_[k] = true;
  }
}

std::uint64_t MergedGraph::valency() const noexcept {
  std::uint64_t total = 0;
  for (std::uint32_t k : K_) {
    std::uint64_t term = binomial(d(), k);
    for (std::uint32_t i = 0; i < k; ++i) term *= q() - 1;
    total += term;
  }
  return total;
}

bool MergedGraph::adjacent(VertexId v, VertexId w) const {
  return in_K_[hamming_distance(space_, v, w)];
}

std::vector<VertexId> MergedGraph::neighbors(VertexId v) const {
  if (v >= space_.size()) throw InvalidInput("vertex index out of range");
  std::vector<VertexId> out;
  out.reserve(valency());
  if (is_plain_hamming()) {
    for (std::uint32_t i = 0; i < d(); ++i) {
      for (std::uint32_t a = 0; a < q(); ++a) {
        if (a != space_.coord(v, i)) out.push_back(space_.with_coord(v, i, a));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  for (VertexId w = 0; w < space_.size(); ++w) {
    if (in_K_[hamming_distance(space_, v, w)]) out.push_back(w);
  }
  return out;
}

std::vector<std::vector<VertexId>> MergedGraph::adjacency() const {
  std::vector<std::vector<VertexId>> adj(space_.size());
  for (VertexId v = 0; v < space_.size(); ++v) adj[v] = neighbors(v);
  return adj;
}

void MergedGraph::dump(std::ostream& out) const {
  for (VertexId v = 0; v < space_.size(); ++v) {
    out << v << ':';
    for (VertexId w : neighbors(v)) out << ' ' << w;
    out << '\n';
  }
}

WreathElement WreathElement::identity(std::uint32_t d, std::uint32_t q) {
  WreathElement g;
  std::vector<std::uint32_t> id(q);
  std::iota(id.begin(), id.end(), 0u);
  g.sigmas.assign(d, id);
  g.tau.resize(d);
  std::iota(g.tau.begin(), g.tau.end(), 0u);
  return g;
}

VertexId WreathElement::apply(const VertexSpace& space, VertexId v) const {
  VertexId w = 0;
  for (std::uint32_t i = 0; i < space.d(); ++i) {
    w += sigmas[i][space.coord(v, i)] * space.radix(tau[i]);
  }
  return w;
}

Perm WreathElement::to_perm(const VertexSpace& space) const {
  std::vector<std::uint32_t> images(space.size());
  for (VertexId v = 0; v < space.size(); ++v) images[v] = apply(space, v);
  return Perm(std::move(images));
}

WreathElement WreathElement::inverse() const {
  WreathElement h;
  const std::size_t d = tau.size();
  h.tau = invert(tau);
  h.sigmas.resize(d);
  for (std::size_t j = 0; j < d; ++j) h.sigmas[j] = invert(sigmas[h.tau[j]]);
  return h;
}

WreathElement compose(const WreathElement& a, const WreathElement& b) {
  if (a.tau.size() != b.tau.size()) throw InvalidInput("wreath dimension mismatch");
  const std::size_t d = a.tau.size();
  WreathElement c;
  c.tau.resize(d);
  c.sigmas.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    c.tau[i] = a.tau[b.tau[i]];
    const auto& sa = a.sigmas[b.tau[i]];
    const auto& sb = b.sigmas[i];
    c.sigmas[i].resize(sb.size());
    for (std::size_t x = 0; x < sb.size(); ++x) c.sigmas[i][x] = sa[sb[x]];
  }
  return c;
}

WreathGroup::WreathGroup(std::uint32_t d, std::uint32_t q, std::uint64_t cap)
    : space_(d, q), cap_(cap), lazy_(std::make_shared<Lazy>()) {
  std::uint64_t qfact = 1;
  for (std::uint64_t i = 2; i <= q; ++i) qfact = saturating_mul(qfact, i);
  order_ = 1;
  for (std::uint32_t i = 0; i < d; ++i) order_ = saturating_mul(order_, qfact);
  for (std::uint64_t i = 2; i <= d; ++i) order_ = saturating_mul(order_, i);

  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t a = 0; a + 1 < q; ++a) {
      WreathElement g = WreathElement::identity(d, q);
      std::swap(g.sigmas[i][a], g.sigmas[i][a + 1]);
      generators_.push_back(g.to_perm(space_));
    }
  }
  if (d >= 2) {
    WreathElement swap = WreathElement::identity(d, q);
    std::swap(swap.tau[0], swap.tau[1]);
    generators_.push_back(swap.to_perm(space_));
    if (d >= 3) {
      WreathElement cycle = WreathElement::identity(d, q);
      for (std::uint32_t i = 0; i < d; ++i) cycle.tau[i] = (i + 1) % d;
      generators_.push_back(cycle.to_perm(space_));
    }
  }
}

const GroupStore& WreathGroup::elements() const {
  std::call_once(lazy_->once, [this] {
    if (order_ > cap_) {
      throw CapExceeded("|S_q wr S_d| = " + std::to_string(order_) +
                        " exceeds the group cap of " + std::to_string(cap_));
    }
    lazy_->store = std::make_shared<const GroupStore>(
        close_or_throw(generators_, static_cast<std::size_t>(cap_)));
  });
  return *lazy_->store;
}

namespace {

// Shared driver for the structured enumerations: walks every tau from
// `taus`, and for each place i every sigma from candidates(i, tau).
void enumerate_wreath(
    std::uint32_t d, const std::vector<std::vector<std::uint32_t>>& taus,
    const std::function<std::vector<const std::vector<std::uint32_t>*>(
        std::uint32_t, const std::vector<std::uint32_t>&)>& candidates,
    const std::function<bool(const WreathElement&, std::uint32_t)>& accept_partial,
    const std::function<void(const WreathElement&)>& fn) {
  WreathElement g;
  g.sigmas.resize(d);
  for (const auto& tau : taus) {
    g.tau = tau;
    std::vector<std::vector<const std::vector<std::uint32_t>*>> options(d);
    bool empty = false;
    for (std::uint32_t i = 0; i < d; ++i) {
      options[i] = candidates(i, tau);
      empty = empty || options[i].empty();
    }
    if (empty) continue;
    std::vector<std::size_t> pos(d, 0);
    // Odometer over the option lists.
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t i) {
      if (i == d) {
        fn(g);
        return;
      }
      for (const auto* s : options[i]) {
        g.sigmas[i] = *s;
        if (accept_partial(g, i)) rec(i + 1);
      }
    };
    rec(0);
  }
}

}  // namespace

void WreathGroup::for_each_mapping(
    VertexId from, VertexId to,
    const std::function<void(const WreathElement&)>& fn) const {
  const std::uint32_t d = space_.d();
  const std::uint32_t q = space_.q();
  const auto sym_q = all_permutations(q);
  const auto taus = all_permutations(d);
  const auto a = space_.decode(from);
  const auto b = space_.decode(to);
  enumerate_wreath(
      d, taus,
      [&](std::uint32_t i, const std::vector<std::uint32_t>& tau) {
        std::vector<const std::vector<std::uint32_t>*> out;
        for (const auto& s : sym_q) {
          if (s[a[i]] == b[tau[i]]) out.push_back(&s);
        }
        return out;
      },
      [](const WreathElement&, std::uint32_t) { return true; }, fn);
}

void WreathGroup::for_each_involution_mapping(
    VertexId from, VertexId to,
    const std::function<void(const WreathElement&)>& fn) const {
  const std::uint32_t d = space_.d();
  const std::uint32_t q = space_.q();
  const auto sym_q = all_permutations(q);
  std::vector<std::vector<std::uint32_t>> taus;
  for (auto& t : all_permutations(d)) {
    if (is_involution(t)) taus.push_back(std::move(t));
  }
  const auto a = space_.decode(from);
  const auto b = space_.decode(to);
  std::vector<std::vector<std::uint32_t>> inverses(sym_q.size());
  std::vector<std::vector<std::uint32_t>> storage;
  enumerate_wreath(
      d, taus,
      [&](std::uint32_t i, const std::vector<std::uint32_t>& tau) {
        std::vector<const std::vector<std::uint32_t>*> out;
        const std::uint32_t j = tau[i];
        for (const auto& s : sym_q) {
          if (j == i) {
            if (s[a[i]] == b[i] && is_involution(s)) out.push_back(&s);
          } else if (i < j) {
            // sigma_j is forced to be sigma_i^{-1}; see accept_partial.
            if (s[a[i]] == b[j] && s[b[i]] == a[j]) out.push_back(&s);
          } else {
            out.push_back(&s);
          }
        }
        return out;
      },
      [&](const WreathElement& g, std::uint32_t i) {
        const std::uint32_t j = g.tau[i];
        if (j >= i) return true;
        // Place i is the larger end of a 2-cycle: require sigma_i = sigma_j^-1.
        const auto& sj = g.sigmas[j];
        const auto& si = g.sigmas[i];
        for (std::uint32_t x = 0; x < q; ++x) {
          if (si[sj[x]] != x) return false;
        }
        return true;
      },
      fn);
}

std::vector<Perm> WreathGroup::stabilizer_generators(VertexId v) const {
  const std::uint32_t d = space_.d();
  const std::uint32_t q = space_.q();
  const auto c = space_.decode(v);
  std::vector<Perm> gens;
  for (std::uint32_t i = 0; i < d; ++i) {
    std::vector<std::uint32_t> others;
    for (std::uint32_t a = 0; a < q; ++a) {
      if (a != c[i]) others.push_back(a);
    }
    for (std::size_t k = 0; k + 1 < others.size(); ++k) {
      WreathElement g = WreathElement::identity(d, q);
      std::swap(g.sigmas[i][others[k]], g.sigmas[i][others[k + 1]]);
      gens.push_back(g.to_perm(space_));
    }
  }
  auto place_move = [&](const std::vector<std::uint32_t>& tau) {
    WreathElement g = WreathElement::identity(d, q);
    g.tau = tau;
    for (std::uint32_t i = 0; i < d; ++i) {
      std::swap(g.sigmas[i][c[i]], g.sigmas[i][c[tau[i]]]);
    }
    gens.push_back(g.to_perm(space_));
  };
  if (d >= 2) {
    std::vector<std::uint32_t> swap(d);
    std::iota(swap.begin(), swap.end(), 0u);
    std::swap(swap[0], swap[1]);
    place_move(swap);
    if (d >= 3) {
      std::vector<std::uint32_t> cycle(d);
      for (std::uint32_t i = 0; i < d; ++i) cycle[i] = (i + 1) % d;
      place_move(cycle);
    }
  }
  if (gens.empty()) gens.emplace_back(space_.size());
  return gens;
}

std::optional<std::string> exceptional_automorphisms(const MergedGraph& graph) {
  const std::uint32_t d = graph.d();
  const std::uint32_t q = graph.q();
  const auto& K = graph.distances();
  if (graph.is_plain_hamming()) return std::nullopt;
  if (graph.is_complete()) {
    return "K = {1..d} gives the complete graph K_" +
           std::to_string(graph.vertex_count()) +
           "; its automorphism group is the full symmetric group";
  }
  if (q <= 3) {
    return "merged Hamming graphs with q <= 3 and K != {1} are not known to have "
           "automorphism group S_q wr S_d";
  }
  if (q == 4 && d >= 3) {
    bool all_even = true;
    bool all_odd = true;
    for (std::uint32_t k : K) {
      (k % 2 == 0 ? all_odd : all_even) = false;
    }
    const std::size_t evens = d / 2;
    const std::size_t odds = d - evens;
    if ((all_even && K.size() == evens) || (all_odd && K.size() == odds)) {
      return std::string("q = 4, d >= 3 with K the ") + (all_even ? "even" : "odd") +
             " distances: the automorphism group contains the rank-3 group "
             "V:GO(2d,2), strictly larger than S_4 wr S_d";
    }
  }
  return std::nullopt;
}

WreathGroup aut_group(const MergedGraph& graph, std::uint64_t cap) {
  if (auto why = exceptional_automorphisms(graph)) {
    throw InvalidInput("automorphism group is not S_q wr S_d: " + *why);
  }
  WreathGroup group(graph.d(), graph.q(), cap);
  if (group.order() > cap) {
    throw CapExceeded("|S_q wr S_d| = " + std::to_string(group.order()) +
                      " exceeds the group cap of " + std::to_string(cap));
  }
  return group;
}

GroupStore brute_force_automorphisms(const std::vector<std::vector<VertexId>>& adjacency,
                                     std::size_t cap) {
  const std::size_t n = adjacency.size();
  if (n == 0 || n > 40) {
    throw InvalidInput("brute-force automorphism search supports 1..40 vertices");
  }
  std::vector<std::uint64_t> mask(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (VertexId w : adjacency[v]) mask[v] |= std::uint64_t{1} << w;
  }
  // Search order: breadth-first from 0, then any leftovers.
  std::vector<std::uint32_t> order;
  std::vector<bool> placed(n, false);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (placed[s]) continue;
    placed[s] = true;
    order.push_back(s);
    for (std::size_t i = order.size() - 1; i < order.size(); ++i) {
      for (VertexId w : adjacency[order[i]]) {
        if (!placed[w]) {
          placed[w] = true;
          order.push_back(w);
        }
      }
    }
  }
  std::vector<Perm> found;
  std::vector<std::uint32_t> image(n, 0);
  std::vector<bool> used(n, false);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      if (found.size() >= cap) {
        throw CapExceeded("automorphism search exceeded cap", found.size() + 1);
      }
      found.emplace_back(image);
      return;
    }
    const std::uint32_t v = order[k];
    for (std::uint32_t w = 0; w < n; ++w) {
      if (used[w] || adjacency[w].size() != adjacency[v].size()) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        const std::uint32_t u = order[j];
        const bool e1 = (mask[v] >> u) & 1;
        const bool e2 = (mask[w] >> image[u]) & 1;
        ok = e1 == e2;
      }
      if (!ok) continue;
      used[w] = true;
      image[v] = w;
      rec(k + 1);
      used[w] = false;
    }
  };
  rec(0);
  return group_from_elements(std::move(found));
}

}  // namespace hammaps
