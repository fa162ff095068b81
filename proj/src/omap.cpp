#include "hammaps/omap.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hammaps/errors.hpp"

namespace hammaps {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

std::vector<std::size_t> orbit_lengths(const Perm& p) {
  std::vector<std::size_t> out;
  std::vector<bool> seen(p.degree(), false);
  for (std::uint32_t s = 0; s < p.degree(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::uint32_t x = s; !seen[x]; x = p[x]) {
      seen[x] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Per-arc length of the orbit containing it.
std::vector<std::uint32_t> orbit_length_of(const Perm& p) {
  std::vector<std::uint32_t> len(p.degree(), 0);
  for (std::uint32_t s = 0; s < p.degree(); ++s) {
    if (len[s] != 0) continue;
    std::uint32_t count = 0;
    std::uint32_t x = s;
    do {
      ++count;
      x = p[x];
    } while (x != s);
    x = s;
    do {
      len[x] = count;
      x = p[x];
    } while (x != s);
  }
  return len;
}

// Reusable propagation state; `stamp` avoids clearing phi between attempts.
class Propagator {
 public:
  Propagator(const OrientedMap& from, const OrientedMap& to)
      : r1_(from.rotation().images()),
        l1_(from.reversal().images()),
        r2_(to.rotation().images()),
        l2_(to.reversal().images()),
        phi_(r1_.size(), kUnset),
        stamp_(r1_.size(), 0),
        queue_(r1_.size()) {}

  bool run(std::uint32_t a, std::uint32_t b) {
    if (r1_.size() != r2_.size()) return false;
    ++epoch_;
    std::size_t head = 0;
    std::size_t tail = 0;
    assign(a, b);
    queue_[tail++] = a;
    while (head < tail) {
      const std::uint32_t x = queue_[head++];
      const std::uint32_t fx = phi_[x];
      if (!step(r1_[x], r2_[fx], tail)) return false;
      if (!step(l1_[x], l2_[fx], tail)) return false;
    }
    return true;
  }

  const std::vector<std::uint32_t>& phi() const noexcept { return phi_; }

 private:
  void assign(std::uint32_t x, std::uint32_t y) {
    phi_[x] = y;
    stamp_[x] = epoch_;
  }
  bool step(std::uint32_t y, std::uint32_t target, std::size_t& tail) {
    if (stamp_[y] == epoch_) return phi_[y] == target;
    assign(y, target);
    queue_[tail++] = y;
    return true;
  }

  const std::vector<std::uint32_t>& r1_;
  const std::vector<std::uint32_t>& l1_;
  const std::vector<std::uint32_t>& r2_;
  const std::vector<std::uint32_t>& l2_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> queue_;
  std::uint32_t epoch_ = 0;
};

}  // namespace

OrientedMap OrientedMap::build(Perm rotation, Perm reversal,
                               std::vector<std::uint32_t> labels) {
  const std::size_t n = rotation.degree();
  if (reversal.degree() != n) throw InvalidInput("R and L have different degrees");
  if (n == 0) throw InvalidInput("a map needs at least one edge");
  for (std::uint32_t a = 0; a < n; ++a) {
    if (reversal[a] == a) throw InvalidInput("L has a fixed point");
    if (reversal[reversal[a]] != a) throw InvalidInput("L is not an involution");
  }
  if (!labels.empty() && labels.size() != n) {
    throw InvalidInput("label list length differs from arc count");
  }
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::uint32_t y : {rotation[queue[i]], reversal[queue[i]]}) {
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  if (queue.size() != n) throw InvalidInput("map is disconnected");

  OrientedMap m;
  m.R_ = std::move(rotation);
  m.L_ = std::move(reversal);
  m.labels_ = std::move(labels);
  m.vertices_ = orbit_lengths(m.R_).size();
  m.faces_ = orbit_lengths(m.face_permutation()).size();
  return m;
}

bool MapType::uniform() const noexcept {
  auto flat = [](const std::vector<std::size_t>& v) {
    return !v.empty() && v.front() == v.back();
  };
  return flat(face_sizes) && flat(vertex_sizes) && flat(petrie_lengths);
}

std::string MapType::to_string() const {
  if (uniform()) {
    return "{" + std::to_string(m()) + "," + std::to_string(n()) + "}_" +
           std::to_string(l());
  }
  auto list = [](const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s + "]";
  };
  return "faces " + list(face_sizes) + " vertices " + list(vertex_sizes) +
         " petrie " + list(petrie_lengths);
}

namespace {

// State s = 2*arc + turn, turn 1 meaning the next step uses R∘L.
std::uint32_t petrie_next(const Perm& R, const Perm& Rinv, const Perm& L,
                          std::uint32_t state) {
  const std::uint32_t arc = state >> 1;
  const bool right = state & 1;
  const std::uint32_t b = L[arc];
  const std::uint32_t next = right ? R[b] : Rinv[b];
  return (next << 1) | (right ? 0u : 1u);
}

std::uint32_t first_turn(PetrieConvention c) {
  return c == PetrieConvention::kRightFirst ? 1u : 0u;
}

}  // namespace

std::size_t petrie_walk_length(const OrientedMap& map, std::uint32_t arc,
                               PetrieConvention convention) {
  const Perm Rinv = map.rotation().inverse();
  const std::uint32_t start = (arc << 1) | first_turn(convention);
  std::size_t steps = 0;
  std::uint32_t s = start;
  do {
    s = petrie_next(map.rotation(), Rinv, map.reversal(), s);
    ++steps;
  } while (s != start);
  return steps;
}

MapType type_of(const OrientedMap& map, PetrieConvention convention) {
  MapType t;
  t.face_sizes = orbit_lengths(map.face_permutation());
  t.vertex_sizes = orbit_lengths(map.rotation());
  const Perm Rinv = map.rotation().inverse();
  const std::size_t states = 2 * map.arc_count();
  std::vector<bool> seen(states, false);
  // Walks start with the convention's first turn; every orbit of the state
  // machine contains such a state because the turn bit alternates.
  for (std::uint32_t arc = 0; arc < map.arc_count(); ++arc) {
    const std::uint32_t start = (arc << 1) | first_turn(convention);
    if (seen[start]) continue;
    std::size_t len = 0;
    std::uint32_t s = start;
    do {
      seen[s] = true;
      s = petrie_next(map.rotation(), Rinv, map.reversal(), s);
      ++len;
    } while (s != start);
    t.petrie_lengths.push_back(len);
  }
  std::sort(t.petrie_lengths.begin(), t.petrie_lengths.end());
  return t;
}

EulerGenus euler_genus(const OrientedMap& map) {
  EulerGenus g;
  g.chi = static_cast<std::int64_t>(map.vertex_count()) -
          static_cast<std::int64_t>(map.edge_count()) +
          static_cast<std::int64_t>(map.face_count());
  if (g.chi % 2 != 0) {
    throw ConsistencyError("odd Euler characteristic " + std::to_string(g.chi));
  }
  g.genus = (2 - g.chi) / 2;
  return g;
}

Regularity is_orientably_regular(const OrientedMap& map) {
  // Arcs in the orbit of arc 0 under automorphisms found so far need no
  // propagation of their own; every other arc is tested directly.
  const std::size_t n = map.arc_count();
  Propagator prop(map, map);
  std::vector<std::vector<std::uint32_t>> autos;
  std::vector<bool> in_orbit(n, false);
  std::vector<std::uint32_t> orbit{0};
  in_orbit[0] = true;
  auto grow = [&](std::size_t from_gen) {
    // New generators act on the whole orbit, old ones on the new points.
    const std::size_t old_size = orbit.size();
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      const std::size_t first = i < old_size ? from_gen : 0;
      for (std::size_t g = first; g < autos.size(); ++g) {
        const std::uint32_t y = autos[g][orbit[i]];
        if (!in_orbit[y]) {
          in_orbit[y] = true;
          orbit.push_back(y);
        }
      }
    }
  };
  for (std::uint32_t b = 1; b < n; ++b) {
    if (in_orbit[b] || !prop.run(0, b)) continue;
    autos.push_back(prop.phi());
    grow(autos.size() - 1);
  }
  Regularity r;
  r.aut_order = orbit.size();
  r.regular = r.aut_order == n;
  return r;
}

bool extend_isomorphism(const OrientedMap& from, const OrientedMap& to,
                        std::uint32_t a, std::uint32_t b,
                        std::vector<std::uint32_t>& phi) {
  if (from.arc_count() != to.arc_count()) return false;
  Propagator prop(from, to);
  if (!prop.run(a, b)) return false;
  phi = prop.phi();
  return true;
}

std::optional<std::vector<std::uint32_t>> are_isomorphic(const OrientedMap& a,
                                                         const OrientedMap& b) {
  if (a.arc_count() != b.arc_count() || a.vertex_count() != b.vertex_count() ||
      a.face_count() != b.face_count()) {
    return std::nullopt;
  }
  const auto va = orbit_length_of(a.rotation());
  const auto vb = orbit_length_of(b.rotation());
  const auto fa = orbit_length_of(a.face_permutation());
  const auto fb = orbit_length_of(b.face_permutation());
  Propagator prop(a, b);
  for (std::uint32_t t = 0; t < b.arc_count(); ++t) {
    if (va[0] != vb[t] || fa[0] != fb[t]) continue;
    if (prop.run(0, t)) return prop.phi();
  }
  return std::nullopt;
}

std::vector<std::uint32_t> canonical_code(const OrientedMap& map) {
  const std::size_t n = map.arc_count();
  const auto& R = map.rotation().images();
  const auto Rinv = map.rotation().inverse().images();
  const auto& L = map.reversal().images();

  std::vector<std::uint32_t> best;
  std::vector<std::uint32_t> code(3 * n);
  std::vector<std::uint32_t> label(n);
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<std::uint32_t> order(n);
  for (std::uint32_t start = 0; start < n; ++start) {
    const std::uint32_t epoch = start + 1;
    std::uint32_t next_label = 0;
    auto visit = [&](std::uint32_t x) {
      if (stamp[x] != epoch) {
        stamp[x] = epoch;
        label[x] = next_label;
        order[next_label++] = x;
      }
      return label[x];
    };
    visit(start);
    // -1: already smaller than best, 0: equal so far.
    int cmp = best.empty() ? -1 : 0;
    bool abort = false;
    std::size_t k = 0;
    for (std::uint32_t i = 0; i < n && !abort; ++i) {
      const std::uint32_t x = order[i];
      for (std::uint32_t y : {R[x], Rinv[x], L[x]}) {
        const std::uint32_t c = visit(y);
        if (cmp == 0) {
          if (c < best[k]) {
            cmp = -1;
          } else if (c > best[k]) {
            abort = true;
            break;
          }
        }
        code[k++] = c;
      }
    }
    if (!abort && cmp < 0) best = code;
  }
  return best;
}

OrientedMap mirror(const OrientedMap& map) {
  return OrientedMap::build(map.rotation().inverse(), map.reversal(), map.labels());
}

OrientedMap wilson(const OrientedMap& map, std::int64_t j) {
  const auto lengths = orbit_lengths(map.rotation());
  if (lengths.front() != lengths.back()) {
    throw InvalidInput("Wilson operation needs constant vertex valency");
  }
  const std::int64_t n = static_cast<std::int64_t>(lengths.front());
  std::int64_t r = j % n;
  if (r < 0) r += n;
  if (std::gcd(r, n) != 1) {
    throw InvalidInput("exponent " + std::to_string(j) +
                       " is not coprime to the valency " + std::to_string(n));
  }
  return OrientedMap::build(map.rotation().pow(r), map.reversal(), map.labels());
}

OrientedMap dual(const OrientedMap& map) {
  return OrientedMap::build(map.face_permutation(), map.reversal());
}

MapInvariants invariants(const OrientedMap& map) {
  MapInvariants inv;
  const MapType t = type_of(map);
  if (t.uniform()) {
    inv.m = t.m();
    inv.n = t.n();
    inv.l = t.l();
  }
  const EulerGenus eg = euler_genus(map);
  inv.chi = eg.chi;
  inv.genus = eg.genus;
  const Regularity reg = is_orientably_regular(map);
  inv.regular = reg.regular;
  inv.aut_order = reg.aut_order;
  inv.reflexible = are_isomorphic(map, mirror(map)).has_value();
  return inv;
}

void write_map(std::ostream& out, const OrientedMap& map) {
  auto line = [&](const std::vector<std::uint32_t>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ' ';
      out << v[i];
    }
    out << '\n';
  };
  out << "omap " << map.arc_count() << '\n';
  line(map.rotation().images());
  line(map.reversal().images());
  if (!map.labels().empty()) line(map.labels());
}

OrientedMap read_map(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw InvalidInput("empty map file");
  std::istringstream hs(header);
  std::string magic;
  std::size_t count = 0;
  if (!(hs >> magic >> count) || magic != "omap") {
    throw InvalidInput("map file must start with 'omap <arcCount>'");
  }
  auto read_line = [&](bool required) -> std::optional<std::vector<std::uint32_t>> {
    std::string text;
    if (!std::getline(in, text) || text.empty()) {
      if (required) throw InvalidInput("map file is truncated");
      return std::nullopt;
    }
    std::istringstream ls(text);
    std::vector<std::uint32_t> v;
    std::uint64_t x = 0;
    while (ls >> x) {
      if (x > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidInput("arc index out of range");
      }
      v.push_back(static_cast<std::uint32_t>(x));
    }
    if (!ls.eof()) throw InvalidInput("malformed line in map file");
    if (v.size() != count) {
      throw InvalidInput("expected " + std::to_string(count) + " entries, found " +
                         std::to_string(v.size()));
    }
    return v;
  };
  auto R = read_line(true);
  auto L = read_line(true);
  auto labels = read_line(false);
  return OrientedMap::build(Perm(std::move(*R)), Perm(std::move(*L)),
                            labels ? std::move(*labels) : std::vector<std::uint32_t>{});
}

std::string map_to_string(const OrientedMap& map) {
  std::ostringstream out;
  write_map(out, map);
  return out.str();
}

OrientedMap map_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_map(in);
}

}  // namespace hammaps
