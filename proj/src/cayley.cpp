#include "hammaps/cayley.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "hammaps/errors.hpp"

namespace hammaps {

FieldMatrix::FieldMatrix(Field field, std::size_t dim)
    : field_(std::move(field)), dim_(dim), codes_(dim * dim, 0) {
  if (dim == 0) throw InvalidInput("matrix dimension must be positive");
}

FieldMatrix FieldMatrix::identity(Field field, std::size_t dim) {
  return scalar(std::move(field), dim, 1);
}

FieldMatrix FieldMatrix::scalar(Field field, std::size_t dim, std::uint32_t c) {
  FieldMatrix m(std::move(field), dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, c);
  return m;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
  if (dim_ != o.dim_ || !(field_ == o.field_)) throw InvalidInput("matrix shape mismatch");
  FieldMatrix out(field_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const std::uint32_t a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        out.codes_[i * dim_ + j] =
            field_.add(out.codes_[i * dim_ + j], field_.mul(a, o.at(k, j)));
      }
    }
  }
  return out;
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& o) const {
  if (dim_ != o.dim_ || !(field_ == o.field_)) throw InvalidInput("matrix shape mismatch");
  FieldMatrix out(field_, dim_);
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    out.codes_[i] = field_.add(codes_[i], o.codes_[i]);
  }
  return out;
}

FieldMatrix FieldMatrix::operator-() const {
  FieldMatrix out(field_, dim_);
  for (std::size_t i = 0; i < codes_.size(); ++i) out.codes_[i] = field_.neg(codes_[i]);
  return out;
}

FieldMatrix FieldMatrix::pow(std::uint64_t k) const {
  FieldMatrix result = identity(field_, dim_);
  FieldMatrix base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

std::size_t FieldMatrix::rank() const {
  std::vector<std::uint32_t> a = codes_;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dim_ && rank < dim_; ++col) {
    std::size_t pivot = rank;
    while (pivot < dim_ && a[pivot * dim_ + col] == 0) ++pivot;
    if (pivot == dim_) continue;
    for (std::size_t j = 0; j < dim_; ++j) std::swap(a[pivot * dim_ + j], a[rank * dim_ + j]);
    const std::uint32_t inv = field_.inv(a[rank * dim_ + col]);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (i == rank || a[i * dim_ + col] == 0) continue;
      const std::uint32_t f = field_.mul(a[i * dim_ + col], inv);
      for (std::size_t j = 0; j < dim_; ++j) {
        a[i * dim_ + j] = field_.sub(a[i * dim_ + j], field_.mul(f, a[rank * dim_ + j]));
      }
    }
    ++rank;
  }
  return rank;
}

bool FieldMatrix::is_zero() const noexcept {
  return std::all_of(codes_.begin(), codes_.end(), [](std::uint32_t c) { return c == 0; });
}

std::string FieldMatrix::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j) s += ',';
      s += field_.element(at(i, j)).to_string();
    }
  }
  return s;
}

Vector row_times(const Vector& v, const FieldMatrix& a) {
  if (v.size() != a.dim()) throw InvalidInput("vector length differs from matrix size");
  const Field& f = a.field();
  Vector out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) {
      out[j] = f.add(out[j], f.mul(v[i], a.at(i, j)));
    }
  }
  return out;
}

std::uint64_t matrix_order(const FieldMatrix& a) {
  if (a.rank() != a.dim()) throw InvalidInput("singular matrix has no order");
  const FieldMatrix id = FieldMatrix::identity(a.field(), a.dim());
  FieldMatrix power = a;
  std::uint64_t k = 1;
  while (!(power == id)) {
    power = power * a;
    ++k;
  }
  return k;
}

FieldMatrix monomial_matrix(std::uint32_t d, const FieldElement& omega) {
  if (d == 0) throw InvalidInput("dimension must be positive");
  if (!is_generator(omega)) {
    throw InvalidInput(omega.to_string() + " does not generate the multiplicative group of " +
                       omega.field().to_string());
  }
  FieldMatrix m(omega.field(), d);
  for (std::uint32_t i = 0; i + 1 < d; ++i) m.set(i, i + 1, 1);
  m.set(d - 1, 0, omega.code());
  return m;
}

std::vector<Vector> rotation_sequence(std::uint32_t d, const FieldElement& omega) {
  const FieldMatrix m = monomial_matrix(d, omega);
  const std::size_t n = static_cast<std::size_t>(d) * (omega.field().q() - 1);
  std::vector<Vector> seq;
  seq.reserve(n);
  Vector v(d, 0);
  v[0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    seq.push_back(v);
    v = row_times(v, m);
  }
  return seq;
}

namespace {

std::uint64_t checked_size(std::uint32_t q, std::size_t dim) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    size *= q;
    if (size > std::numeric_limits<std::uint32_t>::max()) {
      throw CapExceeded("vector space too large");
    }
  }
  return size;
}

VertexId encode(const Vector& v, std::uint32_t q) {
  VertexId idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * q + v[i];
  return idx;
}

Vector decode(VertexId idx, std::uint32_t q, std::size_t dim) {
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = idx % q;
    idx /= q;
  }
  return v;
}

// Vertex translation tables: add[w][v] = v + w for w in a given list.
std::vector<VertexId> translate(const Field& f, std::size_t dim, std::uint32_t size,
                                const Vector& w) {
  std::vector<VertexId> out(size);
  for (VertexId v = 0; v < size; ++v) {
    Vector x = decode(v, f.q(), dim);
    for (std::size_t i = 0; i < dim; ++i) x[i] = f.add(x[i], w[i]);
    out[v] = encode(x, f.q());
  }
  return out;
}

}  // namespace

OrientedMap cayley_map(const LinearCayleyDatum& datum, std::size_t arc_cap) {
  const FieldMatrix& alpha = datum.alpha;
  const Field& f = alpha.field();
  const std::size_t dim = alpha.dim();
  if (datum.seed.size() != dim) throw InvalidInput("seed length differs from dimension");
  for (std::uint32_t c : datum.seed) {
    if (c >= f.q()) throw InvalidInput("seed entry is not a field code");
  }
  if (std::all_of(datum.seed.begin(), datum.seed.end(), [](auto c) { return c == 0; })) {
    throw InvalidInput("seed must be nonzero");
  }
  const std::uint32_t size = static_cast<std::uint32_t>(checked_size(f.q(), dim));

  std::vector<Vector> S;
  std::vector<std::int64_t> pos(size, -1);
  for (Vector v = datum.seed;; v = row_times(v, alpha)) {
    const VertexId idx = encode(v, f.q());
    if (pos[idx] >= 0) {
      if (idx != encode(datum.seed, f.q())) {
        throw InvalidInput("iterates of the seed do not form a single cycle");
      }
      break;
    }
    pos[idx] = static_cast<std::int64_t>(S.size());
    S.push_back(v);
  }
  const std::size_t n = S.size();
  if (static_cast<std::uint64_t>(size) * n > arc_cap) {
    throw CapExceeded("map would have " + std::to_string(std::uint64_t{size} * n) +
                          " arcs, above the cap of " + std::to_string(arc_cap),
                      std::uint64_t{size} * n);
  }

  std::vector<std::uint32_t> neg(n);
  std::vector<std::vector<VertexId>> shift(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector m = S[i];
    for (auto& c : m) c = f.neg(c);
    const std::int64_t j = pos[encode(m, f.q())];
    if (j < 0) throw InvalidInput("connection set is not closed under negation");
    neg[i] = static_cast<std::uint32_t>(j);
    shift[i] = translate(f, dim, size, S[i]);
  }

  std::vector<bool> reached(size, false);
  std::vector<VertexId> queue{0};
  reached[0] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      const VertexId w = shift[i][queue[h]];
      if (!reached[w]) {
        reached[w] = true;
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != size) throw InvalidInput("connection set does not generate the group");

  const std::size_t arcs = static_cast<std::size_t>(size) * n;
  std::vector<std::uint32_t> R(arcs), L(arcs), labels(arcs);
  for (VertexId v = 0; v < size; ++v) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = static_cast<std::size_t>(v) * n + i;
      R[a] = static_cast<std::uint32_t>(v * n + (i + 1) % n);
      L[a] = static_cast<std::uint32_t>(static_cast<std::size_t>(shift[i][v]) * n + neg[i]);
      labels[a] = v;
    }
  }
  return OrientedMap::build(Perm(std::move(R)), Perm(std::move(L)), std::move(labels));
}

OrientedMap hamming_map(std::uint32_t d, const FieldElement& omega, std::size_t arc_cap) {
  Vector e1(d, 0);
  e1[0] = 1;
  return cayley_map({monomial_matrix(d, omega), e1}, arc_cap);
}

CayleyPredictions cayley_predictions(const LinearCayleyDatum& datum) {
  const FieldMatrix& alpha = datum.alpha;
  const Field& f = alpha.field();
  CayleyPredictions out;
  const FieldMatrix minus = -alpha;
  const FieldMatrix shifted = minus + (-FieldMatrix::identity(f, alpha.dim()));
  if (shifted.rank() == alpha.dim()) out.face_valency = matrix_order(minus);
  Vector diff = row_times(datum.seed, alpha);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = f.sub(diff[i], datum.seed[i]);
  const bool zero = std::all_of(diff.begin(), diff.end(), [](auto c) { return c == 0; });
  out.petrie_length = 2 * (zero ? 1 : f.p());
  return out;
}

PredictedType predicted_type(std::uint32_t d, std::uint32_t q) {
  PrimePower pp;
  if (!prime_power(q, pp)) {
    throw InvalidInput(std::to_string(q) + " is not a prime power");
  }
  if (d == 0) throw InvalidInput("dimension must be positive");
  PredictedType t;
  t.n = static_cast<std::uint64_t>(d) * (q - 1);
  // A single edge (H(1,2)) has a Petrie walk of length 2.
  t.l = t.n == 1 ? 2 : 2 * pp.p;
  t.m = t.n;
  if (q == 2) {
    t.m = 2 * d;
  } else if (d % 2 == 1 && q == 3) {
    t.m = 3 * d;
  } else if (d % 2 == 1 && q > 3 && q % 4 == 3) {
    t.m = t.n / 2;
  }
  return t;
}

std::int64_t predicted_genus(std::uint32_t d, std::uint32_t q) {
  const PredictedType t = predicted_type(d, q);
  const std::int64_t qd = static_cast<std::int64_t>(checked_size(q, d));
  const std::int64_t n = static_cast<std::int64_t>(t.n);
  const std::int64_t dd = d;
  // g - 1 = num / den
  std::int64_t num = 0;
  std::int64_t den = 1;
  if (q == 2) {
    num = qd * (dd - 3);
    den = 4;
  } else if (d % 2 == 1 && q == 3) {
    num = (qd / 3) * (3 * dd - 5);
    den = 2;
  } else if (t.m * 2 == t.n) {
    num = qd * (n - 6);
    den = 4;
  } else {
    num = qd * (n - 4);
    den = 4;
  }
  if (num % den != 0) {
    throw ConsistencyError("closed-form genus is not an integer for d=" + std::to_string(d) +
                           ", q=" + std::to_string(q));
  }
  const std::int64_t genus = 1 + num / den;

  const std::int64_t twice_edges = qd * n;
  const std::int64_t m = static_cast<std::int64_t>(t.m);
  if (twice_edges % 2 != 0 || twice_edges % m != 0) {
    throw ConsistencyError("predicted type does not tile the vertex set");
  }
  const std::int64_t chi = qd - twice_edges / 2 + twice_edges / m;
  if (chi % 2 != 0 || (2 - chi) / 2 != genus) {
    throw ConsistencyError("closed-form genus disagrees with the Euler characteristic for d=" +
                           std::to_string(d) + ", q=" + std::to_string(q));
  }
  return genus;
}

StandardGenerators standard_generators(std::uint32_t d, const FieldElement& omega,
                                       std::size_t cap) {
  const FieldMatrix m = monomial_matrix(d, omega);
  const Field& f = omega.field();
  const std::uint32_t q = f.q();
  const std::uint32_t size = static_cast<std::uint32_t>(checked_size(q, d));
  const std::uint64_t n = static_cast<std::uint64_t>(d) * (q - 1);

  std::vector<std::uint32_t> xi(size);
  for (VertexId v = 0; v < size; ++v) xi[v] = encode(row_times(decode(v, q, d), m), q);
  Perm x(std::move(xi));

  // Linear part of y: -I for odd q (x^{n/2}), identity for even q.
  const Perm linear = (q % 2 == 1) ? x.pow(static_cast<std::int64_t>(n / 2)) : Perm(size);
  Vector e1(d, 0);
  e1[0] = 1;
  const VertexId e1_id = encode(e1, q);
  std::optional<Perm> y;
  for (VertexId w = 0; w < size && !y; ++w) {
    const auto t = translate(f, d, size, decode(w, q, d));
    std::vector<std::uint32_t> img(size);
    for (VertexId v = 0; v < size; ++v) img[v] = t[linear[v]];
    if (img[0] != e1_id || img[e1_id] != 0) continue;
    Perm cand(std::move(img));
    if (compose(cand, cand).is_identity()) y = std::move(cand);
  }
  if (!y) throw ConsistencyError("no involution reverses the base arc");

  const std::array<Perm, 2> gens{x, *y};
  GroupStore group = close_or_throw(gens, cap);
  if (group.order() != n * size) {
    throw ConsistencyError("<x, y> has order " + std::to_string(group.order()) +
                           ", expected " + std::to_string(n * size));
  }
  return {std::move(group), std::move(x), std::move(*y)};
}

OrientedMap map_from_generators(const GroupStore& group, const Perm& x, const Perm& y,
                                std::optional<std::uint32_t> base_point) {
  if (!group.contains(x) || !group.contains(y)) {
    throw InvalidInput("generators are not elements of the group");
  }
  if (y.is_identity() || !compose(y, y).is_identity()) {
    throw InvalidInput("y is not an involution");
  }
  const std::array<Perm, 2> gens{x, y};
  const ClosureResult sub = close(gens, group.order());
  if (!sub.group || sub.group->order() != group.order()) {
    throw InvalidInput("x and y do not generate the group");
  }
  if (base_point && *base_point >= group.degree()) {
    throw InvalidInput("base point outside the permutation domain");
  }
  const std::size_t order = group.order();
  std::vector<std::uint32_t> R(order), L(order), labels(order);
  for (std::size_t i = 0; i < order; ++i) {
    R[i] = static_cast<std::uint32_t>(*group.index_of(compose(group[i], x)));
    L[i] = static_cast<std::uint32_t>(*group.index_of(compose(group[i], y)));
  }
  if (base_point) {
    for (std::size_t i = 0; i < order; ++i) labels[i] = group[i][*base_point];
  } else {
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    std::fill(labels.begin(), labels.end(), kNone);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < order; ++i) {
      if (labels[i] != kNone) continue;
      for (std::uint32_t a = static_cast<std::uint32_t>(i); labels[a] == kNone; a = R[a]) {
        labels[a] = next;
      }
      ++next;
    }
  }
  return OrientedMap::build(Perm(std::move(R)), Perm(std::move(L)), std::move(labels));
}

FieldMatrix matrix_power_sum(std::uint32_t d, const FieldElement& omega) {
  const FieldMatrix m = monomial_matrix(d, omega);
  const std::uint64_t n = static_cast<std::uint64_t>(d) * (omega.field().q() - 1);
  FieldMatrix sum(omega.field(), d);
  FieldMatrix power = FieldMatrix::identity(omega.field(), d);
  for (std::uint64_t i = 0; i < n; ++i) {
    sum = sum + power;
    power = power * m;
  }
  return sum;
}

bool underlying_graph_equals(const OrientedMap& map, const MergedGraph& graph) {
  const auto& labels = map.labels();
  if (labels.size() != map.arc_count()) return false;
  if (map.vertex_count() != graph.vertex_count()) return false;
  const auto& R = map.rotation();
  const auto& L = map.reversal();
  std::vector<std::vector<VertexId>> nbrs(graph.vertex_count());
  std::vector<bool> tail_seen(graph.vertex_count(), false);
  std::vector<bool> done(map.arc_count(), false);
  for (std::uint32_t a = 0; a < map.arc_count(); ++a) {
    if (done[a]) continue;
    const VertexId v = labels[a];
    if (v >= graph.vertex_count() || tail_seen[v]) return false;
    tail_seen[v] = true;
    for (std::uint32_t b = a; !done[b]; b = R[b]) {
      if (labels[b] != v) return false;
      done[b] = true;
      nbrs[v].push_back(labels[L[b]]);
    }
  }
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    std::sort(nbrs[v].begin(), nbrs[v].end());
    if (nbrs[v] != graph.neighbors(v)) return false;
  }
  return true;
}

}  // namespace hammaps
