#pragma once

// Linear Cayley maps on V = F_q^d and the Hamming maps H(d, omega).
//
// Vectors are rows; a matrix A acts by v -> vA. A vector is stored as its
// field codes, coordinate 0 first, and identified with the vertex index
// sum code_i q^i of VertexSpace(d, q).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hammaps/ffield.hpp"
#include "hammaps/hamming.hpp"
#include "hammaps/omap.hpp"
#include "hammaps/permgroup.hpp"

namespace hammaps {

inline constexpr std::size_t kDefaultArcCap = 100'000;

using Vector = std::vector<std::uint32_t>;

class FieldMatrix {
 public:
  FieldMatrix(Field field, std::size_t dim);  // zero matrix
  static FieldMatrix identity(Field field, std::size_t dim);
  static FieldMatrix scalar(Field field, std::size_t dim, std::uint32_t c);

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return codes_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint32_t c) { codes_[i * dim_ + j] = c; }

  FieldMatrix operator*(const FieldMatrix& o) const;
  FieldMatrix operator+(const FieldMatrix& o) const;
  FieldMatrix operator-() const;
  FieldMatrix pow(std::uint64_t k) const;
  std::size_t rank() const;
  bool is_zero() const noexcept;

  // Rows joined by ';', entries by ','.
  std::string to_string() const;

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.dim_ == b.dim_ && a.codes_ == b.codes_ && a.field_ == b.field_;
  }

 private:
  Field field_;
  std::size_t dim_;
  std::vector<std::uint32_t> codes_;
};

// vA
Vector row_times(const Vector& v, const FieldMatrix& a);

// Least k >= 1 with A^k = I. Throws InvalidInput if A is singular.
std::uint64_t matrix_order(const FieldMatrix& a);

// Superdiagonal ones and omega in the bottom-left corner, so M^d = omega I.
// Throws InvalidInput if omega does not generate F*.
FieldMatrix monomial_matrix(std::uint32_t d, const FieldElement& omega);

// e1 M^i for i = 0..n-1, n = d(q-1).
std::vector<Vector> rotation_sequence(std::uint32_t d, const FieldElement& omega);

// Cayley map of the additive group of F_q^dim with rotation s, sA, sA^2, ...
struct LinearCayleyDatum {
  FieldMatrix alpha;
  Vector seed;
};

// Throws InvalidInput unless the seed orbit under alpha is closed under
// negation and spans V, or CapExceeded above `arc_cap` arcs. Arc (v, i) has
// index v*n + i and label v.
OrientedMap cayley_map(const LinearCayleyDatum& datum,
                       std::size_t arc_cap = kDefaultArcCap);

OrientedMap hamming_map(std::uint32_t d, const FieldElement& omega,
                        std::size_t arc_cap = kDefaultArcCap);

struct CayleyPredictions {
  // Order of -alpha when -alpha fixes only the zero vector.
  std::optional<std::uint64_t> face_valency;
  // Twice the additive order of s alpha - s.
  std::uint64_t petrie_length = 0;
};
CayleyPredictions cayley_predictions(const LinearCayleyDatum& datum);

struct PredictedType {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t l = 0;
  friend bool operator==(const PredictedType&, const PredictedType&) = default;
};
// Throws InvalidInput if q is not a prime power.
PredictedType predicted_type(std::uint32_t d, std::uint32_t q);
// Closed-form genus, cross-checked against V - E + F for the predicted type.
// Throws ConsistencyError if the two disagree or are not integral.
std::int64_t predicted_genus(std::uint32_t d, std::uint32_t q);

struct StandardGenerators {
  GroupStore group;
  Perm x;  // v -> vM, fixes vertex 0
  Perm y;  // involution swapping 0 and e1
};
StandardGenerators standard_generators(std::uint32_t d, const FieldElement& omega,
                                       std::size_t cap = kDefaultGroupCap);

// Arcs are the elements of G (store order); R(g) = gx, L(g) = gy where gx
// means "x first, then g". Labels are g(base_point) when given, otherwise the
// index of the coset g<x> in order of first appearance. Throws InvalidInput
// unless y is a non-identity involution and <x, y> = G.
OrientedMap map_from_generators(const GroupStore& group, const Perm& x, const Perm& y,
                                std::optional<std::uint32_t> base_point = std::nullopt);

// sum_{i<n} M^i
FieldMatrix matrix_power_sum(std::uint32_t d, const FieldElement& omega);

// True iff the labels turn the map into a simple graph equal to `graph`.
bool underlying_graph_equals(const OrientedMap& map, const MergedGraph& graph);

}  // namespace hammaps
