#pragma once

// Exact arithmetic in F_q, q = p^e.
//
// Elements are stored in the polynomial basis 1, t, ..., t^(e-1) modulo a
// fixed monic irreducible polynomial of degree e over F_p. The modulus is the
// lexicographically smallest monic irreducible, comparing coefficients from
// the constant term upwards. This differs from Conway-polynomial based
// systems, so concrete coordinates will not match e.g. GAP output, but every
// construction built on top of this module is invariant under the choice.
//
// Internally an element is a "code" in [0, q): code = sum c_i p^i. The raw
// code API on Field is what hot loops use; FieldElement wraps a code together
// with its field for the checked, value-semantic interface.

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hammaps {

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 16;

class FieldElement;

// Polynomials over F_p, coefficient of t^i at index i.
using PrimePoly = std::vector<std::uint32_t>;

class Field {
 public:
  // Throws InvalidInput for non-prime p, e == 0, or p^e above `cap`.
  static Field make(std::uint32_t p, std::uint32_t e,
                    std::uint64_t cap = kDefaultFieldCap);

  std::uint32_t p() const noexcept { return impl_->p; }
  std::uint32_t e() const noexcept { return impl_->e; }
  std::uint32_t q() const noexcept { return impl_->q; }
  // Monic, degree e, low degree first (size e + 1).
  const PrimePoly& modulus() const noexcept { return impl_->modulus; }

  // Raw code arithmetic. Codes must lie in [0, q).
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t neg(std::uint32_t a) const noexcept;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;
  // Throws InvalidInput on zero.
  std::uint32_t inv(std::uint32_t a) const;
  // Negative exponents allowed for nonzero a; exponent is reduced mod q-1.
  std::uint32_t pow(std::uint32_t a, std::int64_t k) const;
  // p-th power map.
  std::uint32_t frobenius(std::uint32_t a) const noexcept {
    return pow(a, impl_->p);
  }

  std::vector<std::uint32_t> coeffs(std::uint32_t code) const;
  std::uint32_t code(const std::vector<std::uint32_t>& coeffs) const;

  FieldElement element(std::uint32_t code) const;
  FieldElement zero() const;
  FieldElement one() const;
  // Parses "c0+c1*t+...". Also accepts "t", "t^k", "-", whitespace and terms
  // of degree >= e, which are reduced modulo the modulus.
  FieldElement parse(std::string_view text) const;

  // "F(p^e; modulus)"
  std::string to_string() const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.impl_ == b.impl_ ||
           (a.p() == b.p() && a.e() == b.e() && a.modulus() == b.modulus());
  }

 private:
  struct Impl {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    std::uint32_t q = 0;
    PrimePoly modulus;
    // log/antilog tables with respect to a fixed primitive element.
    std::vector<std::uint32_t> log;
    std::vector<std::uint32_t> exp;
    // Dense addition table for small q, empty otherwise.
    std::vector<std::uint16_t> add_table;
  };
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

class FieldElement {
 public:
  FieldElement(Field field, std::uint32_t code);

  const Field& field() const noexcept { return field_; }
  std::uint32_t code() const noexcept { return code_; }
  std::vector<std::uint32_t> coeffs() const { return field_.coeffs(code_); }
  bool is_zero() const noexcept { return code_ == 0; }

  // Binary operators throw InvalidInput when the operands live in different
  // fields.
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::int64_t k) const;

  std::string to_string() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.code_ == b.code_ && a.field_ == b.field_;
  }
  // Canonical order: coefficient sequences compared from c0 upwards.
  friend std::strong_ordering operator<=>(const FieldElement& a,
                                          const FieldElement& b);

 private:
  void require_same_field(const FieldElement& o) const;

  Field field_;
  std::uint32_t code_;
};

// Least k >= 1 with a^k = 1. Throws InvalidInput on zero.
std::uint64_t element_order(const FieldElement& a);

bool is_generator(const FieldElement& a);

struct GeneratorClasses {
  // All primitive elements, canonical order.
  std::vector<FieldElement> generators;
  // Frobenius orbits; each class in canonical order, classes ordered by their
  // smallest member.
  std::vector<std::vector<FieldElement>> classes;
};

GeneratorClasses generator_classes(const Field& field);

// Canonical default generator: the smallest primitive element.
FieldElement default_generator(const Field& field);

// Minimal polynomial over F_p, monic, low degree first.
PrimePoly minimal_polynomial(const FieldElement& a);

// "c0+c1*t+..." with zero terms omitted ("0" for the zero polynomial).
std::string poly_to_string(const PrimePoly& poly);

bool is_prime(std::uint64_t n) noexcept;
// Returns (p, e) with q = p^e, or nothing if q is not a prime power.
struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
};
bool prime_power(std::uint64_t q, PrimePower& out) noexcept;
std::uint64_t euler_phi(std::uint64_t n) noexcept;

// Lexicographically smallest monic irreducible of degree e over F_p.
PrimePoly smallest_irreducible(std::uint32_t p, std::uint32_t e);
bool is_irreducible(const PrimePoly& poly, std::uint32_t p);

}  // namespace hammaps
