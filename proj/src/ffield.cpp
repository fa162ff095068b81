#include "hammaps/ffield.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>

#include "hammaps/errors.hpp"

namespace hammaps {

namespace {

void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial b, coefficients mod p.
PrimePoly poly_mod(PrimePoly a, const PrimePoly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (std::size_t i = 0; i <= db; ++i) {
        const std::uint64_t sub = std::uint64_t{lead} * b[i] % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

PrimePoly poly_mul(const PrimePoly& a, const PrimePoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<std::uint32_t>(
          (out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  trim(out);
  return out;
}

std::uint32_t encode(const PrimePoly& coeffs, std::uint32_t p, std::uint32_t e) {
  std::uint32_t code = 0;
  for (std::uint32_t i = e; i-- > 0;) {
    code = code * p + (i < coeffs.size() ? coeffs[i] : 0);
  }
  return code;
}

PrimePoly decode(std::uint32_t code, std::uint32_t p, std::uint32_t e) {
  PrimePoly c(e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    c[i] = code % p;
    code /= p;
  }
  return c;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool prime_power(std::uint64_t q, PrimePower& out) noexcept {
  if (q < 2) return false;
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return false;
  out = {static_cast<std::uint32_t>(p), e};
  return true;
}

std::uint64_t euler_phi(std::uint64_t n) noexcept {
  if (n == 0) return 0;
  std::uint64_t result = n;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      while (n % d == 0) n /= d;
      result -= result / d;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

bool is_irreducible(const PrimePoly& poly, std::uint32_t p) {
  PrimePoly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      PrimePoly g(k + 1, 0);
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      g[k] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

PrimePoly smallest_irreducible(std::uint32_t p, std::uint32_t e) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  // c0 is the most significant digit of the enumeration index.
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    PrimePoly f(e + 1, 0);
    std::uint64_t rest = idx;
    for (std::uint32_t i = e; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    f[e] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw ConsistencyError("no irreducible polynomial found");
}

std::string poly_to_string(const PrimePoly& poly) {
  std::string out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] == 0) continue;
    if (!out.empty()) out += '+';
    out += std::to_string(poly[i]);
    if (i == 1) {
      out += "*t";
    } else if (i > 1) {
      out += "*t^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

Field Field::make(std::uint32_t p, std::uint32_t e, std::uint64_t cap) {
  if (!is_prime(p)) {
    throw InvalidInput("characteristic " + std::to_string(p) + " is not prime");
  }
  if (e == 0) throw InvalidInput("field degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > cap || q > std::numeric_limits<std::uint32_t>::max()) {
      throw InvalidInput("field size " + std::to_string(p) + "^" +
                         std::to_string(e) + " exceeds the cap of " +
                         std::to_string(cap));
    }
  }

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->e = e;
  impl->q = static_cast<std::uint32_t>(q);
  impl->modulus = smallest_irreducible(p, e);

  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    const PrimePoly prod =
        poly_mod(poly_mul(decode(a, p, e), decode(b, p, e), p), impl->modulus, p);
    return encode(prod, p, e);
  };

  const std::uint32_t units = impl->q - 1;
  impl->exp.assign(units, 0);
  impl->log.assign(impl->q, 0);
  bool found = false;
  for (std::uint32_t g = 1; g < impl->q && !found; ++g) {
    std::uint32_t x = 1;
    std::uint32_t k = 0;
    do {
      impl->exp[k++] = x;
      x = slow_mul(x, g);
    } while (x != 1 && k < units);
    found = (x == 1 && k == units);
  }
  if (!found) throw ConsistencyError("no primitive element in " + std::to_string(q));
  for (std::uint32_t k = 0; k < units; ++k) impl->log[impl->exp[k]] = k;

  if (impl->q <= 256) {
    impl->add_table.resize(std::size_t{impl->q} * impl->q);
    for (std::uint32_t a = 0; a < impl->q; ++a) {
      const PrimePoly ca = decode(a, p, e);
      for (std::uint32_t b = 0; b < impl->q; ++b) {
        const PrimePoly cb = decode(b, p, e);
        PrimePoly s(e);
        for (std::uint32_t i = 0; i < e; ++i) s[i] = (ca[i] + cb[i]) % p;
        impl->add_table[std::size_t{a} * impl->q + b] =
            static_cast<std::uint16_t>(encode(s, p, e));
      }
    }
  }
  return Field(std::move(impl));
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const noexcept {
  const Impl& f = *impl_;
  if (!f.add_table.empty()) return f.add_table[std::size_t{a} * f.q + b];
  if (f.p == 2) return a ^ b;
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (std::uint32_t i = 0; i < f.e; ++i) {
    out += ((a % f.p + b % f.p) % f.p) * scale;
    a /= f.p;
    b /= f.p;
    scale *= f.p;
  }
  return out;
}

std::uint32_t Field::neg(std::uint32_t a) const noexcept {
  const Impl& f = *impl_;
  if (f.p == 2) return a;
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (std::uint32_t i = 0; i < f.e; ++i) {
    out += ((f.p - a % f.p) % f.p) * scale;
    a /= f.p;
    scale *= f.p;
  }
  return out;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const noexcept {
  return add(a, neg(b));
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const noexcept {
  if (a == 0 || b == 0) return 0;
  const Impl& f = *impl_;
  const std::uint32_t units = f.q - 1;
  return f.exp[(f.log[a] + f.log[b]) % units];
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw InvalidInput("inversion of zero");
  const Impl& f = *impl_;
  const std::uint32_t units = f.q - 1;
  return f.exp[(units - f.log[a]) % units];
}

std::uint32_t Field::pow(std::uint32_t a, std::int64_t k) const {
  if (a == 0) {
    if (k < 0) throw InvalidInput("negative power of zero");
    return k == 0 ? 1 : 0;
  }
  const Impl& f = *impl_;
  const std::int64_t units = f.q - 1;
  std::int64_t r = k % units;
  if (r < 0) r += units;
  const std::uint64_t idx = (std::uint64_t{f.log[a]} * static_cast<std::uint64_t>(r)) %
                            static_cast<std::uint64_t>(units);
  return f.exp[idx];
}

std::vector<std::uint32_t> Field::coeffs(std::uint32_t code) const {
  return decode(code, p(), e());
}

std::uint32_t Field::code(const std::vector<std::uint32_t>& coeffs) const {
  PrimePoly c = coeffs;
  for (auto& x : c) x %= p();
  return encode(poly_mod(c, modulus(), p()), p(), e());
}

FieldElement Field::element(std::uint32_t code) const {
  if (code >= q()) {
    throw InvalidInput("element code " + std::to_string(code) +
                       " out of range for " + to_string());
  }
  return FieldElement(*this, code);
}

FieldElement Field::zero() const { return FieldElement(*this, 0); }
FieldElement Field::one() const { return FieldElement(*this, 1); }

FieldElement Field::parse(std::string_view text) const {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw InvalidInput("empty field element");
  const std::uint32_t pp = p();
  std::map<std::size_t, std::uint32_t> terms;
  std::size_t i = 0;
  auto fail = [&]() {
    throw InvalidInput("cannot parse field element '" + std::string(text) + "'");
  };
  auto read_int = [&](std::uint64_t& v) {
    const std::size_t start = i;
    std::uint64_t acc = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      acc = (acc * 10 + static_cast<std::uint64_t>(s[i] - '0')) % 1000000007ULL;
      ++i;
    }
    if (i == start) return false;
    v = acc;
    return true;
  };
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (i != 0) {
      fail();
    }
    std::uint64_t coef = 1;
    const bool has_coef = read_int(coef);
    std::size_t degree = 0;
    if (i < s.size() && (s[i] == '*' || s[i] == 't')) {
      if (s[i] == '*') {
        if (!has_coef) fail();
        ++i;
      }
      if (i >= s.size() || s[i] != 't') fail();
      ++i;
      degree = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::uint64_t k = 0;
        if (!read_int(k)) fail();
        degree = static_cast<std::size_t>(k);
      }
    } else if (!has_coef) {
      fail();
    }
    std::uint32_t c = static_cast<std::uint32_t>(coef % pp);
    if (negative) c = (pp - c) % pp;
    terms[degree] = (terms[degree] + c) % pp;
  }
  PrimePoly poly(terms.rbegin()->first + 1, 0);
  for (auto [deg, c] : terms) poly[deg] = c;
  return FieldElement(*this, code(poly));
}

std::string Field::to_string() const {
  return "F(" + std::to_string(p()) + "^" + std::to_string(e()) + "; " +
         poly_to_string(modulus()) + ")";
}

FieldElement::FieldElement(Field field, std::uint32_t code)
    : field_(std::move(field)), code_(code) {
  if (code_ >= field_.q()) throw InvalidInput("field element code out of range");
}

void FieldElement::require_same_field(const FieldElement& o) const {
  if (!(field_ == o.field_)) {
    throw InvalidInput("operands belong to different fields: " +
                       field_.to_string() + " vs " + o.field_.to_string());
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_field(o);
  return FieldElement(field_, field_.add(code_, o.code_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_field(o);
  return FieldElement(field_, field_.sub(code_, o.code_));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_field(o);
  return FieldElement(field_, field_.mul(code_, o.code_));
}

FieldElement FieldElement::operator-() const {
  return FieldElement(field_, field_.neg(code_));
}

FieldElement FieldElement::inverse() const {
  return FieldElement(field_, field_.inv(code_));
}

FieldElement FieldElement::pow(std::int64_t k) const {
  return FieldElement(field_, field_.pow(code_, k));
}

std::string FieldElement::to_string() const { return poly_to_string(coeffs()); }

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  return std::lexicographical_compare_three_way(ca.begin(), ca.end(), cb.begin(),
                                                cb.end());
}

std::uint64_t element_order(const FieldElement& a) {
  if (a.is_zero()) throw InvalidInput("zero has no multiplicative order");
  const Field& f = a.field();
  const std::uint64_t units = f.q() - 1;
  // Smallest divisor k of q-1 with a^k = 1.
  for (std::uint64_t k = 1; k <= units; ++k) {
    if (units % k == 0 && f.pow(a.code(), static_cast<std::int64_t>(k)) == 1) {
      return k;
    }
  }
  throw ConsistencyError("element order does not divide q-1");
}

bool is_generator(const FieldElement& a) {
  return !a.is_zero() && element_order(a) == a.field().q() - 1;
}

GeneratorClasses generator_classes(const Field& field) {
  GeneratorClasses out;
  for (std::uint32_t c = 1; c < field.q(); ++c) {
    FieldElement a = field.element(c);
    if (is_generator(a)) out.generators.push_back(std::move(a));
  }
  std::sort(out.generators.begin(), out.generators.end());
  std::vector<bool> seen(field.q(), false);
  for (const auto& g : out.generators) {
    if (seen[g.code()]) continue;
    std::vector<FieldElement> cls;
    std::uint32_t x = g.code();
    while (!seen[x]) {
      seen[x] = true;
      cls.push_back(field.element(x));
      x = field.frobenius(x);
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

FieldElement default_generator(const Field& field) {
  // Canonical order is not code order, so this needs the full sorted list.
  return generator_classes(field).generators.front();
}

PrimePoly minimal_polynomial(const FieldElement& a) {
  const Field& f = a.field();
  std::vector<std::uint32_t> conj;
  std::uint32_t x = a.code();
  do {
    conj.push_back(x);
    x = f.frobenius(x);
  } while (x != a.code());
  // Product of (X - c) over the conjugates, coefficients in F_q.
  std::vector<std::uint32_t> poly{1};
  for (std::uint32_t c : conj) {
    std::vector<std::uint32_t> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], poly[i]);
      next[i] = f.sub(next[i], f.mul(poly[i], c));
    }
    poly = std::move(next);
  }
  PrimePoly out;
  for (std::uint32_t c : poly) {
    if (c >= f.p()) throw ConsistencyError("minimal polynomial not over F_p");
    out.push_back(c);
  }
  return out;
}

}  // namespace hammaps
