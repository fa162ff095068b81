#include <doctest.h>

#include <random>
#include <set>

#include "hammaps/errors.hpp"
#include "hammaps/ffield.hpp"
#include "oracles.hpp"

using namespace hammaps;

namespace {

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kFields = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2},
    {2, 4}, {5, 2}, {3, 3}, {7, 2}, {11, 2}, {2, 8}};

}  // namespace

TEST_CASE("make_field picks the smallest irreducible modulus") {
  const Field f3 = Field::make(3, 1);
  CHECK(f3.q() == 3);
  CHECK(f3.modulus() == PrimePoly{0, 1});

  const Field f4 = Field::make(2, 2);
  CHECK(f4.modulus() == PrimePoly{1, 1, 1});

  const Field f25 = Field::make(5, 2);
  CHECK(f25.q() == 25);
  CHECK(euler_phi(f25.q() - 1) == 8);
  CHECK(f25.modulus() == PrimePoly{1, 1, 1});

  CHECK(Field::make(3, 2).modulus() == PrimePoly{1, 0, 1});
  CHECK(Field::make(3, 2).to_string() == "F(3^2; 1+1*t^2)");
}

TEST_CASE("make_field rejects bad parameters") {
  CHECK_THROWS_AS(Field::make(4, 1), InvalidInput);
  CHECK_THROWS_AS(Field::make(1, 1), InvalidInput);
  CHECK_THROWS_AS(Field::make(3, 0), InvalidInput);
  CHECK_THROWS_AS(Field::make(2, 17), InvalidInput);
  CHECK_NOTHROW(Field::make(2, 10, 1024));
  CHECK_THROWS_AS(Field::make(2, 11, 1024), InvalidInput);
}

TEST_CASE("modulus is irreducible and lexicographically first") {
  for (auto [p, e] : kFields) {
    const Field f = Field::make(p, e);
    CHECK(is_irreducible(f.modulus(), p));
    // Every monic polynomial of degree e that sorts earlier (c0 most
    // significant) has a factor.
    if (f.q() > 1024) continue;
    PrimePoly cand(e + 1, 0);
    cand[e] = 1;
    for (std::uint32_t code = 0; code < f.q(); ++code) {
      std::uint32_t c = code;
      for (std::uint32_t i = 0; i < e; ++i) {
        cand[e - 1 - i] = c % p;
        c /= p;
      }
      if (cand == f.modulus()) break;
      // Reducible check by root search is enough for e <= 3.
      if (e <= 3) {
        bool has_root = false;
        for (std::uint32_t x = 0; x < p && !has_root; ++x) {
          std::uint64_t v = 0;
          for (std::size_t i = cand.size(); i-- > 0;) v = (v * x + cand[i]) % p;
          has_root = v == 0;
        }
        CHECK(has_root);
      }
    }
  }
}

TEST_CASE("field arithmetic examples") {
  const Field f4 = Field::make(2, 2);
  const FieldElement w = f4.parse("t");
  CHECK(w * w == f4.parse("1+t"));

  const Field f3 = Field::make(3, 1);
  CHECK(f3.element(2).inverse() == f3.element(2));

  const Field f5 = Field::make(5, 1);
  CHECK(f5.element(2).pow(4) == f5.one());
  CHECK(f5.element(2).pow(-1) == f5.element(3));

  CHECK_THROWS_AS(f5.zero().inverse(), InvalidInput);
  CHECK_THROWS_AS(f5.element(1) + f3.element(1), InvalidInput);
  CHECK_THROWS_AS(f5.element(5), InvalidInput);
}

TEST_CASE("F_4 multiplication matches the hand table") {
  const Field f4 = Field::make(2, 2);
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = 0; b < 4; ++b) {
      CHECK(f4.mul(a, b) == oracle::f4_mul(a, b));
      CHECK(f4.add(a, b) == oracle::f4_add(a, b));
    }
  }
}

TEST_CASE("prime field orders match brute force") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const Field f = Field::make(p, 1);
    for (std::uint32_t a = 1; a < p; ++a) {
      CHECK(element_order(f.element(a)) == oracle::order_mod(a, p));
    }
  }
  CHECK(element_order(Field::make(2, 2).parse("t")) == 3);
  CHECK(element_order(Field::make(5, 1).element(4)) == 2);
  CHECK_THROWS_AS(element_order(Field::make(5, 1).zero()), InvalidInput);
}

TEST_CASE("generator classes") {
  const auto g4 = generator_classes(Field::make(2, 2));
  CHECK(g4.generators.size() == 2);
  CHECK(g4.classes.size() == 1);

  const Field f5 = Field::make(5, 1);
  const auto g5 = generator_classes(f5);
  REQUIRE(g5.generators.size() == 2);
  CHECK(g5.generators[0] == f5.element(2));
  CHECK(g5.generators[1] == f5.element(3));
  CHECK(g5.classes.size() == 2);
  // Exhaustive oracle over F_5*.
  std::vector<std::uint32_t> brute;
  for (std::uint32_t a = 1; a < 5; ++a) {
    if (oracle::order_mod(a, 5) == 4) brute.push_back(a);
  }
  CHECK(brute == std::vector<std::uint32_t>{2, 3});

  const Field f25 = Field::make(5, 2);
  const auto g25 = generator_classes(f25);
  CHECK(g25.generators.size() == 8);
  CHECK(g25.classes.size() == 4);
  std::set<std::string> polys;
  for (const auto& c : g25.classes) {
    CHECK(c.size() == 2);
    CHECK(element_order(c[0]) == 24);
    polys.insert(poly_to_string(minimal_polynomial(c[0])));
    CHECK(minimal_polynomial(c[0]) == minimal_polynomial(c[1]));
  }
  // t^2 + t + 2, t^2 - t + 2, t^2 + 2t - 2, t^2 - 2t - 2 over F_5.
  CHECK(polys == std::set<std::string>{"2+1*t+1*t^2", "2+4*t+1*t^2", "3+2*t+1*t^2",
                                       "3+3*t+1*t^2"});
}

TEST_CASE("generator counts and Frobenius orbit sizes") {
  for (auto [p, e] : kFields) {
    const Field f = Field::make(p, e);
    const auto g = generator_classes(f);
    CHECK(g.generators.size() == euler_phi(f.q() - 1));
    CHECK(g.classes.size() * e == g.generators.size());
    std::size_t total = 0;
    for (const auto& c : g.classes) {
      CHECK(c.size() == e);
      total += c.size();
      if (e > 1) {
        for (const auto& x : c) CHECK(x.pow(p) != x);
      }
    }
    CHECK(total == g.generators.size());
    CHECK(std::is_sorted(g.generators.begin(), g.generators.end()));
    CHECK(default_generator(f) == g.generators.front());
  }
}

TEST_CASE("Fermat and sampled field axioms") {
  std::mt19937 rng(20240611);
  for (auto [p, e] : kFields) {
    const Field f = Field::make(p, e);
    std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
    for (std::uint32_t a = 1; a < f.q(); ++a) CHECK(f.pow(a, f.q() - 1) == 1);
    for (int i = 0; i < 1000; ++i) {
      const std::uint32_t a = pick(rng), b = pick(rng), c = pick(rng);
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
      CHECK(f.add(a, f.add(b, c)) == f.add(f.add(a, b), c));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      // Frobenius is additive and multiplicative.
      CHECK(f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b)));
      CHECK(f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b)));
    }
  }
}

TEST_CASE("text form round trips") {
  const Field f = Field::make(5, 2);
  CHECK(f.zero().to_string() == "0");
  CHECK(f.parse("3*t").to_string() == "3*t");
  CHECK(f.parse("t").to_string() == "1*t");
  CHECK(f.parse("-1").to_string() == "4");
  CHECK(f.parse(" 2 + t ") == f.element(2 + 5));
  // t^2 = -1 - t under the modulus t^2 + t + 1.
  CHECK(f.parse("t^2") == f.parse("4+4*t"));
  for (std::uint32_t c = 0; c < f.q(); ++c) {
    const FieldElement x = f.element(c);
    CHECK(f.parse(x.to_string()) == x);
  }
  CHECK_THROWS_AS(f.parse(""), InvalidInput);
  CHECK_THROWS_AS(f.parse("t*2"), InvalidInput);
  CHECK_THROWS_AS(f.parse("x"), InvalidInput);
}

TEST_CASE("number theory helpers") {
  PrimePower pp;
  CHECK(prime_power(25, pp));
  CHECK(pp.p == 5);
  CHECK(pp.e == 2);
  CHECK(prime_power(2, pp));
  CHECK_FALSE(prime_power(6, pp));
  CHECK_FALSE(prime_power(1, pp));
  CHECK_FALSE(prime_power(12, pp));
  for (std::uint64_t n = 1; n < 200; ++n) {
    CHECK(euler_phi(n) == oracle::units(n).size());
  }
}
