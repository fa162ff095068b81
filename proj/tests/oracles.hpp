#pragma once

// Test-side reference computations. None of these call into the library's
// permutation, map or field code; they work on plain vectors and integers.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// A rotation system: rot[v] lists the neighbours of v in cyclic order.
using Rotation = std::vector<std::vector<std::uint32_t>>;

inline std::size_t position(const std::vector<std::uint32_t>& cyc, std::uint32_t x) {
  return static_cast<std::size_t>(std::find(cyc.begin(), cyc.end(), x) - cyc.begin());
}

// Face lengths by walking darts u->v, continuing with v->(successor of u at v).
inline std::vector<std::size_t> face_lengths(const Rotation& rot) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  std::vector<std::size_t> out;
  for (std::uint32_t u = 0; u < rot.size(); ++u) {
    for (std::uint32_t v : rot[u]) {
      if (used.count({u, v})) continue;
      std::size_t len = 0;
      std::pair<std::uint32_t, std::uint32_t> dart{u, v};
      while (!used.count(dart)) {
        used.insert(dart);
        ++len;
        const auto& around = rot[dart.second];
        const std::uint32_t next = around[(position(around, dart.first) + 1) % around.size()];
        dart = {dart.second, next};
      }
      out.push_back(len);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Zigzag walks alternating successor and predecessor turns, starting with a
// successor turn; length counted until the (dart, turn) state repeats.
inline std::vector<std::size_t> zigzag_lengths(const Rotation& rot) {
  std::set<std::tuple<std::uint32_t, std::uint32_t, bool>> used;
  std::vector<std::size_t> out;
  for (std::uint32_t u = 0; u < rot.size(); ++u) {
    for (std::uint32_t v : rot[u]) {
      if (used.count({u, v, true})) continue;
      std::size_t len = 0;
      std::tuple<std::uint32_t, std::uint32_t, bool> s{u, v, true};
      while (!used.count(s)) {
        used.insert(s);
        ++len;
        const auto [a, b, succ] = s;
        const auto& around = rot[b];
        const std::size_t k = around.size();
        const std::size_t at = position(around, a);
        const std::uint32_t next = around[succ ? (at + 1) % k : (at + k - 1) % k];
        s = {b, next, !succ};
      }
      out.push_back(len);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Rotation system of the Cayley map of Z_p^d with connection sequence `seq`
// (vectors given as coordinate lists mod p).
inline Rotation cayley_rotation(std::uint32_t p, std::uint32_t d,
                                const std::vector<std::vector<std::uint32_t>>& seq) {
  std::uint32_t size = 1;
  for (std::uint32_t i = 0; i < d; ++i) size *= p;
  Rotation rot(size);
  for (std::uint32_t v = 0; v < size; ++v) {
    for (const auto& s : seq) {
      std::uint32_t w = 0;
      std::uint32_t radix = 1;
      std::uint32_t rest = v;
      for (std::uint32_t i = 0; i < d; ++i) {
        w += ((rest % p + s[i]) % p) * radix;
        rest /= p;
        radix *= p;
      }
      rot[v].push_back(w);
    }
  }
  return rot;
}

// Multiplicative order of a mod p by repeated multiplication.
inline std::uint64_t order_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t x = a % p;
  std::uint64_t k = 1;
  while (x != 1) {
    x = x * a % p;
    ++k;
  }
  return k;
}

// Z*_m as residues; Z*_1 is the trivial group {0}.
inline std::vector<std::uint64_t> units(std::uint64_t m) {
  if (m == 1) return {0};
  std::vector<std::uint64_t> u;
  for (std::uint64_t a = 1; a < m; ++a) {
    if (std::gcd(a, m) == 1) u.push_back(a);
  }
  return u;
}

// d x d matrices over Z_p, row-major.
using Mat = std::vector<std::vector<std::uint32_t>>;

inline Mat mat_mul(const Mat& a, const Mat& b, std::uint32_t p) {
  const std::size_t n = a.size();
  Mat c(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s += std::uint64_t{a[i][k]} * b[k][j];
      c[i][j] = static_cast<std::uint32_t>(s % p);
    }
  }
  return c;
}

// F_4 = {0, 1, w, w^2} coded 0, 1, 2, 3 with w^2 = w + 1.
inline std::uint32_t f4_add(std::uint32_t a, std::uint32_t b) { return a ^ b; }
inline std::uint32_t f4_mul(std::uint32_t a, std::uint32_t b) {
  static const std::uint32_t table[4][4] = {
      {0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  return table[a][b];
}

// Number of distinct prime divisors.
inline std::uint32_t distinct_primes(std::uint32_t n) {
  std::uint32_t r = 0;
  for (std::uint32_t p = 2; p <= n; ++p) {
    if (n % p) continue;
    ++r;
    while (n % p == 0) n /= p;
  }
  return r;
}

}  // namespace oracle
