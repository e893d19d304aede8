#pragma once

// Independent reference implementations used by the tests.  They share no
// code with the library and favour obviousness over speed.

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::map<u64, int> factor(u64 n) {
  std::map<u64, int> f;
  for (u64 d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  if (n > 1) ++f[n];
  return f;
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

inline u64 order_mod(u64 a, u64 m) {
  u64 x = a % m;
  for (u64 k = 1; k <= m; ++k) {
    if (x == 1 % m) return k;
    x = x * a % m;
  }
  return 0;
}

/// Polynomials over GF(p), low degree first, reduced modulo a monic f.
struct PolyRing {
  u64 p;
  std::vector<u64> f;  // monic, degree k

  unsigned k() const { return static_cast<unsigned>(f.size() - 1); }

  std::vector<u64> mul(const std::vector<u64>& a, const std::vector<u64>& b) const {
    std::vector<u64> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    for (std::size_t d = r.size(); d-- > k();) {
      const u64 c = r[d];
      if (!c) continue;
      for (unsigned i = 0; i <= k(); ++i) r[d - k() + i] = (r[d - k() + i] + p * p - c * f[i] % p) % p;
    }
    r.resize(k());
    return r;
  }
  std::vector<u64> decode(u64 v) const {
    std::vector<u64> c(k());
    for (auto& x : c) {
      x = v % p;
      v /= p;
    }
    return c;
  }
  u64 encode(const std::vector<u64>& c) const {
    u64 v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
  }
  u64 mul(u64 a, u64 b) const { return encode(mul(decode(a), decode(b))); }
  u64 add(u64 a, u64 b) const {
    auto x = decode(a), y = decode(b);
    for (unsigned i = 0; i < k(); ++i) x[i] = (x[i] + y[i]) % p;
    return encode(x);
  }
  u64 size() const {
    u64 q = 1;
    for (unsigned i = 0; i < k(); ++i) q *= p;
    return q;
  }
  /// Multiplicative order of x modulo f by repeated multiplication; 0 if x is not a unit.
  u64 order_of_x() const {
    const u64 x = k() == 1 ? (p - f[0]) % p : p;
    if (x == 0) return 0;
    u64 y = x;
    for (u64 n = 1; n <= size(); ++n) {
      if (y == 1) return n;
      y = mul(y, x);
    }
    return 0;
  }
};

/// Dense matrices over GF(p), p prime.
using Mat = std::vector<std::vector<u64>>;

inline std::size_t rank(Mat m, u64 p) {
  std::size_t r = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    u64 inv = 1;
    for (u64 t = 1; t < p; ++t)
      if (m[r][c] * t % p == 1) inv = t;
    for (auto& x : m[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows; ++i)
      if (i != r && m[i][c] % p) {
        const u64 fct = m[i][c];
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] + p * p - fct * m[r][j] % p) % p;
      }
    ++r;
  }
  return r;
}

inline Mat mul(const Mat& a, const Mat& b, u64 p) {
  Mat r(a.size(), std::vector<u64>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] = (r[i][j] + a[i][k] * b[k][j]) % p;
  return r;
}

/// Leibniz-free determinant by cofactor expansion (small n only).
inline u64 det(const Mat& m, u64 p) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0] % p;
  u64 d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Mat minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<u64> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(row);
    }
    const u64 term = m[0][c] % p * det(minor, p) % p;
    d = c % 2 ? (d + p - term) % p : (d + term) % p;
  }
  return d;
}

/// All n x n matrices over GF(2) as row bitmasks, counted by determinant.
inline u64 count_gl2(unsigned n, bool fixed_point_free) {
  u64 count = 0;
  const u64 total = 1ULL << (n * n);
  for (u64 bits = 0; bits < total; ++bits) {
    Mat m(n, std::vector<u64>(n));
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) m[i][j] = (bits >> (i * n + j)) & 1;
    if (det(m, 2) == 0) continue;
    if (fixed_point_free) {
      for (unsigned i = 0; i < n; ++i) m[i][i] ^= 1;
      if (det(m, 2) == 0) continue;
    }
    ++count;
  }
  return count;
}

}  // namespace oracle
