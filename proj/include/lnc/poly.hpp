#pragma once

// Small dense polynomials over a prime field GF(p), low-degree first.
// Enough machinery for characteristic polynomials, irreducible factors,
// and invariant factors of matrices of order <= 8.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "numtheory.hpp"

namespace lnc {

using Poly = std::vector<u64>;

namespace poly {

inline void normalize(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return a.empty() ? -1 : static_cast<int>(a.size()) - 1; }

inline Poly mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  normalize(r);
  return r;
}

inline Poly pow(const Poly& a, unsigned e, u64 p) {
  Poly r{1};
  for (unsigned i = 0; i < e; ++i) r = mul(r, a, p);
  return r;
}

/// Quotient and remainder of a by a nonzero b.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, u64 p) {
  normalize(a);
  const int db = degree(b);
  if (db < 0) throw std::domain_error("polynomial division by zero");
  const u64 lead_inv = pow_mod(b.back(), p - 2, p);
  Poly q(std::max(0, degree(a) - db + 1), 0);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const u64 c = a.back() * lead_inv % p;
    q[shift] = c;
    for (int i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
    normalize(a);
  }
  normalize(q);
  return {q, a};
}

/// Monic irreducible polynomials of each degree 1..max_degree, in
/// lexicographic order of their coefficient lists (constant term first).
inline std::vector<Poly> monic_irreducibles(u64 p, unsigned max_degree) {
  std::vector<Poly> found;
  for (unsigned d = 1; d <= max_degree; ++d) {
    Poly f(d + 1, 0);
    f[d] = 1;
    // odometer over coefficients c_0 (most significant) .. c_{d-1}
    while (true) {
      bool irreducible = true;
      for (const Poly& g : found) {
        if (2 * degree(g) > static_cast<int>(d)) break;
        if (divmod(f, g, p).second.empty()) {
          irreducible = false;
          break;
        }
      }
      if (irreducible) found.push_back(f);
      unsigned pos = d;
      bool done = false;
      while (true) {
        if (pos == 0) {
          done = true;
          break;
        }
        --pos;
        if (++f[pos] < p) break;
        f[pos] = 0;
      }
      if (done) break;
    }
    std::stable_sort(found.begin(), found.end(), [](const Poly& a, const Poly& b) { return a.size() < b.size(); });
  }
  return found;
}

/// Factor a monic polynomial by trial division against `irreducibles`.
inline std::vector<std::pair<Poly, unsigned>> factor(Poly f, const std::vector<Poly>& irreducibles, u64 p) {
  std::vector<std::pair<Poly, unsigned>> out;
  for (const Poly& g : irreducibles) {
    if (degree(f) < 1) break;
    unsigned e = 0;
    while (degree(f) >= degree(g)) {
      auto [q, r] = divmod(f, g, p);
      if (!r.empty()) break;
      f = q;
      ++e;
    }
    if (e > 0) out.emplace_back(g, e);
  }
  if (degree(f) >= 1) throw std::logic_error("factor: irreducible list too short");
  return out;
}

/// Order of x modulo an irreducible f with f(0) != 0.
inline u64 order_of_x(const Poly& f, u64 p) {
  const unsigned d = static_cast<unsigned>(degree(f));
  const u64 group = ipow(p, d) - 1;
  auto x_pow_is_one = [&](u64 e) {
    // x^e mod f by square-and-multiply on residues
    Poly result{1}, base{0, 1};
    if (d == 1) base = {(p - f[0]) % p};
    while (e) {
      if (e & 1) result = divmod(mul(result, base, p), f, p).second;
      base = divmod(mul(base, base, p), f, p).second;
      e >>= 1;
    }
    return result.size() == 1 && result[0] == 1;
  };
  u64 order = group;
  for (auto [r, e] : factorize(group)) {
    for (int i = 0; i < e; ++i) {
      if (x_pow_is_one(order / r)) order /= r;
      else break;
    }
  }
  return order;
}

inline std::string to_string(const Poly& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || a[i] != 1) os << a[i];
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace poly
}  // namespace lnc
