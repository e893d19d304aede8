#pragma once

// Integer helpers: modular arithmetic on 64-bit words, Miller-Rabin,
// Pollard rho factorization, multiplicative orders, and the GMP-backed
// variants used by the certificate builders.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lnc {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin for the full 64-bit range.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline u64 pollard_brent(u64 n, u64 c) {
  auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
  u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
  constexpr u64 block = 128;
  u64 r = 1;
  do {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    do {
      ys = y;
      for (u64 i = 0; i < std::min(block, r - k); ++i) {
        y = f(y);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += block;
    } while (k < r && g == 1);
    r <<= 1;
  } while (g == 1);
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

inline void factor_rec(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  for (u64 c = 1;; ++c) {
    u64 g = pollard_brent(n, c);
    if (g != n && g != 1) {
      factor_rec(g, out);
      factor_rec(n / g, out);
      return;
    }
  }
}

}  // namespace detail

/// Prime factorization as (prime, exponent) pairs in ascending prime order.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::map<u64, int> acc;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (n % p == 0) {
      ++acc[p];
      n /= p;
    }
  }
  detail::factor_rec(n, acc);
  return {acc.begin(), acc.end()};
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> divs{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t base = divs.size();
    u64 pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

inline std::vector<u64> primes_below(u64 limit) {
  std::vector<bool> composite(limit, false);
  std::vector<u64> primes;
  for (u64 i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j < limit; j += i) composite[j] = true;
  }
  return primes;
}

/// Smallest n >= 1 with base^n = 1 (mod m); requires gcd(base, m) = 1.
inline u64 multiplicative_order(u64 base, u64 m) {
  if (m == 1) return 1;
  if (std::gcd(base % m, m) != 1) throw std::invalid_argument("multiplicative_order: base not a unit");
  // phi(m) from the factorization, then strip prime factors.
  u64 phi = m;
  for (auto [p, e] : factorize(m)) phi = phi / p * (p - 1);
  u64 order = phi;
  for (auto [p, e] : factorize(phi)) {
    for (int i = 0; i < e && order % p == 0; ++i) {
      if (pow_mod(base, order / p, m) == 1) order /= p;
      else break;
    }
  }
  return order;
}

inline u64 ipow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw std::overflow_error("ipow overflow");
    r *= base;
  }
  return r;
}

/// True iff n = p^k for a prime p and k >= 1; fills p and k.
inline bool prime_power(u64 n, u64& p, unsigned& k) {
  if (n < 2) return false;
  auto f = factorize(n);
  if (f.size() != 1) return false;
  p = f[0].first;
  k = static_cast<unsigned>(f[0].second);
  return true;
}

// ---------------------------------------------------------------------------
// GMP helpers

inline mpz_class mpz_pow_ui(unsigned long base, unsigned long exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

/// base^exp mod m with an arbitrary-size exponent.
inline u64 pow_mod_big(u64 base, const mpz_class& exp, u64 m) {
  mpz_class r, b(static_cast<unsigned long>(base)), mod(static_cast<unsigned long>(m));
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r.get_ui();
}

inline mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline std::string to_decimal(const mpz_class& v) { return v.get_str(10); }

/// Decimal digit count of |v|.
inline std::size_t decimal_digits(const mpz_class& v) {
  if (v == 0) return 1;
  std::size_t approx = mpz_sizeinbase(v.get_mpz_t(), 10);
  // mpz_sizeinbase may overshoot by one.
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, approx - 1);
  mpz_class a = abs(v);
  return a < ten_pow ? approx - 1 : approx;
}

struct BigFactorization {
  std::vector<std::pair<mpz_class, int>> factors;  // ascending
  mpz_class cofactor = 1;                            // unfactored remainder (1 when complete)
  bool complete() const { return cofactor == 1; }
};

/// Trial division up to `trial_limit` followed by Pollard rho with at most
/// `rho_iterations` steps per attempt.  Leftover composite parts land in
/// `cofactor`, making the result explicitly partial.
inline BigFactorization factorize_big(mpz_class n, u64 trial_limit = 100000, u64 rho_iterations = 2000000) {
  BigFactorization out;
  std::map<mpz_class, int> acc;
  for (u64 p : primes_below(trial_limit)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++acc[mpz_class(static_cast<unsigned long>(p))];
      n /= static_cast<unsigned long>(p);
    }
  }
  std::vector<mpz_class> stack;
  if (n > 1) stack.push_back(n);
  mpz_class leftover = 1;
  while (!stack.empty()) {
    mpz_class m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (mpz_probab_prime_p(m.get_mpz_t(), 40) > 0) {
      ++acc[m];
      continue;
    }
    mpz_class found = 0;
    for (unsigned long c = 1; c <= 4 && found == 0; ++c) {
      mpz_class x = 2, y = 2, g = 1;
      for (u64 it = 0; it < rho_iterations; ++it) {
        x = (x * x + c) % m;
        y = (y * y + c) % m;
        y = (y * y + c) % m;
        mpz_class diff = abs(x - y);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
        if (g != 1) break;
      }
      if (g != 1 && g != m) found = g;
    }
    if (found == 0) {
      leftover *= m;
    } else {
      stack.push_back(found);
      stack.push_back(m / found);
    }
  }
  out.factors.assign(acc.begin(), acc.end());
  out.cofactor = leftover;
  return out;
}

inline std::vector<mpz_class> divisors_big(const std::vector<std::pair<mpz_class, int>>& factors) {
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace lnc
