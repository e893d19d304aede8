#pragma once

// Explicit families: the GF(2)^{6l+1} instances, the odd-prime instances of
// length ml+1, and the Mersenne split report for the Swirl network.

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "budget.hpp"
#include "phi.hpp"
#include "solvability.hpp"

namespace lnc {

/// Full decimal for short values, "head...tail (N digits)" otherwise.
inline std::string decimal_summary(const mpz_class& v, std::size_t limit = 60) {
  std::string s = v.get_str(10);
  if (s.size() <= limit) return s;
  return s.substr(0, 20) + "..." + s.substr(s.size() - 20) + " (" + std::to_string(s.size()) + " digits)";
}

struct EqRow {
  mpz_class divisor;
  mpz_class rhs;
  bool fails = false;  // q < rhs
};

/// Two-block family B_{jk} = diag(G_1^{c1 j}, G_2^{c2 k}), 1 <= j <= m1,
/// 1 <= k <= m2, over GF(p), with G_i the companion matrix of GF(p^{L_i}).
struct BlockFamily {
  Field f1, f2;
  u64 c1 = 1, c2 = 1, m1 = 0, m2 = 0;

  unsigned L1() const { return f1->k(); }
  unsigned L2() const { return f2->k(); }
  unsigned L() const { return L1() + L2(); }
  Field base() const { return prime_field(f1->p()); }

  MatF diag_pow(u64 e1, u64 e2) const {
    return block_diag({phi_lift(f1, f1->gen_pow(e1)), phi_lift(f2, f2->gen_pow(e2))});
  }
  MatF b(u64 j, u64 k) const {
    if (j < 1 || j > m1 || k < 1 || k > m2) throw std::out_of_range("block index out of range");
    return diag_pow(c1 * j, c2 * k);
  }
  MatF a0() const { return diag_pow(1, 1); }
};

struct Prop4Certificate {
  unsigned l = 0, L = 0;
  u64 omega = 0;
  mpz_class q, d, m1, m2;
  bool m_integral = false;
  bool m1m2_exceeds_d = false;
  bool chain_identity = false;  // 484 Q/22 - 483 Q/23 + 2 = 2^L + 1 for Q = 2^L - 1, both divisions exact
  mpz_class smallest_prime_factor;
  bool factorization_complete = false;
  std::vector<EqRow> rows;
  bool holds = false;  // the divisor inequality fails at every divisor found and the factorization is complete
};

struct Prop4Params {
  unsigned l = 3;
  u64 omega = 484;
  unsigned L() const { return 6 * l + 1; }
};

inline void check_prop4_params(const Prop4Params& p) {
  if (p.l <= 2) throw std::invalid_argument("l must exceed 2");
  if (p.omega < 484) throw std::invalid_argument("omega must be at least 484");
}

inline Prop4Certificate prop4_certificate(const Prop4Params& params, const Budget& budget = {}) {
  check_prop4_params(params);
  Prop4Certificate c;
  c.l = params.l;
  c.L = params.L();
  c.omega = params.omega;
  if (c.L > budget.certificate_bits) throw BudgetExceeded("2^L exceeds the certificate bit cap");
  c.q = mpz_pow_ui(2, c.L);
  const mpz_class Q = c.q - 1;
  c.d = ceil_div(Q, 22);
  const mpz_class num1 = mpz_pow_ui(2, 9) - 1, num2 = mpz_pow_ui(2, c.L - 9) - 1;
  c.m_integral = num1 % 7 == 0 && num2 % 3 == 0;
  c.m1 = num1 / 7;
  c.m2 = num2 / 3;
  c.m1m2_exceeds_d = c.m1 * c.m2 > c.d;
  // 484/22 = 22 and 483/23 = 21 exactly
  c.chain_identity = 484 % 22 == 0 && 483 % 23 == 0 && 22 * Q - 21 * Q + 2 == c.q + 1;

  const BigFactorization fac = factorize_big(Q);
  c.factorization_complete = fac.complete();
  c.smallest_prime_factor = fac.factors.empty() ? fac.cofactor : fac.factors.front().first;
  const std::vector<std::pair<mpz_class, u64>> groups{{c.d, params.omega}};
  c.holds = c.factorization_complete && c.m_integral && c.m1m2_exceeds_d;
  for (const mpz_class& div : divisors_big(fac.factors)) {
    EqRow row{div, eq3_rhs(div, groups), false};
    row.fails = c.q < row.rhs;
    c.holds = c.holds && row.fails;
    c.rows.push_back(row);
  }
  return c;
}

/// B_{jk} with G_1 from GF(2^9) (step 7) and G_2 from GF(2^{6l-8}) (step 3).
inline BlockFamily prop4_family(const Prop4Params& params, const Budget& budget = {}) {
  check_prop4_params(params);
  if (params.L() > budget.max_materialized_dim) throw BudgetExceeded("matrix dimension exceeds the materialization cap");
  BlockFamily fam;
  fam.f1 = make_field(2, 9);
  fam.f2 = make_field(2, params.L() - 9);
  fam.c1 = 7;
  fam.c2 = 3;
  fam.m1 = fam.f1->group_order() / 7;
  fam.m2 = fam.f2->group_order() / 3;
  return fam;
}

/// Layer-to-block map of a lemma1 tuple built from a BlockFamily: layers
/// 1..omega-1 use B_{picks[i]}, layer omega uses A0 B_{picks[i]} when twisted.
struct LayeredFamily {
  BlockFamily fam;
  std::size_t omega = 0;
  std::vector<std::pair<u64, u64>> picks;
  bool twisted = true;

  ConditionTuple tuple() const {
    ConditionTuple t{Flavor::lemma1, fam.base(), fam.L(), {}, {}};
    std::vector<MatF> layer;
    for (auto [j, k] : picks) layer.push_back(fam.b(j, k));
    for (std::size_t n = 0; n + 1 < omega; ++n) t.a.push_back(layer);
    if (twisted) {
      const MatF a0 = fam.a0();
      for (auto& m : layer) m = a0 * m;
    }
    t.a.push_back(layer);
    return t;
  }
};

struct PairCheck {
  u64 j1, k1, j2, k2;
  std::size_t rank;
};

struct ProductCheck {
  u64 e1_mod, e2_mod;  // exponents of the product's blocks
  bool e1_is_one_mod_c1, e2_is_one_mod_c2;
  bool full_rank;        // both exponents nonzero, so I + P is invertible
  bool matrix_verified;  // product multiplied out, compared with diag(G1^e1, G2^e2), rank(I + P) taken
};

struct Prop4Spotcheck {
  std::vector<PairCheck> pairs;
  bool pairs_full_rank = true;
  std::vector<PairCheck> shared_index_pairs;  // j1 = j2 or k1 = k2
  std::vector<ProductCheck> products;
  bool products_full_rank = true;
};

/// Sampled checks on the full-scale family.  Pairs follow the index
/// quantifier j1 != j2, k1 != k2; a few pairs sharing an index are recorded
/// separately.  Products draw one B_{jk} per layer, the last layer twisted by
/// A0, and are checked through their block exponents: rank(I + P) = L iff
/// neither block of P is the identity.  The first `verify_matrices` products
/// are also multiplied out.
inline Prop4Spotcheck prop4_spotcheck(const Prop4Params& params, std::size_t pair_samples, std::size_t product_samples,
                                      u64 seed, const Budget& budget = {}, std::size_t verify_matrices = 3) {
  const BlockFamily fam = prop4_family(params, budget);
  Prop4Spotcheck out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> dj(1, fam.m1), dk(1, fam.m2);
  const u64 L = fam.L();
  for (std::size_t s = 0; s < pair_samples; ++s) {
    u64 j1 = dj(rng), j2 = dj(rng), k1 = dk(rng), k2 = dk(rng);
    while (j2 == j1) j2 = dj(rng);
    while (k2 == k1) k2 = dk(rng);
    const std::size_t r = (fam.b(j1, k1) - fam.b(j2, k2)).rank();
    out.pairs.push_back({j1, k1, j2, k2, r});
    out.pairs_full_rank = out.pairs_full_rank && r == L;
  }
  for (std::size_t s = 0; s < 2; ++s) {
    const u64 j = dj(rng), k1 = dk(rng);
    u64 k2 = dk(rng);
    while (k2 == k1) k2 = dk(rng);
    out.shared_index_pairs.push_back({j, k1, j, k2, (fam.b(j, k1) - fam.b(j, k2)).rank()});
  }
  const u64 o1 = fam.f1->group_order(), o2 = fam.f2->group_order();
  for (std::size_t s = 0; s < product_samples; ++s) {
    u64 e1 = 1 % o1, e2 = 1 % o2;  // A0 twist
    std::vector<std::pair<u64, u64>> chosen;
    for (u64 n = 0; n < params.omega; ++n) {
      const u64 j = dj(rng), k = dk(rng);
      chosen.emplace_back(j, k);
      e1 = (e1 + fam.c1 * j) % o1;
      e2 = (e2 + fam.c2 * k) % o2;
    }
    ProductCheck pc{e1, e2, e1 % fam.c1 == 1 % fam.c1, e2 % fam.c2 == 1 % fam.c2, e1 != 0 && e2 != 0, false};
    if (s < verify_matrices) {
      MatF prod = MatF::identity(fam.base(), L);
      for (auto [j, k] : chosen) prod = fam.b(j, k) * prod;
      prod = fam.a0() * prod;
      const bool rank_ok = (MatF::identity(fam.base(), L) + prod).rank() == L;
      pc.matrix_verified = prod == fam.diag_pow(e1, e2) && rank_ok == pc.full_rank;
      if (!pc.matrix_verified) out.products_full_rank = false;
    }
    out.products_full_rank = out.products_full_rank && pc.full_rank && pc.e1_is_one_mod_c1 && pc.e2_is_one_mod_c2;
    out.products.push_back(pc);
  }
  return out;
}

/// Desk-scale analog: G_1 from GF(2^6) with step 7 (m1 = 9), G_2 from
/// GF(2^4) with step 3 (m2 = 5), L = 10; layer k holds B_{kk}.
inline LayeredFamily prop4_scaled_analog(std::size_t omega, std::size_t d, bool twisted = true) {
  if (omega < 3 || omega > 20) throw std::invalid_argument("scaled analog needs 3 <= omega <= 20");
  BlockFamily fam;
  fam.f1 = make_field(2, 6);
  fam.f2 = make_field(2, 4);
  fam.c1 = 7;
  fam.c2 = 3;
  fam.m1 = 9;
  fam.m2 = 5;
  if (d < 2 || d > std::min(fam.m1, fam.m2)) throw std::invalid_argument("scaled analog needs 2 <= d <= 5");
  LayeredFamily lf{fam, omega, {}, twisted};
  for (u64 i = 1; i <= d; ++i) lf.picks.emplace_back(i, i);
  return lf;
}

struct UntwistedViolation {
  bool found = false;
  std::vector<std::pair<u64, u64>> set;     // common layer set S
  std::vector<std::size_t> choice;          // index into S per layer
  bool product_is_identity = false;         // multiplied out
  bool lemma1_rejects = false;
};

/// Searches layer sets S of d blocks with distinct j and distinct k for a
/// choice whose product is I when every layer (including layer omega) is S.
inline UntwistedViolation prop4_untwisted_violation(std::size_t omega, std::size_t d, const Budget& budget = {}) {
  const LayeredFamily base = prop4_scaled_analog(omega, d, false);
  const BlockFamily& fam = base.fam;
  const u64 ord1 = fam.f1->group_order() / std::gcd(fam.f1->group_order(), fam.c1);
  const u64 ord2 = fam.f2->group_order() / std::gcd(fam.f2->group_order(), fam.c2);
  UntwistedViolation out;
  std::vector<std::pair<u64, u64>> set;
  std::vector<bool> used_k(fam.m2 + 1, false);
  std::vector<std::size_t> choice(omega, 0);

  std::function<bool(std::size_t, u64, u64)> pick = [&](std::size_t n, u64 s1, u64 s2) -> bool {
    if (n == omega) return s1 == 0 && s2 == 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      choice[n] = i;
      if (pick(n + 1, (s1 + set[i].first) % ord1, (s2 + set[i].second) % ord2)) return true;
    }
    return false;
  };
  std::function<bool(u64)> build = [&](u64 next_j) -> bool {
    if (set.size() == d) return pick(0, 0, 0);
    for (u64 j = next_j; j <= fam.m1; ++j)
      for (u64 k = 1; k <= fam.m2; ++k) {
        if (used_k[k]) continue;
        used_k[k] = true;
        set.emplace_back(j, k);
        if (build(j + 1)) return true;
        set.pop_back();
        used_k[k] = false;
      }
    return false;
  };
  if (!build(1)) return out;
  out.found = true;
  out.set = set;
  out.choice = choice;
  MatF prod = MatF::identity(fam.base(), fam.L());
  for (std::size_t n = 0; n < omega; ++n) prod = fam.b(set[choice[n]].first, set[choice[n]].second) * prod;
  out.product_is_identity = prod.is_identity();
  LayeredFamily lf{fam, omega, set, false};
  out.lemma1_rejects = !lemma1_check(lf.tuple(), budget).holds;
  return out;
}

// ---------------------------------------------------------------------------

struct Thm5Params {
  u64 p = 3, a = 0, b = 0;
  unsigned l = 1;
  std::vector<u64> primes, q, m_orders;
  mpz_class m, L;
  bool d0_materialized = false;
  mpz_class d0;  // set when p^L fits the certificate bit cap
  std::vector<std::pair<std::string, bool>> invariants;
  std::vector<u64> small_divisors;  // divisors of p^L - 1 below ab

  u64 ab() const { return a * b; }
  bool valid() const {
    for (const auto& [name, ok] : invariants)
      if (!ok) return false;
    return true;
  }
};

/// Parameters for an odd prime p.  The prime list is the odd primes below ab
/// other than p itself, which has no order modulo a power of p.  Every
/// invariant is decided by modular exponentiation; d0 itself is only
/// materialized when p^L fits the certificate bit cap.
inline Thm5Params thm5_params(u64 p, unsigned l = 1, const Budget& budget = {}) {
  if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("p must be an odd prime");
  if (l < 1) throw std::invalid_argument("l must be positive");
  Thm5Params t;
  t.p = p;
  t.l = l;
  t.a = p * p + p + 1;
  t.b = 2 * (p - 1);
  for (u64 r : primes_below(t.ab())) {
    if (r == 2 || r == p) continue;
    u64 qj = r;
    while ((p - 1) % qj == 0) qj *= r;
    t.primes.push_back(r);
    t.q.push_back(qj);
    t.m_orders.push_back(multiplicative_order(p % qj, qj));
  }
  t.m = 12;
  for (u64 mj : t.m_orders) t.m = lcm(t.m, mpz_class(static_cast<unsigned long>(mj)));
  const mpz_class ml = t.m * static_cast<unsigned long>(l);
  t.L = ml + 1;

  auto divides = [&](u64 n, const mpz_class& e) { return n == 1 || pow_mod_big(p % n, e, n) == 1 % n; };
  auto inv = [&](const std::string& name, bool ok) { t.invariants.emplace_back(name, ok); };
  const mpz_class l3 = 3 * l, l2 = 2 * l;
  inv("a | p^(3l) - 1", divides(t.a, l3));
  inv("a does not divide p^(3l+1) - 1", !divides(t.a, l3 + 1));
  inv("b | p^(2l) - 1", divides(t.b, l2));
  inv("b does not divide p^(2l+1) - 1", !divides(t.b, l2 + 1));
  bool all_div = divides(t.a, ml) && divides(t.b, ml);
  bool none_div = !divides(t.a, ml + 1) && !divides(t.b, ml + 1);
  for (u64 qj : t.q) {
    all_div = all_div && divides(qj, ml);
    none_div = none_div && !divides(qj, ml + 1);
  }
  inv("a, b, q_j all divide p^(ml) - 1", all_div);
  inv("none of a, b, q_j divides p^(ml+1) - 1", none_div);
  mpz_class prod_q = 1, prod_p = 1;
  for (std::size_t i = 0; i < t.q.size(); ++i) {
    prod_q *= static_cast<unsigned long>(t.q[i]);
    prod_p *= static_cast<unsigned long>(t.primes[i]);
  }
  inv("q_1...q_n / p_1...p_n < p - 1", prod_q < prod_p * static_cast<unsigned long>(p - 1));
  for (u64 n = 1; n < t.ab(); ++n)
    if (divides(n, t.L)) t.small_divisors.push_back(n);
  inv("largest divisor of p^L - 1 below ab is p - 1", !t.small_divisors.empty() && t.small_divisors.back() == p - 1);
  inv("L >= 13", t.L >= 13);
  inv("a | p^9 - 1 and b | p^(L-9) - 1 (d0 integral)", divides(t.a, 9) && divides(t.b, t.L - 9));

  const double bits = t.L.get_d() * std::log2(double(p));
  if (bits <= double(budget.certificate_bits)) {
    const mpz_class n1 = mpz_pow_ui(p, 9) - 1, n2 = mpz_pow_ui(p, t.L.get_ui() - 9) - 1;
    const mpz_class prod = n1 * n2;
    t.d0_materialized = true;
    inv("d0 integral (exact division)", mpz_divisible_ui_p(prod.get_mpz_t(), t.ab()) != 0);
    t.d0 = prod / static_cast<unsigned long>(t.ab());
  }
  return t;
}

struct Thm5Certificate {
  u64 omega = 0, omega_threshold = 0;
  mpz_class q, d0, last_degree;
  bool d0_exceeds_bound = false;        // d0 > (p^L - 1)/(ab + 1): every d >= d0 has cofactor < ab + 1
  std::vector<EqRow> large_rows;        // d = (p^L - 1)/d' for the small divisors d'
  std::vector<bool> ceil_identity;      // ceil(D/d) = d' on those rows
  std::vector<EqRow> small_rows;        // small divisors d < d0 found by trial division
  bool holds = false;
};

/// Divisor-inequality failure for the instance d = (d0 x (omega-1), (a-1)(b-1) d0).
/// Divisors d < d0 are covered by the omega threshold, the smallest omega
/// with (omega-1) ceil(d0/2) + 3 > p^L; divisors d >= d0 are exactly
/// (p^L - 1)/d' for the divisors d' < ab + 1 found by the scan.
inline Thm5Certificate thm5_certificate(const Thm5Params& t, u64 omega = 0, u64 small_trial = 1000) {
  if (!t.valid()) throw std::invalid_argument("parameters fail their invariants");
  if (!t.d0_materialized) throw BudgetExceeded("p^L exceeds the certificate bit cap");
  Thm5Certificate c;
  c.q = mpz_pow_ui(t.p, t.L.get_ui());
  const mpz_class Q = c.q - 1;
  c.d0 = t.d0;
  c.last_degree = mpz_class(static_cast<unsigned long>((t.a - 1) * (t.b - 1))) * t.d0;
  const mpz_class half = ceil_div(t.d0, 2);
  const mpz_class need = (c.q - 3) / half + 2;
  if (!need.fits_ulong_p()) throw BudgetExceeded("omega threshold does not fit in 64 bits");
  c.omega_threshold = need.get_ui();
  c.omega = omega ? omega : c.omega_threshold;
  if (c.omega < c.omega_threshold) throw std::invalid_argument("omega is below the certified threshold");
  c.d0_exceeds_bound = t.d0 * static_cast<unsigned long>(t.ab() + 1) > Q;
  const std::vector<std::pair<mpz_class, u64>> groups{{t.d0, c.omega - 1}, {c.last_degree, 1}};
  c.holds = c.d0_exceeds_bound;
  for (u64 dp : t.small_divisors) {
    const mpz_class d = Q / static_cast<unsigned long>(dp);
    if (d < t.d0) continue;
    EqRow row{d, eq3_rhs(d, groups), false};
    row.fails = c.q < row.rhs;
    c.ceil_identity.push_back(ceil_div(c.last_degree, d) == static_cast<unsigned long>(dp));
    c.holds = c.holds && row.fails && c.ceil_identity.back();
    c.large_rows.push_back(row);
  }
  for (u64 n = 1; n < small_trial; ++n) {
    if (n != 1 && pow_mod_big(t.p % n, t.L, n) != 1 % n) continue;
    const mpz_class d(static_cast<unsigned long>(n));
    if (d >= t.d0) break;
    EqRow row{d, eq3_rhs(d, groups), false};
    row.fails = c.q < row.rhs;
    c.holds = c.holds && row.fails;
    c.small_rows.push_back(row);
  }
  return c;
}

struct Thm5PairCheck {
  u64 j1, k1, j2, k2;
  std::size_t rank_block1;     // materialized 9 x 9 difference
  bool block2_exponent_nonzero;  // b (k1 - k2) not 0 mod p^(L-9) - 1
};

/// Sampled pair ranks: the GF(p^9) block is materialized, the GF(p^{L-9})
/// block is decided by its exponent (G_2^x = I iff x = 0 mod p^{L-9} - 1).
inline std::vector<Thm5PairCheck> thm5_pair_samples(const Thm5Params& t, std::size_t samples, u64 seed) {
  if (!t.d0_materialized) throw BudgetExceeded("p^L exceeds the certificate bit cap");
  const unsigned long L = t.L.get_ui();
  const Field f1 = make_field(t.p, 9);
  const u64 m1 = f1->group_order() / t.a;
  const mpz_class ord2 = mpz_pow_ui(t.p, L - 9) - 1;
  const mpz_class m2 = ord2 / static_cast<unsigned long>(t.b);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> dj(1, m1);
  const u64 kmax = m2.fits_ulong_p() ? m2.get_ui() : UINT64_MAX;
  std::uniform_int_distribution<u64> dk(1, kmax);
  std::vector<Thm5PairCheck> out;
  for (std::size_t s = 0; s < samples; ++s) {
    u64 j1 = dj(rng), j2 = dj(rng), k1 = dk(rng), k2 = dk(rng);
    while (j2 == j1) j2 = dj(rng);
    while (k2 == k1) k2 = dk(rng);
    const MatF diff = phi_lift(f1, f1->gen_pow(t.a * j1)) - phi_lift(f1, f1->gen_pow(t.a * j2));
    const mpz_class x = mpz_class(static_cast<unsigned long>(t.b)) *
                        (mpz_class(static_cast<unsigned long>(std::max(k1, k2))) - static_cast<unsigned long>(std::min(k1, k2)));
    out.push_back({j1, k1, j2, k2, diff.rank(), x % ord2 != 0});
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Exponents of the known Mersenne primes up to 2^127 - 1.
inline const std::vector<unsigned>& mersenne_exponents() {
  static const std::vector<unsigned> e{2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127};
  return e;
}

struct MersenneEntry {
  unsigned L = 0;
  mpz_class value;
  bool prime = false;
  bool from_table = true;
  std::vector<unsigned> split;  // parts with 2^{L_i} - 1 composite, empty if none needed or found
  std::string summary;
};

inline bool mersenne_is_prime(unsigned L, bool& from_table) {
  from_table = L <= 127;
  if (from_table) {
    const auto& e = mersenne_exponents();
    return std::find(e.begin(), e.end(), L) != e.end();
  }
  const mpz_class v = mpz_pow_ui(2, L) - 1;
  return mpz_probab_prime_p(v.get_mpz_t(), 30) > 0;
}

inline bool mersenne_composite(unsigned L) {
  if (L < 4) return false;
  bool table;
  return !mersenne_is_prime(L, table);
}

/// For each L: primality of 2^L - 1 and, when prime, a split L = L_1 + ... with
/// every 2^{L_i} - 1 composite (two parts preferred, smallest L_1 first).
inline std::vector<MersenneEntry> mersenne_report(const std::vector<unsigned>& Ls) {
  std::vector<MersenneEntry> out;
  for (unsigned L : Ls) {
    if (L < 2) throw std::invalid_argument("L must be at least 2");
    MersenneEntry e;
    e.L = L;
    e.value = mpz_pow_ui(2, L) - 1;
    e.prime = mersenne_is_prime(L, e.from_table);
    if (!e.prime) {
      e.summary = "2^L - 1 composite: Swirl scalar solvable over GF(2^L) for every omega";
      out.push_back(e);
      continue;
    }
    for (unsigned a = 4; a + 4 <= L && e.split.empty(); ++a)
      if (mersenne_composite(a) && mersenne_composite(L - a)) e.split = {a, L - a};
    for (unsigned a = 4; a + 8 <= L && e.split.empty(); ++a)
      for (unsigned b = a; a + b + 4 <= L && e.split.empty(); ++b)
        if (mersenne_composite(a) && mersenne_composite(b) && mersenne_composite(L - a - b)) e.split = {a, b, L - a - b};
    if (e.split.empty()) {
      e.summary = "2^L - 1 prime: no split into composite Mersenne parts";
    } else {
      std::string parts;
      for (unsigned s : e.split) parts += (parts.empty() ? "GF(2^" : ", GF(2^") + std::to_string(s) + ")";
      e.summary = "2^L - 1 prime: Swirl with omega >= 2^L - 2 not scalar solvable over GF(2^L); scalar solvable over " +
                  parts + ", hence vector solvable over GF(2)^L by direct sum";
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace lnc
