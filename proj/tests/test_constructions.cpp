#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "lnc/constructions.hpp"
#include "oracles.hpp"

using namespace lnc;

namespace {

mpz_class z(u64 v) { return mpz_class(std::to_string(v)); }

/// d'(omega ceil(d/d') - omega + 1) + 2 for omega equal degrees d.
mpz_class rhs_equal_degrees(const mpz_class& dp, const mpz_class& d, u64 omega) {
  const mpz_class c = (d + dp - 1) / dp;
  return dp * (z(omega) * c - z(omega) + 1) + 2;
}

u64 modpow(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<unsigned __int128>(r) * b % m);
    b = static_cast<u64>(static_cast<unsigned __int128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

std::vector<u64> divisors_from(const std::map<u64, int>& f) {
  std::vector<u64> d{1};
  for (auto [p, e] : f) {
    const std::size_t n = d.size();
    u64 pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < n; ++j) d.push_back(d[j] * pk);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST(BinaryFamily, CertificateForL3) {
  const Prop4Certificate c = prop4_certificate({3, 484});
  EXPECT_EQ(c.L, 19u);
  EXPECT_EQ(c.q, z(524288));
  EXPECT_EQ(c.d, z(23832));
  EXPECT_EQ(c.m1, z(73));
  EXPECT_EQ(c.m2, z(341));
  EXPECT_TRUE(c.m_integral);
  EXPECT_TRUE(c.m1m2_exceeds_d);
  EXPECT_TRUE(c.chain_identity);
  EXPECT_TRUE(c.factorization_complete);
  ASSERT_TRUE(oracle::is_prime(524287));
  ASSERT_EQ(c.rows.size(), 2u);
  EXPECT_EQ(c.rows[0].divisor, 1);
  EXPECT_EQ(c.rows[1].divisor, z(524287));
  for (const EqRow& r : c.rows) {
    EXPECT_EQ(r.rhs, rhs_equal_degrees(r.divisor, c.d, 484));
    EXPECT_TRUE(r.fails);
  }
  EXPECT_TRUE(c.holds);
}

TEST(BinaryFamily, CertificateCoversEveryDivisor) {
  for (unsigned l : {4u, 5u}) {
    for (u64 omega : {484, 1000}) {
      const Prop4Certificate c = prop4_certificate({l, omega});
      const u64 Q = (u64{1} << (6 * l + 1)) - 1;
      const auto want = divisors_from(oracle::factor(Q));
      ASSERT_EQ(c.rows.size(), want.size());
      const mpz_class d = z((Q + 21) / 22);
      EXPECT_EQ(c.d, d);
      for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_EQ(c.rows[i].divisor, z(want[i]));
        EXPECT_EQ(c.rows[i].rhs, rhs_equal_degrees(z(want[i]), d, omega));
        EXPECT_EQ(c.rows[i].fails, z(Q + 1) < c.rows[i].rhs);
      }
      EXPECT_TRUE(c.holds) << "l=" << l;
      EXPECT_GE(c.smallest_prime_factor, 23);
    }
  }
}

TEST(BinaryFamily, RejectsSmallParameters) {
  EXPECT_THROW(prop4_certificate({2, 484}), std::invalid_argument);
  EXPECT_THROW(prop4_certificate({3, 483}), std::invalid_argument);
  Budget b;
  b.max_materialized_dim = 10;
  EXPECT_THROW(prop4_family({3, 484}, b), BudgetExceeded);
}

TEST(BinaryFamily, SpotcheckOnFullScaleFamily) {
  const Prop4Spotcheck s = prop4_spotcheck({3, 484}, 100, 1000, 7);
  ASSERT_EQ(s.pairs.size(), 100u);
  for (const PairCheck& p : s.pairs) EXPECT_EQ(p.rank, 19u);
  EXPECT_TRUE(s.pairs_full_rank);
  ASSERT_EQ(s.products.size(), 1000u);
  for (const ProductCheck& p : s.products) {
    EXPECT_EQ(p.e1_mod % 7, 1u);
    EXPECT_EQ(p.e2_mod % 3, 1u);
    EXPECT_NE(p.e1_mod, 0u);
    EXPECT_NE(p.e2_mod, 0u);
  }
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(s.products[i].matrix_verified);
  EXPECT_TRUE(s.products_full_rank);
}

TEST(BinaryFamily, FamilyBlocksAreCompanionPowers) {
  const BlockFamily fam = prop4_family({3, 484});
  EXPECT_EQ(fam.m1, 73u);
  EXPECT_EQ(fam.m2, 341u);
  const MatF b11 = fam.b(1, 1);
  EXPECT_EQ(b11, fam.diag_pow(7, 3));
  EXPECT_EQ(fam.b(2, 1), b11 * fam.diag_pow(7, 0));
  // G_1 has order 511 and G_2 order 1023
  EXPECT_EQ(matrix_order(fam.diag_pow(1, 0), 511 * 1023), 511u);
  EXPECT_EQ(matrix_order(fam.diag_pow(0, 1), 511 * 1023), 1023u);
  EXPECT_THROW(fam.b(0, 1), std::out_of_range);
  EXPECT_THROW(fam.b(74, 1), std::out_of_range);
}

TEST(BinaryFamily, ScaledAnalogSatisfiesLemma1AndSolvesTheNetwork) {
  const LayeredFamily lf = prop4_scaled_analog(4, 3);
  const ConditionTuple t = lf.tuple();
  EXPECT_EQ(t.L, 10u);
  const auto v = lemma1_check(t);
  EXPECT_TRUE(v.holds) << v.violated;
  EXPECT_EQ(v.products_checked, 81u);
  auto net = std::make_shared<const Network>(gen_n_omega_d(4, {3, 3, 3, 3}));
  EXPECT_TRUE(is_solution(lemma1_to_code(t, net)).solution);
}

TEST(BinaryFamily, UntwistedAnalogHasAnIdentityProduct) {
  const UntwistedViolation u = prop4_untwisted_violation(4, 3);
  ASSERT_TRUE(u.found);
  EXPECT_TRUE(u.product_is_identity);
  EXPECT_TRUE(u.lemma1_rejects);
  // exponent sums vanish modulo the block orders 63/gcd(63,7) and 15/gcd(15,3)
  u64 s1 = 0, s2 = 0;
  for (std::size_t c : u.choice) {
    s1 += 7 * u.set[c].first;
    s2 += 3 * u.set[c].second;
  }
  EXPECT_EQ(s1 % 63, 0u);
  EXPECT_EQ(s2 % 15, 0u);
}

TEST(OddPrimeFamily, ParametersForP3MatchOrderOracle) {
  const Thm5Params t = thm5_params(3);
  EXPECT_EQ(t.a, 13u);
  EXPECT_EQ(t.b, 4u);
  u64 m = 12;
  std::vector<u64> primes;
  for (u64 r = 3; r < 52; r += 2)
    if (oracle::is_prime(r) && r != 3) primes.push_back(r);
  EXPECT_EQ(t.primes, primes);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    EXPECT_EQ(t.q[i], primes[i]);  // no odd prime divides p - 1 = 2
    EXPECT_EQ(t.m_orders[i], oracle::order_mod(3, primes[i]));
    m = std::lcm(m, oracle::order_mod(3, primes[i]));
  }
  EXPECT_EQ(t.m, z(m));
  EXPECT_EQ(t.m, z(1275120));
  EXPECT_EQ(t.L, z(m + 1));
  std::vector<u64> small;
  for (u64 n = 1; n < 52; ++n)
    if (modpow(3, m + 1, n) == 1 % n) small.push_back(n);
  EXPECT_EQ(t.small_divisors, small);
  EXPECT_EQ(small.back(), 2u);
  EXPECT_TRUE(t.valid());
  for (const auto& [name, ok] : t.invariants) EXPECT_TRUE(ok) << name;
}

TEST(OddPrimeFamily, ParametersValidForSmallPrimes) {
  for (u64 p : {5, 7}) {
    const Thm5Params t = thm5_params(p);
    EXPECT_EQ(t.a, p * p + p + 1);
    EXPECT_EQ(t.b, 2 * (p - 1));
    for (const auto& [name, ok] : t.invariants) EXPECT_TRUE(ok) << "p=" << p << ": " << name;
    EXPECT_EQ(t.small_divisors.back(), p - 1);
    for (std::size_t i = 0; i < t.q.size(); ++i) {
      EXPECT_NE((p - 1) % t.q[i], 0u);
      EXPECT_EQ((p - 1) % (t.q[i] / t.primes[i]), 0u);
    }
    // a | p^3 - 1 always
    EXPECT_EQ(modpow(p, 3, t.a), 1u);
  }
  EXPECT_THROW(thm5_params(2), std::invalid_argument);
  EXPECT_THROW(thm5_params(9), std::invalid_argument);
}

TEST(OddPrimeFamily, CertificateForP3) {
  const Thm5Params t = thm5_params(3);
  ASSERT_TRUE(t.d0_materialized);
  const unsigned long L = t.L.get_ui();
  const mpz_class q = mpz_pow_ui(3, L);
  EXPECT_EQ(t.d0 * 52, (mpz_pow_ui(3, 9) - 1) * (mpz_pow_ui(3, L - 9) - 1));
  const Thm5Certificate c = thm5_certificate(t);
  const mpz_class half = (t.d0 + 1) / 2;
  // the threshold is the smallest omega with (omega - 1) ceil(d0/2) + 3 > q
  EXPECT_GT(z(c.omega_threshold - 1) * half + 3, q);
  EXPECT_LE(z(c.omega_threshold - 2) * half + 3, q);
  EXPECT_EQ(c.last_degree, t.d0 * 36);
  EXPECT_TRUE(c.d0_exceeds_bound);
  ASSERT_FALSE(c.large_rows.empty());
  for (std::size_t i = 0; i < c.large_rows.size(); ++i) {
    EXPECT_TRUE(c.ceil_identity[i]);
    EXPECT_TRUE(c.large_rows[i].fails);
  }
  for (const EqRow& r : c.small_rows) EXPECT_TRUE(r.fails);
  EXPECT_TRUE(c.holds);
  EXPECT_THROW(thm5_certificate(t, c.omega_threshold - 1), std::invalid_argument);
}

TEST(OddPrimeFamily, SampledPairsHaveFullRank) {
  const Thm5Params t = thm5_params(3);
  for (const Thm5PairCheck& pc : thm5_pair_samples(t, 50, 3)) {
    EXPECT_EQ(pc.rank_block1, 9u);
    EXPECT_TRUE(pc.block2_exponent_nonzero);
  }
}

TEST(Mersenne, SplitsAndPrimality) {
  const auto rep = mersenne_report({4, 13, 17, 19, 31, 12});
  ASSERT_EQ(rep.size(), 6u);
  EXPECT_FALSE(rep[0].prime);
  EXPECT_EQ(rep[0].value, 15);
  EXPECT_TRUE(rep[0].split.empty());
  EXPECT_EQ(rep[1].value, 8191);
  EXPECT_TRUE(rep[1].prime);
  EXPECT_EQ(rep[1].split, (std::vector<unsigned>{4, 9}));
  EXPECT_EQ(rep[2].split, (std::vector<unsigned>{6, 11}));
  EXPECT_EQ(rep[3].split, (std::vector<unsigned>{4, 15}));
  EXPECT_EQ(rep[4].split, (std::vector<unsigned>{4, 27}));
  EXPECT_FALSE(rep[5].prime);
  for (const auto& e : rep) {
    if (e.L <= 31) {
      EXPECT_EQ(e.prime, oracle::is_prime((u64{1} << e.L) - 1)) << e.L;
    }
    unsigned sum = 0;
    for (unsigned s : e.split) {
      sum += s;
      EXPECT_FALSE(oracle::is_prime((u64{1} << s) - 1)) << s;
    }
    if (!e.split.empty()) {
      EXPECT_EQ(sum, e.L);
    }
  }
}

TEST(Mersenne, BeyondTheTable) {
  const auto rep = mersenne_report({61, 200});
  EXPECT_TRUE(rep[0].prime);
  EXPECT_FALSE(rep[0].split.empty());
  EXPECT_FALSE(rep[1].prime);
  EXPECT_FALSE(rep[1].from_table);
  EXPECT_THROW(mersenne_report({1}), std::invalid_argument);
}
