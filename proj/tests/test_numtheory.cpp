#include <gtest/gtest.h>

#include <random>

#include "lnc/numtheory.hpp"
#include "oracles.hpp"

using namespace lnc;

TEST(NumTheory, PrimalityMatchesTrialDivision) {
  for (u64 n = 0; n < 20000; ++n) ASSERT_EQ(is_prime_u64(n), oracle::is_prime(n)) << n;
}

TEST(NumTheory, LargePrimes) {
  EXPECT_TRUE(is_prime_u64((1ULL << 61) - 1));
  EXPECT_TRUE(is_prime_u64(524287));
  EXPECT_FALSE(is_prime_u64((1ULL << 59) - 1));
  EXPECT_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(NumTheory, FactorizeMatchesOracle) {
  for (u64 n = 2; n < 5000; ++n) {
    std::map<u64, int> got;
    for (auto [p, e] : factorize(n)) got[p] = e;
    ASSERT_EQ(got, oracle::factor(n)) << n;
  }
}

TEST(NumTheory, FactorizeSemiprimes) {
  std::mt19937_64 rng(0);
  for (int i = 0; i < 20; ++i) {
    u64 a, b;
    do a = rng() % 4000000000ULL; while (!oracle::is_prime(a));
    do b = rng() % 4000000000ULL; while (!oracle::is_prime(b));
    const auto f = factorize(a * b);
    u64 prod = 1;
    for (auto [p, e] : f) {
      EXPECT_TRUE(oracle::is_prime(p));
      for (int k = 0; k < e; ++k) prod *= p;
    }
    EXPECT_EQ(prod, a * b);
  }
}

TEST(NumTheory, DivisorsAndOrders) {
  for (u64 n = 1; n < 1500; ++n) ASSERT_EQ(divisors(n), oracle::divisors(n)) << n;
  for (u64 m = 2; m < 400; ++m)
    for (u64 a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) {
        ASSERT_EQ(multiplicative_order(a, m), oracle::order_mod(a, m)) << a << " mod " << m;
      }
}

TEST(NumTheory, PrimePowerDetection) {
  for (u64 n = 1; n < 3000; ++n) {
    const auto f = oracle::factor(n);
    u64 p = 0;
    unsigned k = 0;
    const bool pp = prime_power(n, p, k);
    ASSERT_EQ(pp, f.size() == 1) << n;
    if (pp) {
      EXPECT_EQ(p, f.begin()->first);
      EXPECT_EQ(int(k), f.begin()->second);
    }
  }
}

TEST(NumTheory, PrimesBelow) {
  std::vector<u64> want;
  for (u64 n = 0; n < 1000; ++n)
    if (oracle::is_prime(n)) want.push_back(n);
  EXPECT_EQ(primes_below(1000), want);
}

TEST(NumTheory, BigIntegers) {
  const mpz_class m67 = mpz_pow_ui(2, 67) - 1;
  const auto f = factorize_big(m67);
  ASSERT_TRUE(f.complete());
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, mpz_class(193707721UL));
  EXPECT_EQ(f.factors[1].first, mpz_class("761838257287"));
  EXPECT_EQ(decimal_digits(mpz_pow_ui(10, 50)), 51u);
  EXPECT_EQ(decimal_digits(mpz_pow_ui(10, 50) - 1), 50u);
  EXPECT_EQ(ceil_div(mpz_class(524287), mpz_class(22)), mpz_class(23832));
  EXPECT_EQ(pow_mod_big(3, mpz_class(1275121), 13), pow_mod(3, 1275121, 13));
}
