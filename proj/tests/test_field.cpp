#include <gtest/gtest.h>

#include "lnc/phi.hpp"
#include "oracles.hpp"

using namespace lnc;

namespace {

const std::vector<std::pair<u64, unsigned>> kSmall = {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2},
                                                      {2, 4}, {5, 2}, {3, 3}, {2, 5}, {7, 2}};

oracle::PolyRing ring(const FieldSpec& f) { return {f.p(), f.poly()}; }

}  // namespace

TEST(Field, ArithmeticMatchesPolynomialOracle) {
  for (auto [p, k] : kSmall) {
    const Field f = make_field(p, k);
    const auto r = ring(*f);
    for (u64 a = 0; a < f->size(); ++a)
      for (u64 b = 0; b < f->size(); ++b) {
        ASSERT_EQ(f->mul(a, b), r.mul(a, b)) << p << "^" << k;
        ASSERT_EQ(f->add(a, b), r.add(a, b));
      }
  }
}

TEST(Field, InversesAndGenerator) {
  for (auto [p, k] : kSmall) {
    const Field f = make_field(p, k);
    for (u64 a = 1; a < f->size(); ++a) ASSERT_EQ(f->mul(a, f->inv(a)), 1u);
    u64 x = f->generator(), n = 1;
    while (x != 1) {
      x = f->mul(x, f->generator());
      ++n;
    }
    EXPECT_EQ(n, f->size() - 1) << "generator order";
  }
}

TEST(Field, PolynomialIsLexicographicallySmallestPrimitive) {
  for (auto [p, k] : kSmall) {
    const Field f = make_field(p, k);
    EXPECT_EQ(ring(*f).order_of_x(), f->size() - 1);
    // every smaller coefficient list (c_0 most significant, c_0 != 0) is not primitive
    std::vector<u64> c(k, 0);
    c[0] = 1;
    while (true) {
      std::vector<u64> poly = c;
      poly.push_back(1);
      if (poly == f->poly()) break;
      EXPECT_NE(oracle::PolyRing({p, poly}).order_of_x(), f->size() - 1) << "smaller primitive polynomial exists";
      unsigned pos = k;
      while (pos-- > 0 && ++c[pos] == p) c[pos] = 0;
    }
  }
}

TEST(Field, KnownPolynomials) {
  EXPECT_EQ(make_field(2, 2)->poly(), (std::vector<u64>{1, 1, 1}));
  // c_0 compared first: x^3 + x^2 + 1 precedes x^3 + x + 1
  EXPECT_EQ(make_field(2, 3)->poly(), (std::vector<u64>{1, 0, 1, 1}));
  EXPECT_EQ(make_field(2, 4)->poly(), (std::vector<u64>{1, 0, 0, 1, 1}));
  EXPECT_EQ(make_field(3, 1)->generator(), 2u);
  // x - 3 = x + 2 precedes x - 2 = x + 3
  EXPECT_EQ(make_field(5, 1)->poly(), (std::vector<u64>{2, 1}));
  EXPECT_EQ(make_field(5, 1)->generator(), 3u);
}

TEST(Field, RejectsBadInput) {
  EXPECT_THROW(make_field(4, 1), std::invalid_argument);
  EXPECT_THROW(make_field(2, 0), std::invalid_argument);
  EXPECT_THROW(make_field_with_poly(2, {1, 0, 1}), std::invalid_argument);  // x^2 + 1 = (x+1)^2
  EXPECT_THROW(make_field_with_poly(2, {1, 1, 1, 1, 1}), std::invalid_argument);  // irreducible, order 5
}

TEST(Field, LargeFieldWithoutTables) {
  const Field f = make_field(2, 19);
  EXPECT_FALSE(f->has_tables());
  const auto r = ring(*f);
  for (u64 a : {3ULL, 12345ULL, 524286ULL})
    for (u64 b : {7ULL, 99999ULL, 262144ULL}) EXPECT_EQ(f->mul(a, b), r.mul(a, b));
  EXPECT_EQ(f->pow(f->generator(), 524287), 1u);
}

TEST(Phi, IsARingHomomorphism) {
  for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
    const Field f = make_field(p, k);
    for (u64 a = 0; a < f->size(); ++a) {
      const MatF pa = phi_lift(f, a);
      EXPECT_EQ(pa.invertible(), a != 0);
      for (u64 b = 0; b < f->size(); ++b) {
        ASSERT_EQ(phi_lift(f, f->mul(a, b)), pa * phi_lift(f, b));
        ASSERT_EQ(phi_lift(f, f->add(a, b)), pa + phi_lift(f, b));
      }
    }
  }
}

TEST(Phi, CompanionMatrixIsPhiOfGenerator) {
  for (auto [p, k] : kSmall) {
    const Field f = make_field(p, k);
    const MatF c = companion_matrix(*f);
    EXPECT_EQ(c, phi_lift(f, f->generator()));
    EXPECT_TRUE(c.pow(f->size() - 1).is_identity());
    for (u64 d : divisors(f->size() - 1))
      if (d < f->size() - 1) {
        EXPECT_FALSE(c.pow(d).is_identity());
      }
  }
}

TEST(Phi, CoordinatesTimesPhiIsProduct) {
  const Field f = make_field(3, 2);
  for (u64 a = 0; a < 9; ++a)
    for (u64 b = 0; b < 9; ++b) {
      MatF row(f, 1, 1);
      row.set(0, 0, a);
      MatF prod(f, 1, 1);
      prod.set(0, 0, f->mul(a, b));
      EXPECT_EQ(phi_coords(row) * phi_lift(f, b), phi_coords(prod));
    }
}
