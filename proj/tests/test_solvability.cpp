#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "lnc/solvability.hpp"
#include "oracles.hpp"

using namespace lnc;

namespace {

oracle::PolyRing ring_for(u64 q) {
  switch (q) {
    case 4: return {2, {1, 1, 1}};
    case 8: return {2, {1, 1, 0, 1}};
    case 9: return {3, {1, 0, 1}};
    default: return {q, {0, 1}};
  }
}

/// Scalar layer-condition existence by enumerating every choice of layer sets in
/// GF(q)^* and every product.
bool oracle_scalar_lemma1(const std::vector<u64>& d, u64 q) {
  const oracle::PolyRing r = ring_for(q);
  u64 minus_one = 0;
  while (r.add(1, minus_one) != 0) ++minus_one;
  const u64 target = d.size() % 2 ? minus_one : 1;
  std::vector<std::vector<std::vector<u64>>> sets(d.size());
  for (std::size_t j = 0; j < d.size(); ++j)
    for (u64 mask = 0; mask < (u64{1} << (q - 1)); ++mask)
      if (static_cast<u64>(__builtin_popcountll(mask)) == d[j]) {
        std::vector<u64> s;
        for (u64 x = 1; x < q; ++x)
          if (mask >> (x - 1) & 1) s.push_back(x);
        sets[j].push_back(s);
      }
  std::vector<std::size_t> pick(d.size());
  std::function<bool(std::size_t)> rec = [&](std::size_t j) -> bool {
    if (j == d.size()) {
      std::vector<u64> prods{1};
      for (std::size_t l = 0; l < d.size(); ++l) {
        std::vector<u64> next;
        for (u64 a : prods)
          for (u64 b : sets[l][pick[l]]) next.push_back(r.mul(a, b));
        prods = next;
      }
      return std::find(prods.begin(), prods.end(), target) == prods.end();
    }
    for (pick[j] = 0; pick[j] < sets[j].size(); ++pick[j])
      if (rec(j + 1)) return true;
    return false;
  };
  return rec(0);
}

ConditionTuple scalar_tuple(const Field& f, const std::vector<std::vector<u64>>& layers) {
  ConditionTuple t{Flavor::lemma1, f, 1, {}, {}};
  for (const auto& l : layers) {
    std::vector<MatF> layer;
    for (u64 x : l) layer.push_back(MatF::scalar(f, 1, x));
    t.a.push_back(layer);
  }
  return t;
}

MatF random_invertible(const Field& f, unsigned L, std::mt19937_64& rng) {
  while (true) {
    MatF m = random_matrix(f, L, L, rng);
    if (m.invertible()) return m;
  }
}

Field field_of(u64 q) {
  u64 p = 0;
  unsigned k = 0;
  prime_power(q, p, k);
  return make_field(p, k);
}

}  // namespace

TEST(DivisorCriterion, KnownVerdicts) {
  const std::vector<u64> two6(6, 2), two3(3, 2);
  EXPECT_TRUE(theorem1_scalar(6, two6, 5).solvable);
  EXPECT_EQ(theorem1_scalar(6, two6, 5).witness_divisor, 2u);
  EXPECT_FALSE(theorem1_scalar(6, two6, 4).solvable);
  EXPECT_FALSE(theorem1_scalar(3, two3, 2).solvable);
  EXPECT_FALSE(theorem1_scalar(3, two3, 4).solvable);
  EXPECT_TRUE(theorem1_scalar(3, two3, 5).solvable);
}

TEST(DivisorCriterion, RejectsBadParameters) {
  EXPECT_THROW(theorem1_scalar(2, {2, 2}, 5), std::invalid_argument);
  EXPECT_THROW(theorem1_scalar(3, {2, 2}, 5), std::invalid_argument);
  EXPECT_THROW(theorem1_scalar(3, {2, 1, 2}, 5), std::invalid_argument);
  EXPECT_THROW(theorem1_scalar(3, {2, 2, 2}, 6), std::invalid_argument);
}

TEST(DivisorCriterion, AgreesWithSubsetOracleAndBruteForce) {
  const std::vector<std::vector<u64>> ds = {{2, 2, 2}, {2, 2, 3}, {2, 3, 3}, {3, 3, 3}};
  for (const auto& d : ds)
    for (u64 q : {2, 3, 4, 5, 7, 8, 9}) {
      const bool formula = theorem1_scalar(3, d, q).solvable;
      const bool want = d.back() < q && oracle_scalar_lemma1(d, q);
      auto net = std::make_shared<const Network>(gen_n_omega_d(3, d));
      const bool brute = brute_force_scalar(net, q).solvable;
      EXPECT_EQ(formula, want) << "q=" << q << " d3=" << d[2];
      EXPECT_EQ(brute, want) << "q=" << q << " d3=" << d[2];
    }
}

TEST(SwirlCriterion, KnownVerdicts) {
  EXPECT_TRUE(corollary1_swirl(6, 7).solvable);
  EXPECT_TRUE(corollary1_swirl(6, 5).solvable);
  EXPECT_FALSE(corollary1_swirl(6, 8).solvable);
  EXPECT_FALSE(corollary1_swirl(6, 4).solvable);
  EXPECT_TRUE(corollary1_swirl(3, 8).solvable);
  EXPECT_FALSE(corollary1_swirl(3, 2).solvable);
}

TEST(SwirlCriterion, MatchesDivisorCriterionOnAllTwoTuples) {
  for (std::size_t w = 3; w <= 12; ++w)
    for (u64 q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16})
      EXPECT_EQ(corollary1_swirl(w, q).solvable, theorem1_scalar(w, std::vector<u64>(w, 2), q).solvable)
          << "omega=" << w << " q=" << q;
}

TEST(Combination, KnownVerdicts) {
  const auto v = combination_solvable(4, 2, 2);
  ASSERT_TRUE(v.solvable);
  ASSERT_EQ(v.witness_family.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(v.witness_family[i].invertible());
    for (std::size_t j = i + 1; j < 3; ++j) EXPECT_EQ((v.witness_family[i] - v.witness_family[j]).rank(), 2u);
  }
  EXPECT_FALSE(combination_solvable(5, 2, 2).solvable);
  for (u64 q : {2, 3, 4})
    for (unsigned L : {1u, 2u}) EXPECT_TRUE(combination_solvable(2, q, L).solvable);
}

TEST(Combination, FormulaAgreesWithProjectiveBruteForce) {
  for (u64 n1 = 3; n1 <= 6; ++n1)
    for (u64 q : {2, 3, 4, 5}) {
      auto net = std::make_shared<const Network>(gen_combination(n1));
      EXPECT_EQ(combination_solvable(n1 - 1, q, 1).solvable, brute_force_scalar(net, q).solvable)
          << "n+1=" << n1 << " q=" << q;
    }
  auto net = std::make_shared<const Network>(gen_combination(4));
  EXPECT_FALSE(brute_force_scalar(net, 2).solvable);
}

TEST(Combination, CodeFromFamilyIsASolution) {
  for (auto [q, L] : std::vector<std::pair<u64, unsigned>>{{2, 2}, {3, 2}, {5, 1}, {7, 1}, {2, 3}}) {
    const u64 n = 4;
    const auto v = combination_solvable(n, q, L);
    ASSERT_TRUE(v.solvable);
    auto net = std::make_shared<const Network>(gen_combination(n + 1));
    const auto code = combination_code_from_family(net, v.witness_family);
    EXPECT_TRUE(is_solution(code).solution) << "q=" << q << " L=" << L;
  }
  auto net = std::make_shared<const Network>(gen_combination(4));
  const Field f = make_field(3, 1);
  // A_1 = A_2 gives two middles the same kernel
  const MatF two = MatF::scalar(f, 1, 2);
  const auto rep = is_solution(combination_code_from_family(net, {two, two}));
  EXPECT_FALSE(rep.solution);
  EXPECT_THROW(combination_code_from_family(net, {two}), std::invalid_argument);
}

TEST(LayerConditions, ScalarExampleOverGF5) {
  const Field f = make_field(5, 1);
  const ConditionTuple t = scalar_tuple(f, {{1, 2}, {1, 2}, {1, 3}});
  const auto v = lemma1_check(t);
  // 1 + 2*2*1 = 0 mod 5
  EXPECT_FALSE(v.holds);
  EXPECT_NE(v.violated.find("(2,2,1)"), std::string::npos) << v.violated;
  auto net = std::make_shared<const Network>(gen_swirl(3));
  EXPECT_FALSE(is_solution(lemma1_to_code(t, net)).solution);

  // subgroup {1,4} twice, then the coset {2,3}: every product avoids 4 = -1
  const ConditionTuple good = scalar_tuple(f, {{1, 4}, {1, 4}, {2, 3}});
  int bad = 0;
  for (u64 a : {1, 4})
    for (u64 b : {1, 4})
      for (u64 c : {2, 3}) bad += (1 + a * b * c) % 5 == 0;
  ASSERT_EQ(bad, 0);
  const auto v2 = lemma1_check(good);
  EXPECT_TRUE(v2.holds);
  EXPECT_EQ(v2.products_checked, 8u);
  EXPECT_TRUE(is_solution(lemma1_to_code(good, net)).solution);
}

TEST(LayerConditions, RepeatedLayerEntryFails) {
  std::mt19937_64 rng(3);
  const Field f = make_field(2, 1);
  ConditionTuple t{Flavor::lemma1, f, 2, {}, {}};
  for (int j = 0; j < 3; ++j) {
    const MatF a = random_invertible(f, 2, rng);
    t.a.push_back({a, a});
  }
  const auto v = lemma1_check(t);
  EXPECT_FALSE(v.holds);
  EXPECT_NE(v.violated.find("rank(A_1,1 - A_1,2)"), std::string::npos);
}

TEST(LayerConditions, SingularEntryFails) {
  const Field f = make_field(5, 1);
  const ConditionTuple t = scalar_tuple(f, {{1, 2}, {0, 2}, {1, 3}});
  EXPECT_NE(lemma1_check(t).violated.find("singular"), std::string::npos);
}

TEST(LayerConditions, SignFollowsOmegaInOddCharacteristic) {
  const Field f = make_field(7, 1);
  EXPECT_EQ(lemma1_sign(f, 3), 1u);
  EXPECT_EQ(lemma1_sign(f, 4), 6u);
  const Field g = make_field(2, 3);
  EXPECT_EQ(lemma1_sign(g, 4), 1u);
  // omega = 4: 1 - abcd must be nonzero, so the all-ones choice fails even
  // though 1 + 1 = 2 would pass
  const ConditionTuple t = scalar_tuple(f, {{1, 2}, {1, 3}, {1, 2}, {1, 3}});
  EXPECT_FALSE(lemma1_check(t).holds);
}

TEST(LayerConditions, EquivalentToNetworkSolution) {
  std::mt19937_64 rng(11);
  const std::vector<u64> d{2, 3, 2};
  auto net = std::make_shared<const Network>(gen_n_omega_d(3, d));
  for (u64 q : {5, 7, 4}) {
    const Field f = field_of(q);
    std::uniform_int_distribution<u64> nz(1, q - 1);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<std::vector<u64>> layers;
      for (u64 dj : d) {
        std::vector<u64> l;
        for (u64 k = 0; k < dj; ++k) l.push_back(nz(rng));
        layers.push_back(l);
      }
      const ConditionTuple t = scalar_tuple(f, layers);
      EXPECT_EQ(lemma1_check(t).holds, is_solution(lemma1_to_code(t, net)).solution);
    }
  }
  // over GF(7): the first layers from the cube roots of unity, the last from
  // a random coset, which works exactly when the coset avoids -1
  const Field f = make_field(7, 1);
  const std::vector<u64> cube{1, 2, 4};
  std::uniform_int_distribution<u64> pick(0, 2), unit(1, 6);
  int holds = 0, fails = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<u64>> layers;
    for (std::size_t j = 0; j < 2; ++j) {
      std::vector<u64> l = cube;
      std::shuffle(l.begin(), l.end(), rng);
      l.resize(d[j]);
      layers.push_back(l);
    }
    const u64 c = unit(rng), skip = pick(rng);
    std::vector<u64> last;
    for (std::size_t i = 0; i < 3; ++i)
      if (i != skip) last.push_back(c * cube[i] % 7);
    layers.push_back(last);
    const ConditionTuple t = scalar_tuple(f, layers);
    const bool h = lemma1_check(t).holds;
    const bool coset_has_minus_one = c == 6 || c == 3 || c == 5;
    // a 2-subset times all of H is H, so the full products fill the coset
    EXPECT_EQ(h, !coset_has_minus_one);
    EXPECT_EQ(h, is_solution(lemma1_to_code(t, net)).solution);
    holds += h;
    fails += !h;
  }
  EXPECT_GT(holds, 0);
  EXPECT_GT(fails, 0);
}

TEST(LayerConditions, BudgetRefusal) {
  const Field f = make_field(7, 1);
  const ConditionTuple t = scalar_tuple(f, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
  Budget b;
  b.lemma1_products = 26;
  EXPECT_THROW(lemma1_check(t, b), BudgetExceeded);
  b.lemma1_products = 27;
  EXPECT_NO_THROW(lemma1_check(t, b));
}

TEST(SwirlConditions, IdentityEntryFails) {
  std::mt19937_64 rng(5);
  const Field f = make_field(2, 1);
  ConditionTuple t{Flavor::lemma2, f, 3, {}, {}};
  for (int j = 0; j < 4; ++j) t.b.push_back(random_invertible(f, 3, rng));
  t.b[0] = MatF::identity(f, 3);
  const auto v = lemma2_check(t);
  EXPECT_FALSE(v.holds);
  EXPECT_NE(v.violated.find("rank(I - B_1)"), std::string::npos);
  Budget b;
  b.lemma2_products = 4;
  EXPECT_THROW(lemma2_check(t, b), BudgetExceeded);
}

TEST(Transform, DiagonalPatternAtL1) {
  const Field f = make_field(5, 1);
  // A_{j1} = 1 and A_{j2} = D_j give B_j = D_j
  const ConditionTuple t = scalar_tuple(f, {{1, 2}, {1, 3}, {1, 4}});
  const ConditionTuple b = transform_a_to_b(t);
  ASSERT_EQ(b.b.size(), 4u);
  EXPECT_EQ(b.b[0].at(0, 0), 2u);
  EXPECT_EQ(b.b[1].at(0, 0), 3u);
  EXPECT_EQ(b.b[2].at(0, 0), 4u);
  EXPECT_EQ(b.b[3].at(0, 0), 1u);  // (-1)^2 P_3^{-1} with P_3 = 1
}

TEST(Transform, RoundTripOnBTuples) {
  const Field f = make_field(5, 1);
  for (u64 b1 = 1; b1 < 5; ++b1)
    for (u64 b2 = 1; b2 < 5; ++b2)
      for (u64 b4 = 1; b4 < 5; ++b4) {
        ConditionTuple t{Flavor::lemma2, f, 1, {}, {}};
        for (u64 x : {b1, b2, u64{3}, b4}) t.b.push_back(MatF::scalar(f, 1, x));
        const ConditionTuple back = transform_a_to_b(transform_b_to_a(t));
        for (std::size_t j = 0; j < 4; ++j) ASSERT_EQ(back.b[j], t.b[j]);
        EXPECT_EQ(lemma1_check(transform_b_to_a(t)).holds, lemma2_check(t).holds);
      }
}

TEST(Transform, EquivalenceOnRandomMatrixTuples) {
  std::mt19937_64 rng(17);
  for (auto [L, q] : std::vector<std::pair<unsigned, u64>>{{2, 2}, {2, 3}, {1, 7}}) {
    const Field f = field_of(q);
    for (int trial = 0; trial < 100; ++trial) {
      ConditionTuple t{Flavor::lemma1, f, L, {}, {}};
      for (int j = 0; j < 3; ++j) t.a.push_back({random_invertible(f, L, rng), random_invertible(f, L, rng)});
      EXPECT_EQ(lemma1_check(t).holds, lemma2_check(transform_a_to_b(t)).holds);
    }
  }
}

TEST(Transform, RejectsWrongShapes) {
  const Field f = make_field(5, 1);
  EXPECT_THROW(transform_a_to_b(scalar_tuple(f, {{1, 2}, {1, 2, 3}, {1, 2}})), std::invalid_argument);
  ConditionTuple t{Flavor::lemma2, f, 1, {}, {}};
  EXPECT_THROW(transform_a_to_b(t), std::invalid_argument);
}

TEST(LemmaToCode, ShapeMismatch) {
  const Field f = make_field(5, 1);
  auto net = std::make_shared<const Network>(gen_n_omega_d(3, {2, 2, 3}));
  EXPECT_THROW(lemma1_to_code(scalar_tuple(f, {{1, 2}, {1, 2}, {1, 2}}), net), std::invalid_argument);
}

TEST(CosetWitness, SatisfiesLemma1) {
  for (auto [q, dd] : std::vector<std::pair<u64, u64>>{{7, 2}, {7, 3}, {13, 4}, {16, 5}, {9, 4}}) {
    const std::size_t w = 4;
    const std::vector<u64> d(w, 2);
    const ConditionTuple t = coset_witness(w, d, q, dd);
    EXPECT_TRUE(lemma1_check(t).holds) << "q=" << q << " dd=" << dd;
    auto net = std::make_shared<const Network>(gen_swirl(w));
    EXPECT_TRUE(is_solution(lemma1_to_code(t, net)).solution);
  }
  EXPECT_THROW(coset_witness(3, {2, 2, 2}, 7, 6), std::invalid_argument);
  EXPECT_THROW(coset_witness(3, {3, 2, 2}, 7, 2), std::invalid_argument);
}

TEST(BruteForce, GenericSearchOnButterfly) {
  Network n;
  const NodeId s = n.add_node("s"), a = n.add_node("a"), b = n.add_node("b"), c = n.add_node("c"),
               dnode = n.add_node("d"), t1 = n.add_node("t1"), t2 = n.add_node("t2");
  n.set_source(s);
  n.add_edge(s, a);
  n.add_edge(s, b);
  n.add_edge(a, t1);
  n.add_edge(a, c);
  n.add_edge(b, c);
  n.add_edge(b, t2);
  n.add_edge(c, dnode);
  n.add_edge(dnode, t1);
  n.add_edge(dnode, t2);
  n.add_receiver(t1);
  n.add_receiver(t2);
  auto net = std::make_shared<const Network>(n);
  EXPECT_TRUE(brute_force_scalar(net, 2).solvable);
  Budget tiny;
  tiny.brute_force_codes = 100;
  EXPECT_THROW(brute_force_scalar(net, 2, tiny), BudgetExceeded);
}

TEST(BruteForce, GenericSearchMatchesProjectiveSearch) {
  Network n = gen_combination(3);
  n.set_family({});
  auto generic = std::make_shared<const Network>(n);
  auto tagged = std::make_shared<const Network>(gen_combination(3));
  EXPECT_EQ(brute_force_scalar(generic, 2).solvable, brute_force_scalar(tagged, 2).solvable);
  EXPECT_TRUE(brute_force_scalar(generic, 2).solvable);
}

TEST(BruteForce, CrossCheckWithDivisorCriterion) {
  auto net = std::make_shared<const Network>(gen_swirl(3));
  EXPECT_TRUE(brute_force_scalar(net, 5).solvable);
  EXPECT_FALSE(brute_force_scalar(net, 4).solvable);
  EXPECT_FALSE(brute_force_scalar(net, 2).solvable);
}
