#include <gtest/gtest.h>

#include <filesystem>
#include <functional>

#include "lnc/search.hpp"
#include "oracles.hpp"

using namespace lnc;

namespace {

using oracle::Mat;

Mat identity(std::size_t n) {
  Mat m(n, std::vector<u64>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat add(const Mat& a, const Mat& b) {
  Mat r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r[i][j] = (a[i][j] + b[i][j]) % 2;
  return r;
}

std::vector<Mat> all_invertible(std::size_t n) {
  std::vector<Mat> out;
  for (u64 bits = 0; bits < (u64{1} << (n * n)); ++bits) {
    Mat m(n, std::vector<u64>(n));
    for (std::size_t i = 0; i < n * n; ++i) m[i / n][i % n] = bits >> i & 1;
    if (oracle::rank(m, 2) == n) out.push_back(m);
  }
  return out;
}

/// Swirl tuples over GF(2) counted straight from the conditions.
u64 oracle_swirl_count(unsigned omega, std::size_t L) {
  const auto gl = all_invertible(L);
  const Mat id = identity(L);
  std::vector<std::size_t> pick(omega + 1);
  u64 count = 0;
  std::function<void(unsigned)> rec = [&](unsigned j) {
    if (j <= omega) {
      for (pick[j] = 0; pick[j] < gl.size(); ++pick[j]) rec(j + 1);
      return;
    }
    for (unsigned i = 0; i < omega; ++i)
      if (oracle::rank(add(id, gl[pick[i]]), 2) != L) return;
    for (u64 mask = 0; mask < (u64{1} << omega); ++mask) {
      Mat p = id;
      for (unsigned i = 0; i < omega; ++i)
        if (mask >> i & 1) p = oracle::mul(gl[pick[i]], p, 2);
      if (oracle::rank(add(gl[pick[omega]], p), 2) != L) return;
    }
    ++count;
  };
  rec(0);
  return count;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("lnc_test_" + name + "_" + std::to_string(::getpid()))).string();
}

}  // namespace

TEST(SwirlSearch, CountsMatchConditionOracle) {
  for (auto [omega, L] : std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {2, 2}, {3, 2}, {1, 3}, {2, 3}}) {
    const auto out = swirl_prefix_search(omega, L, 2);
    EXPECT_TRUE(out.exhausted);
    EXPECT_EQ(out.solutions, oracle_swirl_count(omega, L)) << "omega=" << omega << " L=" << L;
  }
}

TEST(SwirlSearch, Prefix2304) {
  const auto out = swirl_prefix_search(3, 3, 4);
  EXPECT_TRUE(out.exhausted);
  EXPECT_EQ(out.solutions, 2304u);
  EXPECT_EQ(out.witnesses.size(), 2304u);
  for (std::size_t i = 0; i < out.witnesses.size(); i += 97) EXPECT_TRUE(lemma2_check(out.witnesses[i]).holds);
}

TEST(SwirlSearch, NoneForOmega6UpToL3) {
  for (unsigned L = 1; L <= 3; ++L) {
    const auto out = swirl_full_search(6, L, 4);
    EXPECT_FALSE(out.found) << L;
    EXPECT_TRUE(out.exhausted) << L;
  }
}

TEST(SwirlSearch, FoundForSmallerOmega) {
  for (unsigned omega : {4u, 5u}) {
    const auto out = swirl_full_search(omega, 3, 4);
    ASSERT_TRUE(out.found);
    ASSERT_EQ(out.witnesses.size(), 1u);
    EXPECT_TRUE(lemma2_check(out.witnesses[0]).holds);
    auto net = std::make_shared<const Network>(gen_swirl(omega));
    EXPECT_TRUE(is_solution(lemma1_to_code(transform_b_to_a(out.witnesses[0]), net)).solution);
  }
}

TEST(SwirlSearch, ResumeFromCheckpoint) {
  const std::string path = temp_path("resume");
  std::filesystem::remove(path);
  const auto reference = swirl_prefix_search(3, 3, 1);

  SwirlSearchConfig cfg;
  cfg.omega = 3;
  cfg.L = 3;
  cfg.threads = 2;
  cfg.state_path = path;
  int interrupted = 0;
  SearchOutcome out;
  for (std::uint64_t ms = 1;; ms *= 2) {
    cfg.budget.phase_ms = ms;
    try {
      out = swirl_search(cfg);
      break;
    } catch (const BudgetExceeded&) {
      ++interrupted;
    }
  }
  EXPECT_TRUE(out.exhausted);
  EXPECT_EQ(out.solutions, reference.solutions);
  EXPECT_EQ(out.witnesses.size(), reference.witnesses.size());
  if (interrupted) {
    EXPECT_TRUE(out.resumed);
  }

  const auto again = swirl_search(cfg);
  EXPECT_TRUE(again.resumed);
  EXPECT_EQ(again.solutions, reference.solutions);
  EXPECT_EQ(again.nodes, reference.nodes);

  SwirlSearchConfig other = cfg;
  other.omega = 4;
  EXPECT_THROW(swirl_search(other), std::invalid_argument);
  std::filesystem::remove(path);
}

TEST(SwirlSearch, BudgetTimeoutIsTyped) {
  Budget b;
  b.phase_ms = 20;
  EXPECT_THROW(swirl_prefix_search(3, 4, 1, b), BudgetExceeded);
  EXPECT_THROW(swirl_prefix_search(3, 5), std::invalid_argument);
}

TEST(Singleton, FieldImageIsMaximal) {
  for (unsigned L : {2u, 3u}) {
    const Field ext = make_field(2, L);
    std::vector<MatF> set;
    for (u64 e = 0; e < ext->group_order(); ++e) set.push_back(phi_lift(ext, ext->gen_pow(e)));
    const auto v = singleton_filter(set, L, 2);
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(v.size_with_zero, std::size_t{1} << L);
    EXPECT_EQ(v.min_distance, L);
    EXPECT_EQ(v.bound, u64{1} << L);
  }
  const Field f = prime_field(2);
  const auto v = singleton_filter({MatF::identity(f, 2), MatF::from_rows(f, {{1, 1}, {0, 1}})}, 2, 2);
  EXPECT_EQ(v.min_distance, 1u);
  EXPECT_TRUE(v.pass);
}

TEST(GL5, PruneCertifiesNonExistence) {
  const Gl5Outcome g = gl5_prune(4);
  EXPECT_EQ(g.fpf_count, 2887680u);
  EXPECT_EQ(g.fpf_classes, 8u);
  EXPECT_EQ(g.order21, 2u);
  EXPECT_EQ(g.order31, 6u);
  EXPECT_EQ(g.omega_threshold, 29u * 2887680u + 1);
  EXPECT_TRUE(g.order31_power_sets_identical);
  EXPECT_TRUE(g.order21_power_sets_identical);
  for (const auto& c : g.classes) {
    EXPECT_TRUE(c.order_reverified);
    if (c.order == 31) {
      EXPECT_TRUE(c.singleton_contradiction);
    }
    if (c.order == 21) {
      EXPECT_EQ(c.compatible_found, 0u);
    }
  }
  EXPECT_TRUE(g.certified);
}
