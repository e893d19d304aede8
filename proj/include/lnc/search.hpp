#pragma once

// Exhaustive searches over GF(2) matrices: Swirl B-tuples by depth-first
// prefix extension, the GL(5,2) conjugacy-pruned non-existence argument, and
// the rank-metric Singleton filter.

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "budget.hpp"
#include "gf2.hpp"
#include "gl.hpp"
#include "solvability.hpp"

namespace lnc {

struct SingletonVerdict {
  bool pass = true;
  std::size_t size_with_zero = 0;
  std::size_t min_distance = 0;  // 0 when fewer than two codewords
  u64 bound = 0;                 // p^L
};

/// Fails when the set together with 0 is a rank-metric code of distance L
/// with more than p^L codewords.
inline SingletonVerdict singleton_filter(const std::vector<MatF>& set, unsigned L, u64 p) {
  SingletonVerdict v;
  v.bound = ipow(p, L);
  if (set.empty()) return v;
  std::vector<MatF> code{MatF(set[0].field(), L, L)};
  for (const MatF& m : set)
    if (std::find(code.begin(), code.end(), m) == code.end()) code.push_back(m);
  v.size_with_zero = code.size();
  v.min_distance = code.size() < 2 ? 0 : rank_distance_spectrum(code);
  v.pass = !(v.min_distance == L && v.size_with_zero > v.bound);
  return v;
}

struct SwirlSearchConfig {
  unsigned omega = 3;
  unsigned L = 3;
  unsigned threads = 1;
  bool stop_at_first = false;
  std::size_t max_witnesses = SIZE_MAX;
  std::string state_path;  // checkpoint file; empty disables
  Budget budget;
};

struct SearchOutcome {
  bool found = false;
  bool exhausted = false;
  u64 solutions = 0;
  std::vector<ConditionTuple> witnesses;
  u64 pool_size = 0;
  u64 partitions_total = 0, partitions_done = 0;
  u64 nodes = 0;
  bool resumed = false;
};

namespace detail {

inline unsigned compact_key(const Gf2Mat& m) {
  unsigned k = 0;
  for (unsigned r = 0; r < m.dim(); ++r) k |= unsigned(m.row(r)) << (r * m.dim());
  return k;
}

struct PartitionResult {
  bool done = false;
  u64 solutions = 0, nodes = 0;
  std::vector<std::vector<std::uint16_t>> tuples;  // pool indices (B_1..B_omega, B_{omega+1})
};

inline std::string state_header(const SwirlSearchConfig& c) {
  return "swirl omega=" + std::to_string(c.omega) + " L=" + std::to_string(c.L) + " p=2";
}

}  // namespace detail

/// All (B_1, ..., B_omega, B_{omega+1}) over GF(2) of size L satisfying the
/// Swirl conditions.  Every B_j, including B_{omega+1} (take all M_j = I),
/// must be fixed-point-free, so the pool is the fixed-point-free list.
/// B_{omega+1} is fixed first; each new B_j extends the product set
/// S_j = S_{j-1} u B_j S_{j-1}, and a prefix dies as soon as some product P
/// has B_{omega+1} + P singular.  Partitions are (B_{omega+1}, B_1) pairs;
/// the state file records the completed prefix of partitions.
inline SearchOutcome swirl_search(const SwirlSearchConfig& cfg) {
  if (cfg.omega < 1) throw std::invalid_argument("omega must be positive");
  if (cfg.L < 1 || cfg.L > 4) throw std::invalid_argument("Swirl search supports 1 <= L <= 4 over GF(2)");
  const unsigned L = cfg.L, keys = 1u << (L * L);
  std::vector<Gf2Mat> pool;
  for_each_gl2(L, [&](const Gf2Mat& m) {
    if (is_fixed_point_free(m)) pool.push_back(m);
    return true;
  });
  SearchOutcome out;
  out.pool_size = pool.size();
  const u64 parts = u64(pool.size()) * pool.size();
  out.partitions_total = parts;
  std::vector<detail::PartitionResult> results(parts);

  std::size_t start = 0;
  if (!cfg.state_path.empty()) {
    std::ifstream in(cfg.state_path);
    if (in) {
      nlohmann::json st;
      try {
        in >> st;
      } catch (const std::exception&) {
        throw std::invalid_argument("unreadable search state file");
      }
      if (st.value("task", "") != detail::state_header(cfg)) throw std::invalid_argument("state file belongs to a different search");
      start = st.at("partitions_done").get<std::size_t>();
      if (start > parts) throw std::invalid_argument("state file is inconsistent");
      if (start > 0) {
        results[0].done = true;
        results[0].solutions = st.at("solutions").get<u64>();
        results[0].nodes = st.at("nodes").get<u64>();
        results[0].tuples = st.at("tuples").get<std::vector<std::vector<std::uint16_t>>>();
        for (std::size_t i = 1; i < start; ++i) results[i].done = true;
        out.resumed = true;
      }
    }
  }

  std::mutex mu;
  std::atomic<std::size_t> next{start};
  std::atomic<bool> stop{false};
  const Deadline deadline(cfg.budget.phase_ms);
  std::atomic<bool> timed_out{false};

  auto watermark = [&] {
    std::size_t w = 0;
    while (w < parts && results[w].done) ++w;
    return w;
  };
  auto save = [&] {
    if (cfg.state_path.empty()) return;
    const std::size_t w = watermark();
    nlohmann::json st;
    st["task"] = detail::state_header(cfg);
    st["partitions_done"] = w;
    u64 sols = 0, nodes = 0;
    std::vector<std::vector<std::uint16_t>> tuples;
    for (std::size_t i = 0; i < w; ++i) {
      sols += results[i].solutions;
      nodes += results[i].nodes;
      tuples.insert(tuples.end(), results[i].tuples.begin(), results[i].tuples.end());
    }
    st["solutions"] = sols;
    st["nodes"] = nodes;
    st["tuples"] = tuples;
    const std::string tmp = cfg.state_path + ".tmp";
    {
      std::ofstream f(tmp);
      f << st.dump() << "\n";
    }
    std::rename(tmp.c_str(), cfg.state_path.c_str());
  };

  auto worker = [&] {
    std::vector<std::uint8_t> bad(keys);
    std::vector<std::vector<std::uint8_t>> seen(cfg.omega + 1, std::vector<std::uint8_t>(keys));
    std::vector<std::vector<Gf2Mat>> prods(cfg.omega + 1);
    std::vector<std::uint16_t> idx(cfg.omega + 1);
    while (!stop) {
      const std::size_t part = next++;
      if (part >= parts) break;
      const std::size_t c = part / pool.size(), b1 = part % pool.size();
      detail::PartitionResult res;
      const Gf2Mat C = pool[c];
      for (unsigned k = 0; k < keys; ++k) {
        Gf2Mat m(L, 0);
        for (unsigned r = 0; r < L; ++r) m.set_row(r, static_cast<std::uint8_t>((k >> (r * L)) & ((1u << L) - 1)));
        bad[k] = !(C + m).full_rank();
      }
      idx[cfg.omega] = static_cast<std::uint16_t>(c);
      bool aborted = false;
      // extend S_{j} with B = pool[i]; false if some new product is bad
      auto extend = [&](unsigned j, const Gf2Mat& b) {
        auto& cur = prods[j + 1];
        auto& mark = seen[j + 1];
        for (const Gf2Mat& m : cur) mark[detail::compact_key(m)] = 0;
        cur = prods[j];
        for (const Gf2Mat& m : cur) mark[detail::compact_key(m)] = 1;
        for (const Gf2Mat& m : prods[j]) {
          const Gf2Mat nm = b * m;
          const unsigned k = detail::compact_key(nm);
          if (bad[k]) return false;
          if (!mark[k]) {
            mark[k] = 1;
            cur.push_back(nm);
          }
        }
        return true;
      };
      for (auto& s : seen) std::fill(s.begin(), s.end(), 0);
      for (auto& pr : prods) pr.clear();
      prods[0].assign(1, Gf2Mat::identity(L));
      if (bad[detail::compact_key(Gf2Mat::identity(L))]) {
        res.done = true;
      } else {
        std::function<void(unsigned)> dfs = [&](unsigned j) {
          if (aborted) return;
          if (j == cfg.omega) {
            ++res.solutions;
            if (res.tuples.size() < cfg.max_witnesses) res.tuples.push_back(idx);
            if (cfg.stop_at_first) stop = true;
            return;
          }
          const std::size_t lo = j == 0 ? b1 : 0, hi = j == 0 ? b1 + 1 : pool.size();
          for (std::size_t i = lo; i < hi && !aborted; ++i) {
            if ((++res.nodes & 0xFFF) == 0 && deadline.expired()) {
              timed_out = true;
              aborted = true;
              return;
            }
            if (!extend(j, pool[i])) continue;
            idx[j] = static_cast<std::uint16_t>(i);
            dfs(j + 1);
            if (stop && cfg.stop_at_first) return;
          }
        };
        dfs(0);
        res.done = !aborted;
      }
      if (timed_out) stop = true;
      std::lock_guard<std::mutex> lock(mu);
      if (res.done) {
        results[part] = std::move(res);
        save();
      }
    }
  };
  const unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool_threads;
    for (unsigned t = 0; t < threads; ++t) pool_threads.emplace_back(worker);
    for (auto& th : pool_threads) th.join();
  }

  std::vector<std::vector<std::uint16_t>> tuples;
  u64 done = 0;
  for (const auto& r : results) {
    if (!r.done) continue;
    ++done;
    out.solutions += r.solutions;
    out.nodes += r.nodes;
    tuples.insert(tuples.end(), r.tuples.begin(), r.tuples.end());
  }
  out.partitions_done = done;
  out.found = out.solutions > 0;
  out.exhausted = done == parts;
  if (timed_out && !out.exhausted) throw BudgetExceeded("search phase exceeded its time budget");
  std::sort(tuples.begin(), tuples.end());
  const Field f2 = prime_field(2);
  for (const auto& t : tuples) {
    if (out.witnesses.size() >= cfg.max_witnesses) break;
    ConditionTuple ct{Flavor::lemma2, f2, L, {}, {}};
    for (auto i : t) ct.b.push_back(pool[i].to_matf());
    out.witnesses.push_back(std::move(ct));
  }
  return out;
}

/// Every tuple (B_1, ..., B_omega, B_{omega+1}) for a short prefix omega.
inline SearchOutcome swirl_prefix_search(unsigned omega_prefix, unsigned L, unsigned threads = 1, const Budget& budget = {}) {
  SwirlSearchConfig cfg;
  cfg.omega = omega_prefix;
  cfg.L = L;
  cfg.threads = threads;
  cfg.budget = budget;
  return swirl_search(cfg);
}

/// Existence query for the full omega; stops at the first witness.
inline SearchOutcome swirl_full_search(unsigned omega, unsigned L, unsigned threads = 1, const Budget& budget = {},
                                       const std::string& state_path = {}) {
  SwirlSearchConfig cfg;
  cfg.omega = omega;
  cfg.L = L;
  cfg.threads = threads;
  cfg.budget = budget;
  cfg.stop_at_first = true;
  cfg.max_witnesses = 1;
  cfg.state_path = state_path;
  return swirl_search(cfg);
}

// ---------------------------------------------------------------------------

struct Gl5ClassCheck {
  MatF rep;
  u64 size = 0;
  u64 order = 0;
  bool order_reverified = false;  // B^order = I and B^(order/r) != I for primes r | order
  // order-31 branch
  std::size_t power_pairs_checked = 0;
  bool powers_pairwise_full_rank = false;
  bool singleton_contradiction = false;
  MatF branch_rep;  // member of the class inside the first same-order representative's cyclic group
  bool lex_power_set_matches_first = false;
  bool power_set_matches_first = false;  // powers of branch_rep
  // order-21 branch
  u64 candidates_scanned = 0;
  u64 compatible_found = 0;
};

struct Gl5Outcome {
  std::size_t fpf_classes = 0, order21 = 0, order31 = 0;
  u64 fpf_count = 0;
  std::vector<Gl5ClassCheck> classes;
  bool order31_power_sets_identical = false;  // with branch representatives
  bool order21_power_sets_identical = false;
  bool lex_power_sets_identical = false;      // with lexicographic representatives
  u64 omega_threshold = 0;
  bool certified = false;
  std::string conclusion;
};

namespace detail {

inline bool order_is_exact(const Gf2Mat& b, u64 order) {
  const Gf2Mat id = Gf2Mat::identity(b.dim());
  if (b.pow(order) != id) return false;
  for (auto [r, e] : factorize(order))
    if (b.pow(order / r) == id) return false;
  return true;
}

inline std::vector<Gf2Mat> powers(const Gf2Mat& b, u64 n) {
  std::vector<Gf2Mat> out;
  Gf2Mat cur = b;
  for (u64 j = 1; j <= n; ++j) {
    out.push_back(cur);
    cur = cur * b;
  }
  return out;
}

inline std::vector<std::uint64_t> sorted_keys(const std::vector<Gf2Mat>& ms) {
  std::vector<std::uint64_t> k;
  for (const auto& m : ms) k.push_back(m.bits());
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace detail

/// The GL(5,2) argument: classify the fixed-point-free classes; for order 31
/// the powers B, ..., B^31 with 0 already meet the Singleton bound, so no
/// B_{omega+1} can sit at distance 5 from all of them; for order 21 scan
/// every fixed-point-free B' for rank(B' - B^j) = 5, j = 1..21.  The omega
/// threshold is the pigeonhole bound 29 N + 1 (N fixed-point-free matrices):
/// some B_j then repeats 30 times, so B_j, ..., B_j^30 and I = B_j^0 are all
/// products, covering every power of an element of order 21 or 31.
/// Each class of a given order is represented in the branches by a member of
/// the cyclic group generated by the first representative of that order, when
/// one exists; the power sets then coincide.
inline Gl5Outcome gl5_prune(unsigned threads = 1, const Budget& budget = {}) {
  Gl5Outcome out;
  const auto classes = conjugacy_classify(5, 2, true, threads, budget);
  out.fpf_classes = classes.size();
  std::vector<Gf2Mat> fpf;
  fpf.reserve(3'000'000);
  for_each_gl2(5, [&](const Gf2Mat& m) {
    if (is_fixed_point_free(m)) fpf.push_back(m);
    return true;
  });
  out.fpf_count = fpf.size();
  std::map<u64, Gf2Mat> first_rep;
  std::map<u64, std::vector<std::uint64_t>> first_keys;
  SimilarityClassifier cls(5, 2);
  auto type_key = [&](const Gf2Mat& m) { return cls.classify(m, charpoly(m)).key(); };
  out.order21_power_sets_identical = out.order31_power_sets_identical = out.lex_power_sets_identical = true;
  bool all_ok = true;
  for (const auto& info : classes) {
    Gl5ClassCheck c;
    c.rep = info.rep;
    c.size = info.size;
    c.order = info.order;
    const Gf2Mat lex = Gf2Mat::from_matf(info.rep);
    c.order_reverified = detail::order_is_exact(lex, info.order);
    if (!first_rep.count(info.order)) {
      first_rep[info.order] = lex;
      first_keys[info.order] = detail::sorted_keys(detail::powers(lex, info.order));
    }
    c.lex_power_set_matches_first = detail::sorted_keys(detail::powers(lex, info.order)) == first_keys[info.order];
    out.lex_power_sets_identical = out.lex_power_sets_identical && c.lex_power_set_matches_first;
    Gf2Mat b = lex;
    if (!c.lex_power_set_matches_first) {
      const std::string want = type_key(lex);
      const Gf2Mat r = first_rep[info.order];
      for (u64 k = 2; k < info.order; ++k)
        if (std::gcd(k, info.order) == 1 && type_key(r.pow(k)) == want) {
          b = r.pow(k);
          break;
        }
    }
    c.branch_rep = b.to_matf();
    const auto pw = detail::powers(b, info.order);
    const auto keys = detail::sorted_keys(pw);
    c.power_set_matches_first = keys == first_keys[info.order];
    if (info.order == 31) {
      ++out.order31;
      out.order31_power_sets_identical = out.order31_power_sets_identical && c.power_set_matches_first;
      c.powers_pairwise_full_rank = true;
      for (std::size_t i = 0; i < pw.size(); ++i)
        for (std::size_t j = i + 1; j < pw.size(); ++j) {
          ++c.power_pairs_checked;
          if ((pw[i] + pw[j]).rank() != 5) c.powers_pairwise_full_rank = false;
        }
      std::vector<MatF> code;
      for (const auto& m : pw) code.push_back(m.to_matf());
      const SingletonVerdict sv = singleton_filter(code, 5, 2);
      // 0 and the 31 powers already reach 32 = 2^5 codewords; one more breaks the bound
      c.singleton_contradiction = c.powers_pairwise_full_rank && sv.pass && sv.size_with_zero == sv.bound;
      all_ok = all_ok && c.order_reverified && c.singleton_contradiction;
    } else if (info.order == 21) {
      ++out.order21;
      out.order21_power_sets_identical = out.order21_power_sets_identical && c.power_set_matches_first;
      const unsigned t = std::max(1u, threads);
      std::vector<u64> found(t, 0);
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < t; ++w)
        pool.emplace_back([&, w] {
          for (std::size_t i = fpf.size() * w / t; i < fpf.size() * (w + 1) / t; ++i) {
            bool ok = true;
            for (const auto& m : pw)
              if (!(fpf[i] + m).full_rank()) {
                ok = false;
                break;
              }
            if (ok) ++found[w];
          }
        });
      for (auto& th : pool) th.join();
      c.candidates_scanned = fpf.size();
      c.compatible_found = std::accumulate(found.begin(), found.end(), u64{0});
      all_ok = all_ok && c.order_reverified && c.compatible_found == 0;
    } else {
      all_ok = false;
    }
    out.classes.push_back(std::move(c));
  }
  out.omega_threshold = 29 * out.fpf_count + 1;
  out.certified = all_ok && out.fpf_classes == 8 && out.order21 == 2 && out.order31 == 6 &&
                  out.order21_power_sets_identical;
  out.conclusion = out.certified
                       ? "no vector linear solution over GF(2)^5 for omega >= " + std::to_string(out.omega_threshold)
                       : "certificate incomplete";
  return out;
}

}  // namespace lnc
