#pragma once

// Solvability deciders for N_{omega,d}, the Swirl network and combination
// networks: closed-form criteria, the two matrix-condition checkers, the
// transform between them, and exhaustive oracles.

#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "budget.hpp"
#include "code.hpp"
#include "gl.hpp"
#include "network.hpp"
#include "numtheory.hpp"
#include "phi.hpp"

namespace lnc {

enum class Flavor { lemma1, lemma2 };

/// Matrix tuples of the two conditions.  lemma1: a[j][k] = A_{(j+1)(k+1)}.
/// lemma2: b[j] = B_{j+1}, j = 0..omega.
struct ConditionTuple {
  Flavor flavor = Flavor::lemma1;
  Field field;
  unsigned L = 1;
  std::vector<std::vector<MatF>> a;
  std::vector<MatF> b;

  std::size_t omega() const { return flavor == Flavor::lemma1 ? a.size() : (b.empty() ? 0 : b.size() - 1); }
  std::vector<u64> d() const {
    std::vector<u64> out;
    if (flavor == Flavor::lemma1)
      for (const auto& layer : a) out.push_back(layer.size());
    else
      out.assign(omega(), 2);
    return out;
  }
};

struct SolvVerdict {
  bool solvable = false;
  std::string method;  // "formula", "condition-check", "brute-force"
  std::optional<u64> witness_divisor;
  std::optional<ConditionTuple> witness_tuple;
  std::vector<MatF> witness_family;
  std::string detail;
};

inline void check_prime_power(u64 q) {
  u64 p;
  unsigned k;
  if (!prime_power(q, p, k)) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
}

/// Right-hand side of the divisor inequality,
/// d (ceil(d_1/d) + ... + ceil(d_w/d) - w + 1) + 2, for degrees given as
/// (value, multiplicity) groups.
inline mpz_class eq3_rhs(const mpz_class& d, const std::vector<std::pair<mpz_class, u64>>& groups) {
  mpz_class sum = 0, omega = 0;
  for (const auto& [value, mult] : groups) {
    sum += ceil_div(value, d) * mpz_class(std::to_string(mult));
    omega += mpz_class(std::to_string(mult));
  }
  return d * (sum - omega + 1) + 2;
}

inline std::vector<std::pair<mpz_class, u64>> degree_groups(const std::vector<u64>& d) {
  std::vector<std::pair<mpz_class, u64>> g;
  for (u64 x : d) g.emplace_back(mpz_class(std::to_string(x)), 1);
  return g;
}

inline void check_n_omega_d_params(std::size_t omega, const std::vector<u64>& d) {
  if (omega < 3) throw std::invalid_argument("omega must be at least 3");
  if (d.size() != omega) throw std::invalid_argument("d must have omega entries");
  for (u64 x : d)
    if (x < 2) throw std::invalid_argument("each d_j must exceed 1");
}

/// Scalar solvability of N_{omega,d} over GF(q): some divisor d of q-1 with
/// q >= d (sum ceil(d_j/d) - omega + 1) + 2.  The witness is the smallest such d.
inline SolvVerdict theorem1_scalar(std::size_t omega, const std::vector<u64>& d, u64 q) {
  check_n_omega_d_params(omega, d);
  check_prime_power(q);
  SolvVerdict v;
  v.method = "formula";
  const auto groups = degree_groups(d);
  const mpz_class qq(std::to_string(q));
  for (u64 div : divisors(q - 1)) {
    if (qq >= eq3_rhs(mpz_class(std::to_string(div)), groups)) {
      v.solvable = true;
      v.witness_divisor = div;
      v.detail = "divisor " + std::to_string(div) + " of q-1 satisfies the inequality";
      return v;
    }
  }
  v.detail = "no divisor of q-1 satisfies the inequality";
  return v;
}

/// Swirl network: scalar solvable over GF(q) iff q > omega + 2 or q - 1 is
/// composite.  q = 2 is unsolvable for every omega: q - 1 = 1 is not prime,
/// but its only divisor d = 1 needs q >= omega + 3.
inline SolvVerdict corollary1_swirl(std::size_t omega, u64 q) {
  if (omega < 3) throw std::invalid_argument("omega must be at least 3");
  check_prime_power(q);
  SolvVerdict v;
  v.method = "formula";
  const bool big = q > omega + 2;
  const bool composite = q > 2 && !is_prime_u64(q - 1);
  v.solvable = big || composite;
  v.detail = big ? "q > omega + 2" : composite ? "q - 1 is composite" : q == 2 ? "q = 2 <= omega + 2" : "q <= omega + 2 and q - 1 is prime";
  return v;
}

/// (n+1,2)-combination network over GF(q)^L: solvable iff q^L >= n.  For
/// prime q the witness is A_i = Phi(gamma^{i-1}), i = 1..n-1, from GF(q^L).
inline SolvVerdict combination_solvable(u64 n, u64 q, unsigned L) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (L == 0) throw std::invalid_argument("L must be positive");
  check_prime_power(q);
  SolvVerdict v;
  v.method = "formula";
  const double logsize = double(L) * std::log2(double(q));
  v.solvable = logsize >= 64 || ipow(q, L) >= n;
  if (!v.solvable) {
    v.detail = "q^L < n: a distance-L rank-metric code has at most q^L codewords";
    return v;
  }
  v.detail = "q^L >= n";
  if (is_prime_u64(q) && logsize <= 16) {
    const Field ext = make_field(q, L);
    for (u64 i = 0; i + 1 < n; ++i) v.witness_family.push_back(phi_lift(ext, ext->gen_pow(i)));
  }
  return v;
}

struct LemmaVerdict {
  bool holds = true;
  std::string violated;  // empty when holds
  u64 products_checked = 0;
};

namespace detail {

inline std::string index_list(const std::vector<std::size_t>& ks) {
  std::string s;
  for (std::size_t i = 0; i < ks.size(); ++i) s += (i ? "," : "") + std::to_string(ks[i] + 1);
  return s;
}

/// Scan all products M_w ... M_1 with M_j drawn from choices[j], calling
/// bad(P) on each; returns the first violating index tuple in lexicographic
/// order of (k_1, ..., k_w).  Work is split over k_1 between threads.
template <class Bad>
std::optional<std::vector<std::size_t>> scan_products(const std::vector<std::vector<MatF>>& choices, const Bad& bad,
                                                       unsigned threads, std::atomic<u64>& counter) {
  const std::size_t w = choices.size();
  const std::size_t first = choices[0].size();
  threads = std::max<unsigned>(1, std::min<unsigned>(threads, static_cast<unsigned>(first)));
  std::vector<std::optional<std::vector<std::size_t>>> found(threads);
  std::atomic<unsigned> best{threads};
  auto work = [&](unsigned t) {
    const std::size_t lo = first * t / threads, hi = first * (t + 1) / threads;
    std::vector<std::size_t> ks(w, 0);
    std::vector<MatF> prefix(w);
    u64 local = 0;
    std::function<bool(std::size_t)> dfs = [&](std::size_t j) -> bool {
      const std::size_t begin = j == 0 ? lo : 0, end = j == 0 ? hi : choices[j].size();
      for (std::size_t k = begin; k < end; ++k) {
        if (best.load(std::memory_order_relaxed) < t) return false;
        ks[j] = k;
        prefix[j] = j == 0 ? choices[0][k] : choices[j][k] * prefix[j - 1];
        if (j + 1 == w) {
          ++local;
          if (bad(prefix[j])) {
            found[t] = ks;
            unsigned cur = best.load();
            while (t < cur && !best.compare_exchange_weak(cur, t)) {
            }
            return false;
          }
        } else if (!dfs(j + 1)) {
          return false;
        }
      }
      return true;
    };
    dfs(0);
    counter += local;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (unsigned t = 0; t < threads; ++t)
    if (found[t]) return found[t];
  return std::nullopt;
}

}  // namespace detail

/// (-1)^{omega-1} as an element of the tuple's field.
inline u64 lemma1_sign(const Field& f, std::size_t omega) { return (omega - 1) % 2 ? f->neg(1) : 1; }

/// Layer conditions: all A_{jk} invertible, rank(A_{jk1} - A_{jk2}) = L within each
/// layer, and rank(I + (-1)^{omega-1} M_omega ... M_1) = L for every choice.
inline LemmaVerdict lemma1_check(const ConditionTuple& t, const Budget& budget = {}, unsigned threads = 1) {
  if (t.flavor != Flavor::lemma1) throw std::invalid_argument("lemma1_check needs a lemma1 tuple");
  LemmaVerdict v;
  const std::size_t w = t.omega();
  if (w == 0) throw std::invalid_argument("empty tuple");
  u128 products = 1;
  for (const auto& layer : t.a) {
    if (layer.empty()) throw std::invalid_argument("empty layer");
    products *= layer.size();
    if (products > budget.lemma1_products)
      throw BudgetExceeded("layer-condition product scan exceeds the cap of " + std::to_string(budget.lemma1_products));
  }
  for (std::size_t j = 0; j < w; ++j)
    for (std::size_t k = 0; k < t.a[j].size(); ++k)
      if (!t.a[j][k].invertible()) {
        v.holds = false;
        v.violated = "A_" + std::to_string(j + 1) + "," + std::to_string(k + 1) + " is singular";
        return v;
      }
  for (std::size_t j = 0; j < w; ++j)
    for (std::size_t k1 = 0; k1 < t.a[j].size(); ++k1)
      for (std::size_t k2 = k1 + 1; k2 < t.a[j].size(); ++k2)
        if ((t.a[j][k1] - t.a[j][k2]).rank() != t.L) {
          v.holds = false;
          v.violated = "rank(A_" + std::to_string(j + 1) + "," + std::to_string(k1 + 1) + " - A_" + std::to_string(j + 1) +
                       "," + std::to_string(k2 + 1) + ") < L";
          return v;
        }
  const u64 s = lemma1_sign(t.field, w);
  const MatF id = MatF::identity(t.field, t.L);
  std::atomic<u64> counter{0};
  auto bad = [&](const MatF& p) { return (id + p.scaled(s)).rank() != t.L; };
  auto hit = detail::scan_products(t.a, bad, threads, counter);
  v.products_checked = counter;
  if (hit) {
    v.holds = false;
    v.violated = "rank(I + (-1)^(omega-1) M_omega...M_1) < L at choice (" + detail::index_list(*hit) + ")";
  }
  return v;
}

/// Swirl conditions: B_1..B_{omega+1} invertible, rank(I - B_j) = L for
/// j <= omega, and rank(B_{omega+1} + M_omega ... M_1) = L for M_j in {I, B_j}.
inline LemmaVerdict lemma2_check(const ConditionTuple& t, const Budget& budget = {}, unsigned threads = 1) {
  if (t.flavor != Flavor::lemma2) throw std::invalid_argument("lemma2_check needs a lemma2 tuple");
  LemmaVerdict v;
  const std::size_t w = t.omega();
  if (w == 0) throw std::invalid_argument("empty tuple");
  if (w >= 64 || (u64{1} << w) > budget.lemma2_products)
    throw BudgetExceeded("Swirl-condition product scan exceeds the cap of " + std::to_string(budget.lemma2_products));
  for (std::size_t j = 0; j <= w; ++j)
    if (!t.b[j].invertible()) {
      v.holds = false;
      v.violated = "B_" + std::to_string(j + 1) + " is singular";
      return v;
    }
  const MatF id = MatF::identity(t.field, t.L);
  for (std::size_t j = 0; j < w; ++j)
    if ((id - t.b[j]).rank() != t.L) {
      v.holds = false;
      v.violated = "rank(I - B_" + std::to_string(j + 1) + ") < L";
      return v;
    }
  std::vector<std::vector<MatF>> choices;
  for (std::size_t j = 0; j < w; ++j) choices.push_back({id, t.b[j]});
  std::atomic<u64> counter{0};
  auto bad = [&](const MatF& p) { return (t.b[w] + p).rank() != t.L; };
  auto hit = detail::scan_products(choices, bad, threads, counter);
  v.products_checked = counter;
  if (hit) {
    v.holds = false;
    std::string which;
    for (std::size_t j = 0; j < w; ++j) which += (*hit)[j] ? "B" : "I";
    v.violated = "rank(B_omega+1 + M_omega...M_1) < L with M = " + which + " (M_1 first)";
  }
  return v;
}

/// Swirl A-tuple (d = (2,...,2)) to the B-tuple of the second condition set:
/// B_j = P_j^{-1} A_{j2} P_{j-1} with P_j = A_{j1} ... A_{11}, and
/// B_{omega+1} = (-1)^{omega-1} P_omega^{-1}.
inline ConditionTuple transform_a_to_b(const ConditionTuple& t) {
  if (t.flavor != Flavor::lemma1) throw std::invalid_argument("transform_a_to_b needs a lemma1 tuple");
  const std::size_t w = t.omega();
  for (const auto& layer : t.a)
    if (layer.size() != 2) throw std::invalid_argument("transform needs d = (2,...,2)");
  ConditionTuple out{Flavor::lemma2, t.field, t.L, {}, {}};
  MatF prev = MatF::identity(t.field, t.L);
  for (std::size_t j = 0; j < w; ++j) {
    const MatF cur = t.a[j][0] * prev;
    out.b.push_back(cur.inverse() * t.a[j][1] * prev);
    prev = cur;
  }
  out.b.push_back(prev.inverse().scaled(lemma1_sign(t.field, w)));
  return out;
}

/// Canonical inverse: A_{11} = ... = A_{(omega-1)1} = I,
/// A_{omega 1} = (-1)^{omega-1} B_{omega+1}^{-1}, A_{j2} = P_j B_j P_{j-1}^{-1}.
inline ConditionTuple transform_b_to_a(const ConditionTuple& t) {
  if (t.flavor != Flavor::lemma2) throw std::invalid_argument("transform_b_to_a needs a lemma2 tuple");
  const std::size_t w = t.omega();
  ConditionTuple out{Flavor::lemma1, t.field, t.L, {}, {}};
  const MatF id = MatF::identity(t.field, t.L);
  MatF prev = id;
  for (std::size_t j = 0; j < w; ++j) {
    const MatF a1 = j + 1 < w ? id : t.b[w].inverse().scaled(lemma1_sign(t.field, w));
    const MatF cur = a1 * prev;
    out.a.push_back({a1, cur * t.b[j] * prev.inverse()});
    prev = cur;
  }
  return out;
}

/// The canonical code on an N_{omega,d} instance: identity kernels everywhere
/// except A_{jk} on (u_{j+1} -> v_j, e_{jk}), which places I in block row j
/// and A_{jk} in block row j+1 (cyclically) of F_{e_{jk}}.
inline CodeAssignment lemma1_to_code(const ConditionTuple& t, std::shared_ptr<const Network> net) {
  if (t.flavor != Flavor::lemma1) throw std::invalid_argument("lemma1_to_code needs a lemma1 tuple");
  const NOmegaDLayout lay = n_omega_d_layout(*net);
  const std::size_t w = lay.omega;
  if (t.omega() != w) throw std::invalid_argument("tuple and network disagree on omega");
  for (std::size_t j = 0; j < w; ++j)
    if (t.a[j].size() != lay.d[j]) throw std::invalid_argument("tuple and network disagree on d");
  CodeAssignment code(net, t.field, t.L);
  const MatF id = MatF::identity(t.field, t.L);
  for (std::size_t j = 0; j < w; ++j) {
    code.set(lay.source_edges[j], lay.own_edges[j], id);
    code.set(lay.source_edges[(j + 1) % w], lay.next_edges[j], id);
  }
  for (std::size_t j = 0; j < w; ++j)
    for (std::size_t k = 0; k < lay.d[j]; ++k) {
      const EdgeId e = lay.grey_edges[j][k];
      code.set(lay.own_edges[j], e, id);
      code.set(lay.next_edges[j], e, t.a[j][k]);
      for (EdgeId out : net->out_edges(lay.grey_nodes[j][k])) code.set(e, out, id);
    }
  return code;
}

namespace detail {

/// layer-condition normal form at L = 1: each layer is a set of d_j distinct nonzero
/// field elements; the product condition says (-1)^omega is never a product.
inline std::optional<ConditionTuple> search_lemma1_scalar(const std::vector<u64>& d, const Field& f,
                                                          const Budget& budget, u64& visited) {
  const u64 q = f->size();
  u128 space = 1;
  for (u64 dj : d) {
    space *= binomial(q - 1, dj);
    if (space > budget.brute_force_codes) throw BudgetExceeded("scalar normal-form search exceeds the code cap");
  }
  const std::size_t w = d.size();
  const u64 target = w % 2 ? f->neg(1) : 1;
  // subsets of GF(q)^* of size dj, as sorted lists of element codes 1..q-1
  std::vector<std::vector<std::vector<u64>>> subsets(w);
  for (std::size_t j = 0; j < w; ++j) {
    std::vector<u64> cur;
    std::function<void(u64)> gen = [&](u64 next) {
      if (cur.size() == d[j]) {
        subsets[j].push_back(cur);
        return;
      }
      for (u64 x = next; x < q; ++x) {
        cur.push_back(x);
        gen(x + 1);
        cur.pop_back();
      }
    };
    gen(1);
  }
  std::vector<std::size_t> pick(w, 0);
  std::vector<std::vector<bool>> reach(w + 1, std::vector<bool>(q, false));
  reach[0][1] = true;
  std::function<bool(std::size_t)> dfs = [&](std::size_t j) -> bool {
    for (std::size_t i = 0; i < subsets[j].size(); ++i) {
      pick[j] = i;
      std::fill(reach[j + 1].begin(), reach[j + 1].end(), false);
      for (u64 x = 1; x < q; ++x)
        if (reach[j][x])
          for (u64 a : subsets[j][i]) reach[j + 1][f->mul(a, x)] = true;
      if (j + 1 == w) {
        ++visited;
        if (!reach[w][target]) return true;
      } else if (dfs(j + 1)) {
        return true;
      }
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  ConditionTuple t{Flavor::lemma1, f, 1, {}, {}};
  for (std::size_t j = 0; j < w; ++j) {
    std::vector<MatF> layer;
    for (u64 a : subsets[j][pick[j]]) layer.push_back(MatF::scalar(f, 1, a));
    t.a.push_back(layer);
  }
  return t;
}

}  // namespace detail

/// Exhaustive scalar search over GF(q).  N_{omega,d} instances use the
/// layer-condition normal form; combination networks use one projective point per
/// middle node (scaling a middle node's kernel or its relays never changes a
/// receiver's rank); anything else enumerates every adjacent-pair kernel.
/// A found witness is always re-verified on the network itself.
inline SolvVerdict brute_force_scalar(std::shared_ptr<const Network> net, u64 q, const Budget& budget = {}) {
  check_prime_power(q);
  u64 p = 0;
  unsigned k = 0;
  prime_power(q, p, k);
  const Field f = make_field(p, k);
  SolvVerdict v;
  v.method = "brute-force";
  u64 visited = 0;
  const FamilyTag& tag = net->family();

  auto confirm = [&](const CodeAssignment& code) {
    if (!is_solution(code).solution) throw std::logic_error("brute-force witness failed network verification");
  };

  if (tag.name == "n-omega-d") {
    auto t = detail::search_lemma1_scalar(tag.d, f, budget, visited);
    v.solvable = t.has_value();
    if (t) {
      confirm(lemma1_to_code(*t, net));
      v.witness_tuple = t;
    }
    v.detail = "normal-form configurations visited: " + std::to_string(visited);
    return v;
  }

  if (tag.name == "combination") {
    const u64 middles = tag.n_plus_1;
    // projective points: index 0 -> (0,1), index x+1 -> (1,x)
    auto point = [&](u64 i) { return i == 0 ? std::pair<u64, u64>{0, 1} : std::pair<u64, u64>{1, i - 1}; };
    if (std::pow(double(q + 1), double(middles)) > double(budget.brute_force_codes))
      throw BudgetExceeded("projective search exceeds the code cap");
    std::vector<u64> pick(middles, 0);
    std::function<bool(u64)> dfs = [&](u64 i) -> bool {
      if (i == middles) return true;
      for (u64 x = 0; x <= q; ++x) {
        ++visited;
        bool ok = true;
        for (u64 j = 0; j < i && ok; ++j) ok = pick[j] != x;  // distinct points are independent
        if (!ok) continue;
        pick[i] = x;
        if (dfs(i + 1)) return true;
      }
      return false;
    };
    v.solvable = dfs(0);
    if (v.solvable) {
      CodeAssignment code(net, f, 1);
      const NodeId hub = net->edge(0).head;
      const auto& src = net->out_edges(net->source());
      for (std::size_t i = 0; i < middles; ++i) {
        const EdgeId e = net->out_edges(hub)[i];
        const auto [a, b] = point(pick[i]);
        code.set_scalar(src[0], e, a);
        code.set_scalar(src[1], e, b);
        for (EdgeId out : net->out_edges(net->edge(e).head)) code.set_scalar(e, out, 1);
      }
      confirm(code);
      v.witness_tuple.reset();
      v.detail = "projective assignment found";
    } else {
      v.detail = "fewer than n+1 projective points over GF(q)";
    }
    return v;
  }

  // Generic: every adjacent pair gets a kernel in GF(q).
  std::vector<std::pair<EdgeId, EdgeId>> pairs;
  for (const Edge& e : net->edges())
    for (EdgeId out : net->out_edges(e.head)) pairs.emplace_back(e.id, out);
  if (double(pairs.size()) * std::log2(double(q)) > std::log2(double(budget.brute_force_codes)))
    throw BudgetExceeded("generic kernel search exceeds the code cap");
  std::vector<u64> vals(pairs.size(), 0);
  while (true) {
    ++visited;
    CodeAssignment code(net, f, 1);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (vals[i]) code.set_scalar(pairs[i].first, pairs[i].second, vals[i]);
    if (is_solution(code).solution) {
      v.solvable = true;
      v.detail = "kernel assignments visited: " + std::to_string(visited);
      return v;
    }
    std::size_t i = 0;
    while (i < vals.size() && ++vals[i] == q) vals[i++] = 0;
    if (i == vals.size()) break;
  }
  v.detail = "kernel assignments visited: " + std::to_string(visited);
  return v;
}

/// Vector code on an (n+1,2)-combination network from invertible A_1..A_{n-1}
/// with pairwise full-rank differences: the middle nodes carry the global
/// kernels [0; I], [I; 0], [I; A_1], ..., [I; A_{n-1}] and relay them.
inline CodeAssignment combination_code_from_family(std::shared_ptr<const Network> net, const std::vector<MatF>& family) {
  const FamilyTag& tag = net->family();
  if (tag.name != "combination") throw std::invalid_argument("network is not a combination network");
  if (family.size() + 2 != tag.n_plus_1) throw std::invalid_argument("family size must be n - 1");
  if (family.empty()) throw std::invalid_argument("family must be non-empty");
  const Field f = family[0].field();
  const unsigned L = static_cast<unsigned>(family[0].rows());
  CodeAssignment code(net, f, L);
  const MatF id = MatF::identity(f, L);
  const auto& src = net->out_edges(net->source());
  const NodeId hub = net->edge(src[0]).head;
  for (std::size_t i = 0; i < tag.n_plus_1; ++i) {
    const EdgeId e = net->out_edges(hub)[i];
    if (i == 0) {
      code.set(src[1], e, id);
    } else {
      code.set(src[0], e, id);
      if (i >= 2) code.set(src[1], e, family[i - 2]);
    }
    for (EdgeId out : net->out_edges(net->edge(e).head)) code.set(e, out, id);
  }
  return code;
}

/// Scalar layer-condition tuple over GF(q) from a divisor dd of q-1 with every
/// d_j <= dd: layers 1..omega-1 take distinct elements of the order-dd
/// subgroup H, layer omega takes distinct elements of a coset cH that avoids
/// (-1)^omega.  Every full product then lies in cH.
inline ConditionTuple coset_witness(std::size_t omega, const std::vector<u64>& d, u64 q, u64 dd) {
  check_n_omega_d_params(omega, d);
  u64 p;
  unsigned k;
  if (!prime_power(q, p, k)) throw std::invalid_argument("q must be a prime power");
  if (dd == 0 || (q - 1) % dd != 0 || dd == q - 1) throw std::invalid_argument("dd must be a proper divisor of q-1");
  for (u64 x : d)
    if (x > dd) throw std::invalid_argument("coset witness needs every d_j <= dd");
  const Field f = make_field(p, k);
  const u64 step = (q - 1) / dd;  // H = <g^step>
  const u64 target = omega % 2 ? f->neg(1) : 1;
  const u64 target_log = f->log(target);
  u64 shift = 1;
  while (shift % step == target_log % step) ++shift;  // cH with c = g^shift avoids the target
  ConditionTuple t{Flavor::lemma1, f, 1, {}, {}};
  for (std::size_t j = 0; j < omega; ++j) {
    std::vector<MatF> layer;
    for (u64 i = 0; i < d[j]; ++i) {
      const u64 e = i * step + (j + 1 == omega ? shift : 0);
      layer.push_back(MatF::scalar(f, 1, f->gen_pow(e)));
    }
    t.a.push_back(layer);
  }
  return t;
}

/// Dispatch of the scalar criterion by network family.
inline SolvVerdict scalar_by_family(const Network& net, u64 q) {
  const FamilyTag& tag = net.family();
  if (tag.name == "n-omega-d") return theorem1_scalar(tag.d.size(), tag.d, q);
  if (tag.name == "combination") return combination_solvable(tag.n_plus_1 - 1, q, 1);
  throw std::invalid_argument("no closed-form criterion for this network; use brute force");
}

}  // namespace lnc
