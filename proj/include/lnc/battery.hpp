#pragma once

// The acceptance battery: one check per headline result, shared by the
// acceptance binary and `lnc report`.

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "search.hpp"
#include "solvability.hpp"

namespace lnc {

struct CriterionResult {
  int id = 0;
  std::string claim;
  bool pass = false;
  std::string detail;  // on failure, the violated invariant
  double seconds = 0;
};

struct BatteryConfig {
  unsigned threads = 1;
  u64 seed = 0;
  Budget budget;
};

namespace battery {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Collects failed invariants; the detail line is the first failure verbatim
/// or the summary when everything held.
struct Sink {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& invariant) {
    if (!ok) failures.push_back(invariant);
  }
  CriterionResult finish(int id, const std::string& claim, const std::string& summary, double seconds) const {
    CriterionResult r{id, claim, failures.empty(), summary, seconds};
    if (!failures.empty()) {
      r.detail = failures[0];
      if (failures.size() > 1) r.detail += " (+" + std::to_string(failures.size() - 1) + " more)";
    }
    return r;
  }
};

inline std::string str(u64 v) { return std::to_string(v); }

inline std::string secs(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << "s";
  return o.str();
}

inline CriterionResult group_counts(const BatteryConfig& cfg) {
  const auto t0 = Clock::now();
  Sink s;
  auto t = Clock::now();
  const u64 n3 = gl_count(3, 2, 1, cfg.budget);
  const double s3 = since(t);
  t = Clock::now();
  const u64 n5 = gl_count(5, 2, 1, cfg.budget);
  const double s5 = since(t);
  s.require(n3 == 168, "|GL(3,2)| = 168, got " + str(n3));
  s.require(n5 == 9999360, "|GL(5,2)| = 9999360, got " + str(n5));
  s.require(s3 < 1.0, "GL(3,2) enumeration under 1 s, took " + secs(s3));
  s.require(s5 < 120.0, "GL(5,2) enumeration under 2 min, took " + secs(s5));
  return s.finish(1, "GL(3,2) has 168 elements and GL(5,2) has 9999360",
                  "168 in " + secs(s3) + ", 9999360 in " + secs(s5) + " (one thread)", since(t0));
}

inline CriterionResult fpf_structure(const BatteryConfig& cfg) {
  const auto t0 = Clock::now();
  Sink s;
  const u64 fpf3 = fixed_point_free_count(3, 2, 1, cfg.budget);
  s.require(fpf3 == 48, "48 fixed-point-free matrices in GL(3,2), got " + str(fpf3));
  const auto classes = conjugacy_classify(5, 2, true, cfg.threads, cfg.budget);
  std::size_t o21 = 0, o31 = 0;
  for (const auto& c : classes) {
    o21 += c.order == 21;
    o31 += c.order == 31;
  }
  s.require(classes.size() == 8, "8 fixed-point-free classes in GL(5,2), got " + str(classes.size()));
  s.require(o21 == 2, "2 classes of order 21, got " + str(o21));
  s.require(o31 == 6, "6 classes of order 31, got " + str(o31));
  const double el = since(t0);
  s.require(el < 600, "classification under 10 min, took " + secs(el));
  return s.finish(2, "48 fpf matrices in GL(3,2); GL(5,2) fpf classes: 2 of order 21, 6 of order 31",
                  "48; " + str(classes.size()) + " classes (" + str(o21) + " x 21, " + str(o31) + " x 31)", el);
}

inline CriterionResult swirl_searches(const BatteryConfig& cfg) {
  const auto t0 = Clock::now();
  Sink s;
  const SearchOutcome pre = swirl_prefix_search(3, 3, cfg.threads, cfg.budget);
  s.require(pre.exhausted, "prefix search for omega = 3, L = 3 exhausted");
  s.require(pre.solutions == 2304, "2304 tuples B_1..B_4 for omega = 3, L = 3, got " + str(pre.solutions));
  std::size_t bad = 0;
  for (const auto& w : pre.witnesses) bad += !lemma2_check(w, cfg.budget).holds;
  s.require(bad == 0, "every prefix tuple passes lemma2_check, " + str(bad) + " failed");
  std::string summary = "2304 prefix tuples;";
  for (unsigned L = 1; L <= 3; ++L) {
    const SearchOutcome full = swirl_full_search(6, L, cfg.threads, cfg.budget);
    s.require(!full.found, "no Swirl-condition tuple for omega = 6, L = " + str(L) + ", found " + str(full.solutions));
    s.require(full.exhausted, "search for omega = 6, L = " + str(L) + " exhausted");
    summary += " omega=6 L=" + str(L) + (full.found ? " found" : " none") + (full.exhausted ? "/exhausted" : "/partial");
  }
  const double el = since(t0);
  s.require(el < 3600, "searches under 1 hour, took " + secs(el));
  return s.finish(3, "Swirl omega=3 over GF(2)^3 has 2304 tuples; omega=6 has none for L=1,2,3", summary, el);
}

inline CriterionResult gl5_nonexistence(const BatteryConfig& cfg) {
  const auto t0 = Clock::now();
  Sink s;
  const Gl5Outcome g = gl5_prune(cfg.threads, cfg.budget);
  s.require(g.order21 == 2 && g.order31 == 6, "fpf classes split 2 x order 21 and 6 x order 31");
  for (const auto& c : g.classes) {
    s.require(c.order_reverified, "element order of a class representative reverified");
    if (c.order == 31) {
      s.require(c.powers_pairwise_full_rank, "all 465 pairs of the 31 powers have rank distance 5");
      s.require(c.power_pairs_checked == 465, "465 power pairs checked, got " + str(c.power_pairs_checked));
      s.require(c.singleton_contradiction, "33 codewords at distance 5 exceed the Singleton bound 32");
    }
    if (c.order == 21) {
      s.require(c.candidates_scanned == g.fpf_count, "order-21 scan covers all fpf matrices");
      s.require(c.compatible_found == 0, "no compatible B'_{omega+1} for an order-21 class, found " + str(c.compatible_found));
    }
  }
  s.require(g.certified, "both branches certified");
  const double el = since(t0);
  s.require(el < 1800, "GL(5,2) pruning under 30 min, took " + secs(el));
  return s.finish(4, "no vector linear solution of the Swirl network over GF(2)^5 for large omega",
                  "certified, fpf " + str(g.fpf_count) + ", omega threshold " + str(g.omega_threshold), el);
}

inline CriterionResult theorem1_oracle(const BatteryConfig& cfg) {
  const auto t0 = Clock::now();
  Sink s;
  const std::vector<std::vector<u64>> ds = {{2, 2, 2}, {2, 2, 3}, {2, 3, 3}, {3, 3, 3}};
  const std::vector<u64> qs = {2, 3, 4, 5, 7, 8, 9};
  std::size_t agree = 0, n = 0, solvable = 0;
  for (const auto& d : ds) {
    auto net = std::make_shared<const Network>(gen_n_omega_d(3, d, cfg.budget));
    for (u64 q : qs) {
      ++n;
      const bool f = theorem1_scalar(3, d, q).solvable;
      const bool b = brute_force_scalar(net, q, cfg.budget).solvable;
      solvable += f;
      if (f == b) {
        ++agree;
      } else {
        s.require(false, "theorem1_scalar = brute_force_scalar for d=(" + str(d[0]) + "," + str(d[1]) + "," + str(d[2]) +
                             "), q=" + str(q) + ": formula " + (f ? "solvable" : "unsolvable"));
      }
    }
  }
  const double el = since(t0);
  s.require(n == 28, "28 combinations");
  s.require(el < 600, "oracle run under 10 min, took " + secs(el));
  return s.finish(5, "the divisor criterion matches exhaustive scalar search on N_{3,d}",
                  str(agree) + "/" + str(n) + " agree (" + str(solvable) + " solvable)", el);
}

inline CriterionResult corollary1(const BatteryConfig&) {
  const auto t0 = Clock::now();
  Sink s;
  std::size_t n = 0;
  for (std::size_t omega = 3; omega <= 12; ++omega)
    for (u64 q = 2; q <= 16; ++q) {
      u64 p;
      unsigned k;
      if (!prime_power(q, p, k)) continue;
      ++n;
      const bool c = corollary1_swirl(omega, q).solvable;
      const bool t = theorem1_scalar(omega, std::vector<u64>(omega, 2), q).solvable;
      s.require(c == t, "corollary1_swirl = theorem1_scalar at omega=" + str(omega) + ", q=" + str(q));
    }
  s.require(corollary1_swirl(6, 5).solvable, "Swirl omega=6 solvable over GF(5)");
  s.require(corollary1_swirl(6, 7).solvable, "Swirl omega=6 solvable over GF(7)");
  s.require(!corollary1_swirl(6, 4).solvable, "Swirl omega=6 unsolvable over GF(4)");
  s.require(!corollary1_swirl(6, 8).solvable, "Swirl omega=6 unsolvable over GF(8)");
  return s.finish(6, "the Swirl criterion agrees with the divisor criterion; omega=6 solvable over GF(5), GF(7), not GF(4), GF(8)",
                  str(n) + " (omega, q) pairs agree; omega=6: GF(5), GF(7) yes, GF(4), GF(8) no", since(t0));
}

inline CriterionResult combination(const BatteryConfig& cfg) {
  const auto t0 = Clock::now();
  Sink s;
  std::size_t n_checked = 0;
  for (u64 n = 2; n <= 5; ++n) {
    auto net = std::make_shared<const Network>(gen_combination(n + 1));
    for (u64 q = 2; q <= 5; ++q) {
      ++n_checked;
      const bool b = brute_force_scalar(net, q, cfg.budget).solvable;
      s.require(b == (q >= n), "(" + str(n + 1) + ",2)-combination over GF(" + str(q) + ") solvable iff q >= n");
    }
  }
  const SolvVerdict v = combination_solvable(4, 2, 2);
  s.require(v.solvable && v.witness_family.size() == 3, "MRD witness of 3 matrices for n=4, q=2, L=2");
  const auto& fam = v.witness_family;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    s.require(fam[i].rank() == 2, "witness matrix A_" + str(i + 1) + " invertible");
    for (std::size_t j = i + 1; j < fam.size(); ++j)
      s.require((fam[i] - fam[j]).rank() == 2, "rank(A_" + str(i + 1) + " - A_" + str(j + 1) + ") = 2");
  }
  if (fam.size() == 3) {
    auto net = std::make_shared<const Network>(gen_combination(5));
    s.require(is_solution(combination_code_from_family(net, fam)).solution,
              "MRD witness gives a vector solution of the (5,2)-combination network");
  }
  const double el = since(t0);
  s.require(el < 300, "combination checks under 5 min, took " + secs(el));
  return s.finish(7, "(n+1,2)-combination is scalar solvable iff q >= n; MRD witness for n=4 over GF(2)^2",
                  str(n_checked) + " (n, q) pairs match; witness pairwise rank distance 2", el);
}

inline CriterionResult lifting(const BatteryConfig& cfg) {
  const auto t0 = Clock::now();
  Sink s;
  auto net = std::make_shared<const Network>(gen_combination(4));
  const Field f = make_field(2, 2);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<u64> pick(0, 3), nonzero(1, 3);
  const auto& src = net->out_edges(net->source());
  const NodeId hub = net->edge(src[0]).head;
  std::size_t solutions = 0, mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    CodeAssignment code(net, f, 1);
    if (trial % 2 == 0) {
      for (const Edge& e : net->edges())
        for (EdgeId out : net->out_edges(e.head))
          if (const u64 x = pick(rng)) code.set_scalar(e.id, out, x);
    } else {
      // scaled projective points (0,1), (1,0), (1,x); every fourth trial repeats one
      std::vector<u64> pts = {0, 1, 2, 3, 4};
      std::shuffle(pts.begin(), pts.end(), rng);
      if (trial % 4 == 3) pts[1] = pts[0];
      for (std::size_t i = 0; i < 4; ++i) {
        const EdgeId e = net->out_edges(hub)[i];
        const u64 c = nonzero(rng);
        code.set_scalar(src[0], e, pts[i] == 0 ? 0 : c);
        code.set_scalar(src[1], e, pts[i] == 0 ? c : pts[i] == 1 ? 0 : f->mul(c, pts[i] - 1));
        for (EdgeId out : net->out_edges(net->edge(e).head)) code.set_scalar(e, out, nonzero(rng));
      }
    }
    const CodeAssignment lifted = lift_scalar(code);
    const SolutionReport rs = is_solution(code), rl = is_solution(lifted);
    bool ok = rs.solution == rl.solution;
    for (std::size_t i = 0; i < rs.receivers.size(); ++i) ok = ok && rl.receivers[i].rank == 2 * rs.receivers[i].rank;
    if (rs.solution) {
      ++solutions;
      const MatF msg = random_matrix(f, 1, 2, rng);
      const auto sm = propagate_message(code, msg);
      const auto lm = propagate_message(lifted, phi_coords(msg));
      for (std::size_t i = 0; i < rs.receivers.size(); ++i) {
        const MatF dl = phi_lift_matrix(*rs.decoders[i]);
        const MatF x = receiver_matrix(lifted, rl.global, rs.receivers[i].receiver);
        ok = ok && (x * dl).is_identity();
        std::vector<MatF> parts;
        for (EdgeId e : net->in_edges(rs.receivers[i].receiver)) parts.push_back(lm[e]);
        ok = ok && hstack(parts) * dl == phi_coords(decode_at(code, rs, i, sm));
        ok = ok && decode_at(code, rs, i, sm) == msg;
      }
    }
    if (!ok) ++mismatches;
  }
  s.require(mismatches == 0, "lifting preserves solution status, ranks and decoding, " + str(mismatches) + " of 50 codes mismatched");
  s.require(solutions > 0 && solutions < 50, "sample contains both solutions and non-solutions (" + str(solutions) + " solutions)");
  return s.finish(8, "Phi-lifting preserves solvability and Phi(D_t) decodes the lifted code",
                  "50 random GF(4) codes, " + str(solutions) + " solutions, 0 mismatches", since(t0));
}

inline CriterionResult direct_sum_solution(const BatteryConfig& cfg) {
  const auto t0 = Clock::now();
  Sink s;
  auto net = std::make_shared<const Network>(gen_swirl(6, cfg.budget));
  const std::vector<u64> d(6, 2);
  std::vector<CodeAssignment> parts;
  for (u64 dd : {3, 5}) {
    const ConditionTuple t = coset_witness(6, d, 16, dd);
    s.require(lemma1_check(t, cfg.budget).holds, "coset tuple for divisor " + str(dd) + " satisfies the layer conditions");
    parts.push_back(lemma1_to_code(t, net));
    s.require(is_solution(parts.back()).solution, "GF(16) scalar code from divisor " + str(dd) + " is a solution");
  }
  const CodeAssignment sum = direct_sum(parts);
  s.require(sum.dim() == 8 && sum.field()->size() == 2, "direct sum is a GF(2)^8 code");
  const bool sol = is_solution(sum, cfg.threads).solution;
  s.require(sol, "direct sum is a vector solution");
  DecodeOutcome dec;
  if (sol) dec = simulate_decode(sum, 100, cfg.seed);
  s.require(sol && dec.ok && dec.trials == 100, "100 decode trials without mismatch, " + str(dec.mismatches) + " mismatches");
  return s.finish(9, "two GF(16) scalar solutions of the omega=6 Swirl network give a GF(2)^8 vector solution",
                  "GF(2)^8 solution, 100/100 decode trials", since(t0));
}

inline CriterionResult prop4(const BatteryConfig& cfg) {
  const auto t0 = Clock::now();
  Sink s;
  const Prop4Params params;
  const Prop4Certificate c = prop4_certificate(params, cfg.budget);
  s.require(c.L == 19, "L = 19 at l = 3");
  s.require(c.factorization_complete, "2^19 - 1 fully factored");
  std::size_t failing = 0;
  for (const auto& r : c.rows) failing += r.fails;
  s.require(c.rows.size() == 2 && failing == 2, "the divisor inequality fails at both divisors of 2^19 - 1");
  s.require(c.holds, "divisor-inequality certificate holds");
  const Prop4Spotcheck sc = prop4_spotcheck(params, 100, 1000, cfg.seed, cfg.budget);
  std::size_t pair_ok = 0, prod_ok = 0;
  for (const auto& p : sc.pairs) pair_ok += p.rank == 19;
  for (const auto& p : sc.products) prod_ok += p.full_rank && p.e1_is_one_mod_c1 && p.e2_is_one_mod_c2;
  s.require(pair_ok == 100, "100 sampled pairs have rank 19, " + str(pair_ok) + " did");
  s.require(prod_ok == 1000, "1000 sampled products have both exponent residues nonzero, " + str(prod_ok) + " did");
  s.require(sc.products_full_rank, "multiplied-out products match their exponents");
  const LayeredFamily lf = prop4_scaled_analog(4, 3);
  const ConditionTuple t = lf.tuple();
  s.require(lemma1_check(t, cfg.budget, cfg.threads).holds, "scaled analog passes lemma1_check");
  auto net = std::make_shared<const Network>(gen_n_omega_d(4, std::vector<u64>(4, 3), cfg.budget));
  s.require(is_solution(lemma1_to_code(t, net), cfg.threads).solution, "scaled analog code is a network solution");
  return s.finish(10, "l=3: N_{omega,d} with omega >= 484 is not scalar solvable but vector solvable over GF(2)^19",
                  "both divisors fail the divisor inequality; 100/100 pairs rank 19; 1000/1000 products full rank; scaled analog solves N_{4,(3,3,3,3)}",
                  since(t0));
}

inline CriterionResult thm5(const BatteryConfig& cfg) {
  const auto t0 = Clock::now();
  Sink s;
  const Thm5Params t = thm5_params(3, 1, cfg.budget);
  for (const auto& [name, ok] : t.invariants) s.require(ok, name);
  s.require(t.d0_materialized, "d0 materialized at p = 3");
  return s.finish(11, "p=3, l=1: odd-prime family parameters satisfy every divisibility invariant",
                  str(t.invariants.size()) + " invariants hold; m = " + t.m.get_str() + ", L = " + t.L.get_str() + ", d0 has " +
                      str(decimal_digits(t.d0)) + " digits",
                  since(t0));
}

inline MatF random_invertible(const Field& f, std::size_t L, std::mt19937_64& rng) {
  while (true) {
    MatF m = random_matrix(f, L, L, rng);
    if (m.invertible()) return m;
  }
}

inline CriterionResult lemma_equivalences(const BatteryConfig& cfg) {
  const auto t0 = Clock::now();
  Sink s;
  std::mt19937_64 rng(cfg.seed);
  std::size_t code_dis = 0, code_holds = 0, tr_dis = 0, tr_holds = 0;
  auto net3 = std::make_shared<const Network>(gen_swirl(3, cfg.budget));
  auto random_tuple = [&](std::size_t omega, std::size_t L, u64 q) {
    u64 p = 0;
    unsigned k = 0;
    prime_power(q, p, k);
    ConditionTuple t{Flavor::lemma1, make_field(p, k), static_cast<unsigned>(L), {}, {}};
    for (std::size_t j = 0; j < omega; ++j) t.a.push_back({random_invertible(t.field, L, rng), random_invertible(t.field, L, rng)});
    return t;
  };
  // odd draws are resampled until the layer conditions hold (at most 500 tries) so both outcomes occur
  auto draw = [&](std::size_t omega, std::size_t L, u64 q, bool want_valid) {
    ConditionTuple t = random_tuple(omega, L, q);
    for (int tries = 0; want_valid && tries < 500 && !lemma1_check(t, cfg.budget).holds; ++tries) t = random_tuple(omega, L, q);
    return t;
  };
  const std::vector<std::pair<std::size_t, u64>> code_grid = {{1, 2}, {1, 5}, {2, 2}, {2, 5}};
  for (int i = 0; i < 200; ++i) {
    const auto [L, q] = code_grid[i % 4];
    const ConditionTuple t = draw(3, L, q, (i / 4) % 2);
    const bool a = lemma1_check(t, cfg.budget).holds;
    const bool b = is_solution(lemma1_to_code(t, net3)).solution;
    code_holds += a;
    code_dis += a != b;
  }
  struct Shape {
    std::size_t omega, L;
    u64 q;
  };
  const std::vector<Shape> tr_grid = {{3, 2, 2}, {3, 1, 5}, {4, 2, 3}, {3, 2, 5}};
  for (int i = 0; i < 200; ++i) {
    const Shape sh = tr_grid[i % 4];
    const ConditionTuple t = draw(sh.omega, sh.L, sh.q, (i / 4) % 2);
    const bool a = lemma1_check(t, cfg.budget).holds;
    const bool b = lemma2_check(transform_a_to_b(t), cfg.budget).holds;
    tr_holds += a;
    tr_dis += a != b;
  }
  s.require(code_dis == 0, "lemma1_check = is_solution(lemma1_to_code) on 200 tuples, " + str(code_dis) + " disagreements");
  s.require(tr_dis == 0, "lemma1_check = lemma2_check(transform_a_to_b) on 200 tuples, " + str(tr_dis) + " disagreements");
  return s.finish(12, "layer conditions, network solutions and Swirl conditions agree on random tuples",
                  "200 + 200 tuples, 0 disagreements (" + str(code_holds) + " and " + str(tr_holds) + " satisfy the layer conditions)",
                  since(t0));
}

}  // namespace battery

using CriterionFn = std::function<CriterionResult(const BatteryConfig&)>;

inline const std::vector<CriterionFn>& acceptance_criteria() {
  static const std::vector<CriterionFn> all = {
      battery::group_counts,   battery::fpf_structure,       battery::swirl_searches, battery::gl5_nonexistence,
      battery::theorem1_oracle, battery::corollary1,         battery::combination,    battery::lifting,
      battery::direct_sum_solution, battery::prop4,          battery::thm5,           battery::lemma_equivalences,
  };
  return all;
}

/// Runs one criterion; exceptions turn into failures carrying the message.
inline CriterionResult run_criterion(std::size_t index, const BatteryConfig& cfg) {
  const auto t0 = battery::Clock::now();
  try {
    return acceptance_criteria().at(index)(cfg);
  } catch (const std::exception& e) {
    return {static_cast<int>(index + 1), "criterion " + std::to_string(index + 1), false,
            std::string("exception: ") + e.what(), battery::since(t0)};
  }
}

inline std::vector<CriterionResult> run_battery(const BatteryConfig& cfg,
                                                const std::function<void(const CriterionResult&)>& on_result = {}) {
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < acceptance_criteria().size(); ++i) {
    out.push_back(run_criterion(i, cfg));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace lnc
