#pragma once

// JSON encodings of fields, matrices, networks, codes, condition tuples and
// the result records of the deciders and searches.

#include <string>
#include <vector>

#include "json.hpp"

#include "code.hpp"
#include "constructions.hpp"
#include "network.hpp"
#include "search.hpp"
#include "solvability.hpp"

namespace lnc::io {

using json = nlohmann::json;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field \"") + key + "\" has the wrong type");
  }
}

inline const json& sub(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::string big(const mpz_class& v) { return decimal_summary(v, 200); }

// fields ---------------------------------------------------------------------

inline json to_json(const FieldSpec& f) { return {{"p", f.p()}, {"k", f.k()}, {"poly", f.poly()}}; }

inline Field field_from_json(const json& j) {
  const u64 p = get<u64>(j, "p");
  const auto poly = get<std::vector<u64>>(j, "poly");
  if (j.contains("k") && get<unsigned>(j, "k") + 1 != poly.size()) throw ParseError("k disagrees with the polynomial degree");
  return make_field_with_poly(p, poly);
}

// matrices -------------------------------------------------------------------

inline json to_json(const MatF& m) {
  return {{"p", m.field()->p()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", m.entries()}};
}

/// Entries are element codes of `f`; the recorded p must match.
inline MatF mat_from_json(const json& j, const Field& f) {
  if (get<u64>(j, "p") != f->p()) throw ParseError("matrix characteristic disagrees with its field");
  const auto rows = get<std::size_t>(j, "rows"), cols = get<std::size_t>(j, "cols");
  const auto entries = get<std::vector<u64>>(j, "entries");
  if (entries.size() != rows * cols) throw ParseError("matrix entry count disagrees with its shape");
  for (u64 e : entries)
    if (e > f->group_order()) throw ParseError("matrix entry outside the field");
  return MatF::from_entries(f, rows, cols, entries);
}

// networks -------------------------------------------------------------------

inline json to_json(const Network& n) {
  json edges = json::array();
  for (const Edge& e : n.edges()) edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
  json out{{"nodes", n.names()}, {"edges", edges}, {"source", n.source()}, {"receivers", n.receivers()}};
  const FamilyTag& tag = n.family();
  if (!tag.name.empty()) {
    json fam{{"name", tag.name}};
    if (!tag.d.empty()) fam["d"] = tag.d;
    if (tag.n_plus_1) fam["n_plus_1"] = tag.n_plus_1;
    out["family"] = fam;
  }
  return out;
}

inline Network network_from_json(const json& j) {
  Network n;
  for (const auto& name : get<std::vector<std::string>>(j, "nodes")) n.add_node(name);
  const json& edges = sub(j, "edges");
  if (!edges.is_array()) throw ParseError("edges must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (get<std::size_t>(edges[i], "id") != i) throw ParseError("edge ids must be 0, 1, 2, ... in order");
    const auto tail = get<std::size_t>(edges[i], "tail"), head = get<std::size_t>(edges[i], "head");
    if (tail >= n.node_count() || head >= n.node_count()) throw ParseError("edge endpoint out of range");
    n.add_edge(tail, head);
  }
  const auto s = get<std::size_t>(j, "source");
  if (s >= n.node_count()) throw ParseError("source out of range");
  n.set_source(s);
  for (auto t : get<std::vector<std::size_t>>(j, "receivers")) {
    if (t >= n.node_count()) throw ParseError("receiver out of range");
    n.add_receiver(t);
  }
  if (j.contains("family")) {
    FamilyTag tag;
    tag.name = get<std::string>(sub(j, "family"), "name");
    if (j["family"].contains("d")) tag.d = get<std::vector<u64>>(j["family"], "d");
    if (j["family"].contains("n_plus_1")) tag.n_plus_1 = get<u64>(j["family"], "n_plus_1");
    n.set_family(tag);
  }
  if (auto err = n.validate()) throw ParseError("invalid network: " + *err);
  return n;
}

// codes ----------------------------------------------------------------------

inline json to_json(const CodeAssignment& c) {
  json ks = json::array();
  for (const auto& [pair, k] : c.kernels()) ks.push_back({{"d", pair.first}, {"e", pair.second}, {"mat", to_json(k)}});
  return {{"base", to_json(*c.field())}, {"dim", c.dim()}, {"kernels", ks}};
}

inline CodeAssignment code_from_json(const json& j, std::shared_ptr<const Network> net) {
  const Field f = field_from_json(sub(j, "base"));
  CodeAssignment code(net, f, get<unsigned>(j, "dim"));
  for (const json& k : sub(j, "kernels")) {
    const auto d = get<std::size_t>(k, "d"), e = get<std::size_t>(k, "e");
    if (d >= net->edge_count() || e >= net->edge_count()) throw ParseError("kernel edge out of range");
    code.set(d, e, mat_from_json(sub(k, "mat"), f));
  }
  return code;
}

// condition tuples -----------------------------------------------------------

inline json to_json(const ConditionTuple& t) {
  json out{{"flavor", t.flavor == Flavor::lemma1 ? "lemma1" : "lemma2"},
           {"base", to_json(*t.field)},
           {"L", t.L},
           {"omega", t.omega()},
           {"d", t.d()}};
  json mats = json::array();
  if (t.flavor == Flavor::lemma1) {
    for (const auto& layer : t.a) {
      json row = json::array();
      for (const auto& m : layer) row.push_back(to_json(m));
      mats.push_back(row);
    }
  } else {
    for (const auto& m : t.b) mats.push_back(to_json(m));
  }
  out["mats"] = mats;
  return out;
}

inline ConditionTuple tuple_from_json(const json& j) {
  ConditionTuple t;
  const auto flavor = get<std::string>(j, "flavor");
  if (flavor != "lemma1" && flavor != "lemma2") throw ParseError("flavor must be lemma1 or lemma2");
  t.flavor = flavor == "lemma1" ? Flavor::lemma1 : Flavor::lemma2;
  t.field = field_from_json(sub(j, "base"));
  t.L = get<unsigned>(j, "L");
  auto check = [&](const MatF& m) {
    if (m.rows() != t.L || m.cols() != t.L) throw ParseError("tuple matrix is not L x L");
    return m;
  };
  const json& mats = sub(j, "mats");
  if (!mats.is_array() || mats.empty()) throw ParseError("mats must be a non-empty array");
  if (t.flavor == Flavor::lemma1) {
    for (const json& layer : mats) {
      std::vector<MatF> row;
      for (const json& m : layer) row.push_back(check(mat_from_json(m, t.field)));
      t.a.push_back(std::move(row));
    }
  } else {
    for (const json& m : mats) t.b.push_back(check(mat_from_json(m, t.field)));
    if (t.b.size() < 2) throw ParseError("lemma2 tuple needs B_1..B_{omega+1}");
  }
  if (j.contains("omega") && get<std::size_t>(j, "omega") != t.omega()) throw ParseError("omega disagrees with mats");
  return t;
}

// results --------------------------------------------------------------------

inline json to_json(const SolvVerdict& v) {
  json out{{"solvable", v.solvable}, {"method", v.method}, {"detail", v.detail}};
  if (v.witness_divisor) out["witness_divisor"] = *v.witness_divisor;
  if (v.witness_tuple) out["witness_tuple"] = to_json(*v.witness_tuple);
  if (!v.witness_family.empty()) {
    json fam = json::array();
    for (const auto& m : v.witness_family) fam.push_back(to_json(m));
    out["witness_family"] = fam;
  }
  return out;
}

inline json to_json(const LemmaVerdict& v) {
  json out{{"holds", v.holds}, {"products_checked", v.products_checked}};
  if (!v.holds) out["violated"] = v.violated;
  return out;
}

inline json to_json(const SolutionReport& r, const Network& net) {
  json recv = json::array();
  for (const auto& x : r.receivers)
    recv.push_back({{"receiver", net.name(x.receiver)}, {"rank", x.rank}, {"full", x.full}});
  json failing = json::array();
  for (NodeId t : r.failing) failing.push_back(net.name(t));
  return {{"solution", r.solution}, {"required_rank", r.required_rank}, {"receivers", recv}, {"failing", failing}};
}

inline json to_json(const SearchOutcome& o, bool include_witnesses = true) {
  json out{{"found", o.found},
           {"exhausted", o.exhausted},
           {"solutions", o.solutions},
           {"counts",
            {{"pool", o.pool_size},
             {"partitions_total", o.partitions_total},
             {"partitions_done", o.partitions_done},
             {"nodes", o.nodes}}},
           {"resumed", o.resumed}};
  if (include_witnesses) {
    json w = json::array();
    for (const auto& t : o.witnesses) w.push_back(to_json(t));
    out["witnesses"] = w;
  }
  return out;
}

inline json to_json(const ConjClassInfo& c) {
  json inv = json::array();
  for (const auto& f : c.invariant_factors) inv.push_back(poly::to_string(f));
  return {{"rep", to_json(c.rep)},
          {"size", c.size},
          {"order", c.order},
          {"invariant_factors", inv},
          {"fixed_point_free", c.fixed_point_free}};
}

inline json to_json(const Gl5Outcome& g) {
  json classes = json::array();
  for (const auto& c : g.classes) {
    json e{{"rep", to_json(c.rep)},
           {"branch_rep", to_json(c.branch_rep)},
           {"size", c.size},
           {"order", c.order},
           {"order_reverified", c.order_reverified},
           {"power_set_matches_first", c.power_set_matches_first},
           {"lex_power_set_matches_first", c.lex_power_set_matches_first}};
    if (c.order == 31) {
      e["power_pairs_checked"] = c.power_pairs_checked;
      e["powers_pairwise_rank5"] = c.powers_pairwise_full_rank;
      e["singleton_contradiction"] = c.singleton_contradiction;
    } else {
      e["candidates_scanned"] = c.candidates_scanned;
      e["compatible_found"] = c.compatible_found;
    }
    classes.push_back(e);
  }
  return {{"found", false},
          {"exhausted", g.certified},
          {"fpf_classes", g.fpf_classes},
          {"order21_classes", g.order21},
          {"order31_classes", g.order31},
          {"fpf_count", g.fpf_count},
          {"classes", classes},
          {"order21_power_sets_identical", g.order21_power_sets_identical},
          {"order31_power_sets_identical", g.order31_power_sets_identical},
          {"lex_power_sets_identical", g.lex_power_sets_identical},
          {"omega_threshold", g.omega_threshold},
          {"omega_threshold_kind", "pigeonhole bound 29*N+1, sufficient, not claimed minimal"},
          {"certified", g.certified},
          {"conclusion", g.conclusion}};
}

inline json to_json(const EqRow& r) {
  return {{"divisor", big(r.divisor)}, {"rhs", big(r.rhs)}, {"inequality_fails", r.fails}};
}

inline json to_json(const Prop4Certificate& c) {
  json rows = json::array();
  for (const auto& r : c.rows) rows.push_back(to_json(r));
  return {{"l", c.l},
          {"L", c.L},
          {"omega", c.omega},
          {"q", big(c.q)},
          {"d", big(c.d)},
          {"m1", big(c.m1)},
          {"m2", big(c.m2)},
          {"m_integral", c.m_integral},
          {"m1m2_exceeds_d", c.m1m2_exceeds_d},
          {"chain_identity", c.chain_identity},
          {"smallest_prime_factor", big(c.smallest_prime_factor)},
          {"factorization_complete", c.factorization_complete},
          {"rows", rows},
          {"holds", c.holds}};
}

inline json to_json(const Prop4Spotcheck& s) {
  json pairs = json::array(), shared = json::array();
  for (const auto& p : s.pairs) pairs.push_back({p.j1, p.k1, p.j2, p.k2, p.rank});
  for (const auto& p : s.shared_index_pairs) shared.push_back({p.j1, p.k1, p.j2, p.k2, p.rank});
  u64 verified = 0, zero = 0;
  for (const auto& p : s.products) {
    verified += p.matrix_verified;
    zero += !p.full_rank;
  }
  return {{"pair_samples", s.pairs.size()},
          {"pairs_full_rank", s.pairs_full_rank},
          {"pairs", pairs},
          {"shared_index_pairs", shared},
          {"product_samples", s.products.size()},
          {"products_with_zero_residue", zero},
          {"products_matrix_verified", verified},
          {"products_full_rank", s.products_full_rank}};
}

inline json to_json(const Thm5Params& t) {
  json inv = json::array();
  for (const auto& [name, ok] : t.invariants) inv.push_back({{"invariant", name}, {"holds", ok}});
  json out{{"p", t.p},
           {"a", t.a},
           {"b", t.b},
           {"ab", t.ab()},
           {"l", t.l},
           {"primes", t.primes},
           {"q", t.q},
           {"m_orders", t.m_orders},
           {"m", t.m.get_str()},
           {"L", t.L.get_str()},
           {"small_divisors", t.small_divisors},
           {"invariants", inv},
           {"valid", t.valid()}};
  if (t.d0_materialized) out["d0"] = big(t.d0);
  return out;
}

inline json to_json(const Thm5Certificate& c) {
  json large = json::array(), small = json::array();
  for (std::size_t i = 0; i < c.large_rows.size(); ++i) {
    json r = to_json(c.large_rows[i]);
    r["ceil_identity"] = bool(c.ceil_identity[i]);
    large.push_back(r);
  }
  for (const auto& r : c.small_rows) small.push_back(to_json(r));
  return {{"omega", c.omega},
          {"omega_threshold", c.omega_threshold},
          {"q", big(c.q)},
          {"d0", big(c.d0)},
          {"last_degree", big(c.last_degree)},
          {"d0_exceeds_bound", c.d0_exceeds_bound},
          {"large_divisor_rows", large},
          {"small_divisor_rows", small},
          {"holds", c.holds}};
}

inline json to_json(const MersenneEntry& e) {
  return {{"L", e.L},
          {"value", big(e.value)},
          {"prime", e.prime},
          {"primality_source", e.from_table ? "known list" : "probable-prime test"},
          {"split", e.split},
          {"summary", e.summary}};
}

}  // namespace lnc::io
