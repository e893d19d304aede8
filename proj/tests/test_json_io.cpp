#include <gtest/gtest.h>

#include <random>

#include "lnc/json_io.hpp"

using namespace lnc;
using io::json;

TEST(JsonIO, FieldRoundTrip) {
  for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{{2, 1}, {2, 4}, {3, 2}, {7, 1}, {5, 3}}) {
    const Field f = make_field(p, k);
    const json j = io::to_json(*f);
    EXPECT_EQ(j["poly"].size(), k + 1);
    const Field g = io::field_from_json(json::parse(j.dump()));
    EXPECT_EQ(g->poly(), f->poly());
    for (u64 a = 0; a < f->size(); a += 3)
      for (u64 b = 0; b < f->size(); b += 5) EXPECT_EQ(g->mul(a, b), f->mul(a, b));
  }
}

TEST(JsonIO, MatrixRoundTrip) {
  std::mt19937_64 rng(1);
  const Field f = make_field(3, 2);
  const MatF m = random_matrix(f, 3, 4, rng);
  const MatF back = io::mat_from_json(json::parse(io::to_json(m).dump()), f);
  EXPECT_EQ(back, m);
}

TEST(JsonIO, NetworkRoundTrip) {
  for (const Network& n : {gen_swirl(4), gen_combination(5), gen_n_omega_d(3, {2, 3, 2})}) {
    const Network back = io::network_from_json(json::parse(io::to_json(n).dump()));
    EXPECT_EQ(back.names(), n.names());
    ASSERT_EQ(back.edge_count(), n.edge_count());
    for (EdgeId e = 0; e < n.edge_count(); ++e) {
      EXPECT_EQ(back.edge(e).tail, n.edge(e).tail);
      EXPECT_EQ(back.edge(e).head, n.edge(e).head);
    }
    EXPECT_EQ(back.receivers(), n.receivers());
    EXPECT_EQ(back.family().name, n.family().name);
    EXPECT_EQ(back.family().d, n.family().d);
    EXPECT_EQ(back.family().n_plus_1, n.family().n_plus_1);
  }
}

TEST(JsonIO, CodeRoundTripKeepsVerdict) {
  auto net = std::make_shared<const Network>(gen_combination(5));
  const auto v = combination_solvable(4, 3, 2);
  const CodeAssignment code = combination_code_from_family(net, v.witness_family);
  const CodeAssignment back = io::code_from_json(json::parse(io::to_json(code).dump()), net);
  EXPECT_EQ(io::to_json(back), io::to_json(code));
  EXPECT_TRUE(is_solution(back).solution);
}

TEST(JsonIO, TupleRoundTrip) {
  const ConditionTuple t = coset_witness(4, {2, 3, 2, 2}, 7, 3);
  const ConditionTuple back = io::tuple_from_json(json::parse(io::to_json(t).dump()));
  EXPECT_EQ(back.omega(), 4u);
  EXPECT_EQ(back.d(), t.d());
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < t.a[j].size(); ++k) EXPECT_EQ(back.a[j][k], t.a[j][k]);
  EXPECT_EQ(lemma1_check(back).holds, lemma1_check(t).holds);

  const auto out = swirl_full_search(4, 3);
  ASSERT_TRUE(out.found);
  const ConditionTuple b2 = io::tuple_from_json(json::parse(io::to_json(out.witnesses[0]).dump()));
  EXPECT_EQ(b2.flavor, Flavor::lemma2);
  EXPECT_TRUE(lemma2_check(b2).holds);
}

TEST(JsonIO, MalformedInputsRaiseParseError) {
  EXPECT_THROW(io::field_from_json(json::parse(R"({"p": 2})")), io::ParseError);
  EXPECT_THROW(io::field_from_json(json::parse(R"({"p": "two", "poly": [1, 1]})")), io::ParseError);
  EXPECT_THROW(io::field_from_json(json::parse(R"({"p": 2, "k": 3, "poly": [1, 1, 1]})")), io::ParseError);
  EXPECT_THROW(io::field_from_json(json::parse(R"({"p": 2, "poly": [1, 0, 1]})")), std::invalid_argument);

  const Field f = make_field(2, 1);
  EXPECT_THROW(io::mat_from_json(json::parse(R"({"p": 2, "rows": 2, "cols": 2, "entries": [1, 0, 0]})"), f),
               io::ParseError);
  EXPECT_THROW(io::mat_from_json(json::parse(R"({"p": 3, "rows": 1, "cols": 1, "entries": [1]})"), f), io::ParseError);
  EXPECT_THROW(io::mat_from_json(json::parse(R"({"p": 2, "rows": 1, "cols": 1, "entries": [2]})"), f), io::ParseError);

  json net = io::to_json(gen_swirl(3));
  json no_edges = net;
  no_edges.erase("edges");
  EXPECT_THROW(io::network_from_json(no_edges), io::ParseError);
  json bad_id = net;
  bad_id["edges"][1]["id"] = 7;
  EXPECT_THROW(io::network_from_json(bad_id), io::ParseError);
  json bad_head = net;
  bad_head["edges"][0]["head"] = 999;
  EXPECT_THROW(io::network_from_json(bad_head), io::ParseError);
  json bad_recv = net;
  bad_recv["receivers"].push_back(999);
  EXPECT_THROW(io::network_from_json(bad_recv), io::ParseError);
  json bad_source = net;
  bad_source["source"] = 3;  // u_1 is not a source of omega edges
  EXPECT_THROW(io::network_from_json(bad_source), io::ParseError);

  json tuple = io::to_json(coset_witness(3, {2, 2, 2}, 5, 2));
  json bad_flavor = tuple;
  bad_flavor["flavor"] = "lemma3";
  EXPECT_THROW(io::tuple_from_json(bad_flavor), io::ParseError);
  json bad_omega = tuple;
  bad_omega["omega"] = 4;
  EXPECT_THROW(io::tuple_from_json(bad_omega), io::ParseError);
  json bad_L = tuple;
  bad_L["L"] = 2;
  EXPECT_THROW(io::tuple_from_json(bad_L), io::ParseError);
  json no_mats = tuple;
  no_mats.erase("mats");
  EXPECT_THROW(io::tuple_from_json(no_mats), io::ParseError);
}
