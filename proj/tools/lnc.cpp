// lnc: command-line front end.  Every command prints one JSON object on
// stdout and appends one record to the run log.
//
// Exit codes: 0 success, 1 invalid input, 2 budget refusal, 64 usage error.

#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "lnc/battery.hpp"
#include "lnc/json_io.hpp"

namespace {

using namespace lnc;
using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr int kInvalid = 1;
constexpr int kBudget = 2;
constexpr int kUsage = 64;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw std::runtime_error("SHA-256 failed");
  std::ostringstream o;
  for (unsigned i = 0; i < len; ++i) o << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return o.str();
}

/// Canonical bytes of a result: compact dump with the "timing" key removed.
std::string canonical(json j) {
  if (j.is_object()) j.erase("timing");
  return j.dump();
}

struct Context {
  unsigned threads = 1;
  u64 seed = 0;
  std::string log_dir = "lnc-runs";
  std::string out_path;
  Budget budget;
  json inputs = json::object();  // path -> sha256 of the bytes read

  std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    inputs[path] = sha256_hex(ss.str());
    return ss.str();
  }
  json read_json(const std::string& path) {
    const std::string text = read_file(path);
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(path + ": " + e.what());
    }
  }
  std::shared_ptr<const Network> read_net(const std::string& path) {
    return std::make_shared<const Network>(io::network_from_json(read_json(path)));
  }
  json config() const {
    return {{"threads", threads},
            {"seed", seed},
            {"budget",
             {{"gl_enumeration_bits", budget.gl_enumeration_bits},
              {"receiver_subsets", budget.receiver_subsets},
              {"lemma1_products", budget.lemma1_products},
              {"lemma2_products", budget.lemma2_products},
              {"brute_force_codes", budget.brute_force_codes},
              {"max_materialized_dim", budget.max_materialized_dim},
              {"certificate_bits", budget.certificate_bits},
              {"phase_ms", budget.phase_ms}}}};
  }
};

std::vector<u64> parse_list(const std::string& s) {
  std::vector<u64> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("expected a comma-separated list of non-negative integers, got \"" + s + "\"");
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

u64 checked_prime_power(u64 q, u64& p, unsigned& k) {
  if (!prime_power(q, p, k)) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  return q;
}

// network selection shared by `net gen` and `check scalar`
struct FamilyArgs {
  std::string family;
  std::size_t omega = 0;
  std::string d;
  u64 n = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--family", family, "swirl | n-omega-d | combination")
        ->check(CLI::IsMember({"swirl", "n-omega-d", "combination"}));
    cmd->add_option("--omega", omega, "source dimension (swirl, n-omega-d)");
    cmd->add_option("--d", d, "out-degrees d_1,...,d_omega (n-omega-d)");
    cmd->add_option("--n", n, "number of middle nodes n+1 (combination)");
  }
  Network build(const Budget& budget) const {
    if (family == "swirl") {
      if (omega < 3) throw std::invalid_argument("--omega >= 3 required");
      return gen_swirl(omega, budget);
    }
    if (family == "n-omega-d") {
      const auto dv = parse_list(d);
      const std::size_t w = omega ? omega : dv.size();
      return gen_n_omega_d(w, dv, budget);
    }
    if (family == "combination") return gen_combination(n);
    throw std::invalid_argument("--family required");
  }
};

json with_code(const CodeAssignment& c) { return io::to_json(c); }

json decode_json(const DecodeOutcome& d) { return {{"ok", d.ok}, {"trials", d.trials}, {"mismatches", d.mismatches}}; }

std::string table(const std::vector<CriterionResult>& rs) {
  std::ostringstream o;
  o << std::left << std::setw(4) << "#" << std::setw(6) << "pass" << std::setw(10) << "seconds"
    << "claim / detail\n";
  for (const auto& r : rs) {
    o << std::left << std::setw(4) << r.id << std::setw(6) << (r.pass ? "PASS" : "FAIL") << std::setw(10)
      << battery::secs(r.seconds) << r.claim << "\n";
    o << std::string(20, ' ') << r.detail << "\n";
  }
  return o.str();
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  ctx.threads = std::max(1u, std::thread::hardware_concurrency());
  std::optional<u64> budget_ms;

  CLI::App app{"Linear network coding solvability toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", ctx.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--seed", ctx.seed, "seed for randomized operations")->capture_default_str();
  app.add_option("--log-dir", ctx.log_dir, "run log directory (runs.ndjson inside)")->capture_default_str();
  app.add_option("-o,--out", ctx.out_path, "also write the result JSON (without timing) to this file");
  app.add_option("--budget-ms", budget_ms, "wall-clock cap per search phase, overrides LNC_BUDGET_MS (0 = none)");
  app.add_option("--max-products", ctx.budget.lemma1_products, "product choices scanned by the condition checkers")
      ->capture_default_str();
  app.add_option("--max-codes", ctx.budget.brute_force_codes, "assignments visited by brute-force search")
      ->capture_default_str();
  app.add_option("--max-subsets", ctx.budget.receiver_subsets, "receiver subsets when building N_{omega,d}")
      ->capture_default_str();
  app.add_option("--gl-bits", ctx.budget.gl_enumeration_bits, "L^2 log2 p cap for GL enumeration")->capture_default_str();
  app.add_option("--cert-bits", ctx.budget.certificate_bits, "bit cap for exact certificate arithmetic")
      ->capture_default_str();
  app.add_option("--max-dim", ctx.budget.max_materialized_dim, "largest materialized construction matrix")
      ->capture_default_str();

  std::function<json()> action;

  // field -------------------------------------------------------------------
  auto* field_cmd = app.add_subcommand("field", "GF(p^k) with its primitive polynomial and companion matrix");
  u64 field_q = 0;
  std::optional<u64> field_elem;
  field_cmd->add_option("--q", field_q, "field size p^k")->required();
  field_cmd->add_option("--element", field_elem, "also print Phi of this element code");
  field_cmd->callback([&] {
    action = [&] {
      u64 p;
      unsigned k;
      checked_prime_power(field_q, p, k);
      const Field f = make_field(p, k);
      json out{{"field", io::to_json(*f)}, {"q", field_q}, {"generator", f->generator()},
               {"companion", io::to_json(companion_matrix(*f))}};
      if (field_elem) {
        if (*field_elem >= field_q) throw std::invalid_argument("element code must be below q");
        out["element"] = *field_elem;
        out["phi"] = io::to_json(phi_lift(f, *field_elem));
      }
      return out;
    };
  });

  // net -----------------------------------------------------------------------
  auto* net_cmd = app.add_subcommand("net", "network generation");
  net_cmd->require_subcommand(1);
  auto* net_gen = net_cmd->add_subcommand("gen", "generate a network family instance");
  FamilyArgs gen_args;
  gen_args.add(net_gen);
  net_gen->callback([&] {
    action = [&] {
      if (gen_args.family.empty()) throw std::invalid_argument("--family required");
      return io::to_json(gen_args.build(ctx.budget));
    };
  });

  // code ----------------------------------------------------------------------
  auto* code_cmd = app.add_subcommand("code", "operations on code assignments");
  code_cmd->require_subcommand(1);
  std::string net_path, code_path;
  std::vector<std::string> code_paths;

  auto* code_verify = code_cmd->add_subcommand("verify", "receiver rank report");
  code_verify->add_option("net", net_path, "network JSON")->required();
  code_verify->add_option("code", code_path, "code JSON")->required();
  code_verify->callback([&] {
    action = [&] {
      auto net = ctx.read_net(net_path);
      const auto code = io::code_from_json(ctx.read_json(code_path), net);
      return io::to_json(is_solution(code, ctx.threads), *net);
    };
  });

  auto* code_lift = code_cmd->add_subcommand("lift", "Phi-lift a scalar code over GF(p^k) to GF(p)^k");
  code_lift->add_option("net", net_path, "network JSON")->required();
  code_lift->add_option("code", code_path, "scalar code JSON")->required();
  code_lift->callback([&] {
    action = [&] {
      auto net = ctx.read_net(net_path);
      return with_code(lift_scalar(io::code_from_json(ctx.read_json(code_path), net)));
    };
  });

  auto* code_dsum = code_cmd->add_subcommand("dsum", "direct sum of scalar codes over GF(p^{L_i})");
  code_dsum->add_option("net", net_path, "network JSON")->required();
  code_dsum->add_option("codes", code_paths, "scalar code JSON files")->required();
  code_dsum->callback([&] {
    action = [&] {
      auto net = ctx.read_net(net_path);
      std::vector<CodeAssignment> codes;
      for (const auto& p : code_paths) codes.push_back(io::code_from_json(ctx.read_json(p), net));
      return with_code(direct_sum(codes));
    };
  });

  // check ---------------------------------------------------------------------
  auto* check_cmd = app.add_subcommand("check", "solvability deciders and condition checkers");
  check_cmd->require_subcommand(1);

  auto* check_scalar = check_cmd->add_subcommand("scalar", "scalar solvability over GF(q)");
  FamilyArgs chk_args;
  chk_args.add(check_scalar);
  u64 chk_q = 0;
  bool chk_brute = false;
  check_scalar->add_option("--net", net_path, "network JSON instead of --family");
  check_scalar->add_option("--q", chk_q, "field size")->required();
  check_scalar->add_flag("--brute-force", chk_brute, "also run exhaustive search and compare");
  check_scalar->callback([&] {
    action = [&] {
      if (net_path.empty() == chk_args.family.empty()) throw std::invalid_argument("give exactly one of --net and --family");
      u64 p;
      unsigned k;
      checked_prime_power(chk_q, p, k);
      std::shared_ptr<const Network> net;
      if (!net_path.empty()) net = ctx.read_net(net_path);
      else net = std::make_shared<const Network>(chk_args.build(ctx.budget));
      const bool closed_form = net->family().name == "n-omega-d" || net->family().name == "combination";
      json out;
      if (closed_form) {
        out = io::to_json(scalar_by_family(*net, chk_q));
        if (net->family().name == "n-omega-d" && net->family().d == std::vector<u64>(net->omega(), 2))
          out["corollary1"] = io::to_json(corollary1_swirl(net->omega(), chk_q));
      }
      if (chk_brute || !closed_form) {
        const json bf = io::to_json(brute_force_scalar(net, chk_q, ctx.budget));
        if (!closed_form) return bf;
        out["brute_force"] = bf;
        out["agree"] = bf["solvable"] == out["solvable"];
      }
      return out;
    };
  });

  auto* check_combo = check_cmd->add_subcommand("combination", "vector solvability of an (n+1,2)-combination network over GF(q)^L");
  u64 combo_n = 0, combo_q = 0;
  unsigned combo_L = 1;
  check_combo->add_option("--n", combo_n, "number of middle nodes n+1")->required();
  check_combo->add_option("--q", combo_q, "base field size")->required();
  check_combo->add_option("--L", combo_L, "vector dimension")->capture_default_str();
  check_combo->callback([&] {
    action = [&] {
      if (combo_n < 3) throw std::invalid_argument("--n >= 3 middle nodes required");
      return io::to_json(combination_solvable(combo_n - 1, combo_q, combo_L));
    };
  });

  std::string tuple_path;
  bool cond_transform = false;
  auto conditions = [&] {
    const ConditionTuple t = io::tuple_from_json(ctx.read_json(tuple_path));
    json out;
    if (t.flavor == Flavor::lemma1) {
      out["lemma1"] = io::to_json(lemma1_check(t, ctx.budget, ctx.threads));
      if (cond_transform) out["lemma2_of_transform"] = io::to_json(lemma2_check(transform_a_to_b(t), ctx.budget, ctx.threads));
      if (!net_path.empty()) {
        auto net = ctx.read_net(net_path);
        out["network"] = io::to_json(is_solution(lemma1_to_code(t, net), ctx.threads), *net);
      }
    } else {
      out["lemma2"] = io::to_json(lemma2_check(t, ctx.budget, ctx.threads));
      if (cond_transform) out["lemma1_of_transform"] = io::to_json(lemma1_check(transform_b_to_a(t), ctx.budget, ctx.threads));
    }
    out["holds"] = (t.flavor == Flavor::lemma1 ? out["lemma1"] : out["lemma2"])["holds"];
    return out;
  };
  for (const char* name : {"vector-conditions", "conditions"}) {
    auto* c = check_cmd->add_subcommand(name, "layer (lemma1) or Swirl (lemma2) conditions of a tuple");
    c->add_option("tuple", tuple_path, "condition tuple JSON")->required();
    c->add_option("--net", net_path, "N_{omega,d} network JSON: also verify lemma1_to_code on it");
    c->add_flag("--transform", cond_transform, "also check the transformed tuple");
    c->callback([&] { action = conditions; });
  }

  // construct -----------------------------------------------------------------
  auto* cons_cmd = app.add_subcommand("construct", "certificates and explicit constructions");
  cons_cmd->require_subcommand(1);

  auto* cons_prop4 = cons_cmd->add_subcommand("prop4", "binary family: certificate, spot checks and scaled analog");
  Prop4Params p4;
  std::size_t p4_products = 1000, p4_pairs = 100;
  cons_prop4->add_option("--l", p4.l, "l (L = 6l + 1)")->capture_default_str();
  cons_prop4->add_option("--omega", p4.omega, "source dimension")->capture_default_str();
  cons_prop4->add_option("--spotcheck", p4_products, "sampled products")->capture_default_str();
  cons_prop4->add_option("--pairs", p4_pairs, "sampled pairs")->capture_default_str();
  cons_prop4->callback([&] {
    action = [&] {
      json out{{"certificate", io::to_json(prop4_certificate(p4, ctx.budget))},
               {"spotcheck", io::to_json(prop4_spotcheck(p4, p4_pairs, p4_products, ctx.seed, ctx.budget))}};
      const ConditionTuple twisted = prop4_scaled_analog(4, 3).tuple();
      auto net = std::make_shared<const Network>(gen_n_omega_d(4, std::vector<u64>(4, 3), ctx.budget));
      const UntwistedViolation uv = prop4_untwisted_violation(4, 3, ctx.budget);
      out["scaled_analog"] = {{"omega", 4},
                              {"d", std::vector<u64>(4, 3)},
                              {"L", twisted.L},
                              {"lemma1", io::to_json(lemma1_check(twisted, ctx.budget, ctx.threads))},
                              {"network_solution", is_solution(lemma1_to_code(twisted, net), ctx.threads).solution},
                              {"untwisted_violation_found", uv.found},
                              {"untwisted_product_is_identity", uv.product_is_identity},
                              {"untwisted_lemma1_rejects", uv.lemma1_rejects}};
      return out;
    };
  });

  auto* cons_thm5 = cons_cmd->add_subcommand("thm5", "odd-prime parameters and non-solvability certificate");
  u64 t5_p = 3;
  unsigned t5_l = 1;
  u64 t5_omega = 0;
  std::size_t t5_pairs = 0;
  cons_thm5->add_option("--p", t5_p, "odd prime")->capture_default_str();
  cons_thm5->add_option("--l", t5_l, "l")->capture_default_str();
  cons_thm5->add_option("--omega", t5_omega, "source dimension (0 = the computed threshold)")->capture_default_str();
  cons_thm5->add_option("--pairs", t5_pairs, "sampled block pair-rank checks")->capture_default_str();
  cons_thm5->callback([&] {
    action = [&] {
      const Thm5Params t = thm5_params(t5_p, t5_l, ctx.budget);
      json out{{"params", io::to_json(t)}};
      if (t.d0_materialized) {
        out["certificate"] = io::to_json(thm5_certificate(t, t5_omega));
      } else {
        out["certificate"] = nullptr;
        out["certificate_note"] = "p^L exceeds the certificate bit cap; invariants only";
      }
      if (t5_pairs) {
        json pairs = json::array();
        for (const auto& pc : thm5_pair_samples(t, t5_pairs, ctx.seed))
          pairs.push_back({{"j1", pc.j1}, {"k1", pc.k1}, {"j2", pc.j2}, {"k2", pc.k2},
                           {"rank_block1", pc.rank_block1}, {"block2_exponent_nonzero", pc.block2_exponent_nonzero}});
        out["pairs"] = pairs;
      }
      return out;
    };
  });

  auto* cons_mers = cons_cmd->add_subcommand("mersenne", "primality of 2^L - 1 and direct-sum splits");
  std::string mers_list = "2,3,4,5,7,13,17,19,31";
  cons_mers->add_option("--L", mers_list, "comma-separated L values")->capture_default_str();
  cons_mers->callback([&] {
    action = [&] {
      std::vector<unsigned> Ls;
      for (u64 v : parse_list(mers_list)) Ls.push_back(static_cast<unsigned>(v));
      json rows = json::array();
      for (const auto& e : mersenne_report(Ls)) rows.push_back(io::to_json(e));
      return json{{"entries", rows}};
    };
  });

  auto* cons_mrd = cons_cmd->add_subcommand("mrd", "vector code on an (n+1,2)-combination network from an MRD family");
  u64 mrd_n = 5, mrd_q = 2;
  unsigned mrd_L = 2;
  cons_mrd->add_option("--n", mrd_n, "number of middle nodes n+1")->capture_default_str();
  cons_mrd->add_option("--q", mrd_q, "prime base field size")->capture_default_str();
  cons_mrd->add_option("--L", mrd_L, "vector dimension")->capture_default_str();
  cons_mrd->callback([&] {
    action = [&] {
      if (mrd_n < 3) throw std::invalid_argument("--n >= 3 middle nodes required");
      const SolvVerdict v = combination_solvable(mrd_n - 1, mrd_q, mrd_L);
      if (!v.solvable) throw std::invalid_argument("not solvable: " + v.detail);
      if (v.witness_family.empty()) throw std::invalid_argument("MRD witness needs a prime q and q^L <= 2^16");
      auto net = std::make_shared<const Network>(gen_combination(mrd_n));
      const CodeAssignment code = combination_code_from_family(net, v.witness_family);
      return json{{"network", io::to_json(*net)},
                  {"code", io::to_json(code)},
                  {"solution", is_solution(code, ctx.threads).solution}};
    };
  });

  auto* cons_coset = cons_cmd->add_subcommand("coset", "scalar N_{omega,d} solution from a divisor of q - 1");
  std::string cs_d;
  std::size_t cs_omega = 0;
  u64 cs_q = 0, cs_div = 0;
  cons_coset->add_option("--omega", cs_omega, "source dimension");
  cons_coset->add_option("--d", cs_d, "out-degrees (default all 2)");
  cons_coset->add_option("--q", cs_q, "field size")->required();
  cons_coset->add_option("--divisor", cs_div, "proper divisor of q - 1, at least every d_j")->required();
  cons_coset->callback([&] {
    action = [&] {
      const std::vector<u64> d = cs_d.empty() ? std::vector<u64>(cs_omega, 2) : parse_list(cs_d);
      const std::size_t omega = d.size();
      const ConditionTuple t = coset_witness(omega, d, cs_q, cs_div);
      auto net = std::make_shared<const Network>(gen_n_omega_d(omega, d, ctx.budget));
      const CodeAssignment code = lemma1_to_code(t, net);
      return json{{"tuple", io::to_json(t)},
                  {"lemma1", io::to_json(lemma1_check(t, ctx.budget, ctx.threads))},
                  {"network", io::to_json(*net)},
                  {"code", io::to_json(code)},
                  {"solution", is_solution(code, ctx.threads).solution}};
    };
  });

  // search --------------------------------------------------------------------
  auto* search_cmd = app.add_subcommand("search", "exhaustive searches over GL(L,2)");
  search_cmd->require_subcommand(1);

  auto* search_swirl = search_cmd->add_subcommand("swirl", "Swirl-condition tuples for the Swirl network over GF(2)^L");
  unsigned sw_omega = 6, sw_L = 3;
  std::string sw_state;
  bool sw_prefix = false, sw_witnesses = false;
  search_swirl->add_option("--omega", sw_omega, "source dimension")->capture_default_str();
  search_swirl->add_option("--L", sw_L, "vector dimension (1..4)")->capture_default_str();
  search_swirl->add_option("--resume", sw_state, "checkpoint file, created or resumed");
  search_swirl->add_flag("--prefix", sw_prefix, "count every tuple instead of stopping at the first");
  search_swirl->add_flag("--witnesses", sw_witnesses, "include witness tuples in the output");
  search_swirl->callback([&] {
    action = [&] {
      const SearchOutcome o = sw_prefix ? swirl_prefix_search(sw_omega, sw_L, ctx.threads, ctx.budget)
                                        : swirl_full_search(sw_omega, sw_L, ctx.threads, ctx.budget, sw_state);
      json out = io::to_json(o, sw_witnesses);
      out["omega"] = sw_omega;
      out["L"] = sw_L;
      return out;
    };
  });

  auto* search_gl5 = search_cmd->add_subcommand("gl5", "class-based non-existence proof over GF(2)^5");
  search_gl5->callback([&] { action = [&] { return io::to_json(gl5_prune(ctx.threads, ctx.budget)); }; });

  auto* search_gl = search_cmd->add_subcommand("gl", "count GL(L,p) and its fixed-point-free part");
  unsigned gl_L = 3;
  u64 gl_p = 2;
  search_gl->add_option("--L", gl_L, "dimension")->capture_default_str();
  search_gl->add_option("--p", gl_p, "prime")->capture_default_str();
  search_gl->callback([&] {
    action = [&] {
      return json{{"L", gl_L},
                  {"p", gl_p},
                  {"order_formula", gl_order(gl_L, gl_p)},
                  {"enumerated", gl_count(gl_L, gl_p, ctx.threads, ctx.budget)},
                  {"fixed_point_free", fixed_point_free_count(gl_L, gl_p, ctx.threads, ctx.budget)}};
    };
  });

  auto* search_classes = search_cmd->add_subcommand("classes", "conjugacy classes of GL(L,p)");
  bool cls_fpf = false;
  search_classes->add_option("--L", gl_L, "dimension")->capture_default_str();
  search_classes->add_option("--p", gl_p, "prime")->capture_default_str();
  search_classes->add_flag("--fpf", cls_fpf, "fixed-point-free classes only");
  search_classes->callback([&] {
    action = [&] {
      json arr = json::array();
      for (const auto& c : conjugacy_classify(gl_L, gl_p, cls_fpf, ctx.threads, ctx.budget)) arr.push_back(io::to_json(c));
      return json{{"classes", arr}, {"count", arr.size()}};
    };
  });

  // simulate ------------------------------------------------------------------
  auto* sim_cmd = app.add_subcommand("simulate", "push random messages through a solution and decode");
  std::size_t sim_trials = 100;
  sim_cmd->add_option("net", net_path, "network JSON")->required();
  sim_cmd->add_option("code", code_path, "code JSON")->required();
  sim_cmd->add_option("--trials", sim_trials, "random messages")->capture_default_str();
  sim_cmd->callback([&] {
    action = [&] {
      auto net = ctx.read_net(net_path);
      return decode_json(simulate_decode(io::code_from_json(ctx.read_json(code_path), net), sim_trials, ctx.seed));
    };
  });

  // report --------------------------------------------------------------------
  auto* report_cmd = app.add_subcommand("report", "run the acceptance battery");
  std::string rep_only;
  bool rep_table = false;
  report_cmd->add_option("--only", rep_only, "comma-separated criterion numbers");
  report_cmd->add_flag("--table", rep_table, "also print a plain-text table on stderr");
  report_cmd->callback([&] {
    action = [&] {
      BatteryConfig cfg{ctx.threads, ctx.seed, ctx.budget};
      std::vector<CriterionResult> rs;
      if (rep_only.empty()) {
        rs = run_battery(cfg);
      } else {
        for (u64 id : parse_list(rep_only)) {
          if (id < 1 || id > acceptance_criteria().size()) throw std::invalid_argument("no criterion " + std::to_string(id));
          rs.push_back(run_criterion(id - 1, cfg));
        }
      }
      if (rep_table) std::cerr << table(rs);
      json rows = json::array(), timing = json::object();
      bool all = true;
      for (const auto& r : rs) {
        rows.push_back({{"id", r.id}, {"claim", r.claim}, {"pass", r.pass}, {"detail", r.detail}});
        timing[std::to_string(r.id)] = r.seconds;
        all = all && r.pass;
      }
      return json{{"criteria", rows}, {"all_pass", all}, {"timing", {{"criterion_seconds", timing}}}};
    };
  });

  const auto t0 = std::chrono::steady_clock::now();
  auto append_log = [&](int code, const std::string& body, const std::string& digest, const json& timing) {
    if (ctx.log_dir.empty()) return;
    try {
      fs::create_directories(ctx.log_dir);
      std::vector<std::string> args(argv, argv + argc);
      json record{{"argv", args},           {"config", ctx.config()}, {"inputs", ctx.inputs},
                  {"output_digest", digest}, {"exit_code", code},      {"outcome", json::parse(body)},
                  {"timing", timing}};
      std::ofstream log(fs::path(ctx.log_dir) / "runs.ndjson", std::ios::app);
      log << record.dump() << "\n";
    } catch (const std::exception& e) {
      std::cerr << "warning: run log not written: " << e.what() << "\n";
    }
  };

  int code = 0;
  json result;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    // options are not stored when parsing stops early
    for (int i = 1; i < argc; ++i) {
      const std::string a = argv[i];
      if (a == "--log-dir" && i + 1 < argc) ctx.log_dir = argv[i + 1];
      if (a.rfind("--log-dir=", 0) == 0) ctx.log_dir = a.substr(10);
    }
    const std::string body = json{{"error", e.what()}, {"kind", "usage"}}.dump();
    append_log(kUsage, body, sha256_hex(body), json::object());
    return kUsage;
  }

  try {
    ctx.budget.lemma2_products = ctx.budget.lemma1_products;
    ctx.budget.phase_ms = budget_ms ? *budget_ms : Budget::from_env().phase_ms;
    result = action();
  } catch (const BudgetExceeded& e) {
    code = kBudget;
    result = {{"error", e.what()}, {"kind", "budget"}};
  } catch (const std::invalid_argument& e) {
    code = kInvalid;
    result = {{"error", e.what()}, {"kind", "invalid_input"}};
  } catch (const std::domain_error& e) {
    code = kInvalid;
    result = {{"error", e.what()}, {"kind", "invalid_input"}};
  } catch (const std::out_of_range& e) {
    code = kInvalid;
    result = {{"error", e.what()}, {"kind", "invalid_input"}};
  } catch (const std::exception& e) {
    code = kInvalid;
    result = {{"error", e.what()}, {"kind", "failure"}};
  }
  const double wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  json timing = result.contains("timing") ? result["timing"] : json::object();
  timing["wall_ms"] = wall_ms;
  std::string body = canonical(result);

  if (code == 0 && !ctx.out_path.empty()) {
    std::ofstream out(ctx.out_path, std::ios::binary);
    if (!out) {
      code = kInvalid;
      result = {{"error", "cannot write " + ctx.out_path}, {"kind", "invalid_input"}};
      body = canonical(result);
    } else {
      out << json::parse(body).dump(2) << "\n";
    }
  }

  json printed = result;
  if (printed.is_object()) printed["timing"] = timing;
  std::cout << printed.dump(2) << std::endl;

  append_log(code, body, sha256_hex(body), timing);
  return code;
}
