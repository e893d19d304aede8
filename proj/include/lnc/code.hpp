#pragma once

// Scalar and vector linear codes on a Network.  Data units are row vectors
// and kernels multiply on the right: m_e = sum_d m_d K_{d,e}.

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <thread>

#include "matrix.hpp"
#include "network.hpp"
#include "phi.hpp"

namespace lnc {

class CodeAssignment {
 public:
  CodeAssignment(std::shared_ptr<const Network> net, Field field, unsigned dim)
      : net_(std::move(net)), field_(std::move(field)), dim_(dim) {
    if (!net_) throw std::invalid_argument("code needs a network");
    if (dim_ == 0) throw std::invalid_argument("code dimension must be positive");
  }

  const Network& net() const { return *net_; }
  const std::shared_ptr<const Network>& net_ptr() const { return net_; }
  const Field& field() const { return field_; }
  unsigned dim() const { return dim_; }
  const std::map<std::pair<EdgeId, EdgeId>, MatF>& kernels() const { return kernels_; }

  void set(EdgeId d, EdgeId e, MatF k) {
    const Edge& ed = net_->edge(d);
    const Edge& ee = net_->edge(e);
    if (ed.head != ee.tail) throw std::invalid_argument("kernel on non-adjacent pair (" + std::to_string(d) + "," + std::to_string(e) + ")");
    if (k.rows() != dim_ || k.cols() != dim_) throw std::invalid_argument("kernel has wrong shape");
    if (!(*k.field() == *field_)) throw std::invalid_argument("kernel over a different field");
    kernels_.insert_or_assign({d, e}, std::move(k));
  }
  void set_scalar(EdgeId d, EdgeId e, u64 value) {
    if (dim_ != 1) throw std::logic_error("set_scalar on a vector code");
    set(d, e, MatF::scalar(field_, 1, value));
  }
  /// Kernel for (d,e); unassigned pairs read as zero.
  const MatF* kernel(EdgeId d, EdgeId e) const {
    auto it = kernels_.find({d, e});
    return it == kernels_.end() ? nullptr : &it->second;
  }

 private:
  std::shared_ptr<const Network> net_;
  Field field_;
  unsigned dim_;
  std::map<std::pair<EdgeId, EdgeId>, MatF> kernels_;
};

/// Global encoding kernels F_e, one (omega*L) x L matrix per edge.
struct GlobalKernels {
  std::vector<MatF> f;
};

inline GlobalKernels propagate(const CodeAssignment& code) {
  const Network& net = code.net();
  const std::size_t w = net.omega(), L = code.dim();
  GlobalKernels g;
  g.f.reserve(net.edge_count());
  const auto& src = net.out_edges(net.source());
  for (const Edge& e : net.edges()) {
    MatF fe(code.field(), w * L, L);
    if (e.tail == net.source()) {
      const std::size_t i = static_cast<std::size_t>(std::find(src.begin(), src.end(), e.id) - src.begin());
      fe.set_block(i * L, 0, MatF::identity(code.field(), L));
    } else {
      for (EdgeId d : net.in_edges(e.tail)) {
        if (d >= e.id) throw std::logic_error("edge order is not topological");
        if (const MatF* k = code.kernel(d, e.id)) fe = fe + g.f[d] * *k;
      }
    }
    g.f.push_back(std::move(fe));
  }
  return g;
}

struct ReceiverResult {
  NodeId receiver;
  std::size_t rank;
  bool full;
};

struct SolutionReport {
  bool solution = true;
  std::size_t required_rank = 0;
  std::vector<ReceiverResult> receivers;
  std::vector<NodeId> failing;
  GlobalKernels global;
  /// Decoding matrices D_t, indexed like `receivers`; empty for failures.
  std::vector<std::optional<MatF>> decoders;
};

inline MatF receiver_matrix(const CodeAssignment& code, const GlobalKernels& g, NodeId t) {
  std::vector<MatF> parts;
  for (EdgeId e : code.net().in_edges(t)) parts.push_back(g.f[e]);
  return hstack(parts);
}

/// Checks full rank omega*L at every receiver and caches decoding matrices.
inline SolutionReport is_solution(const CodeAssignment& code, unsigned threads = 1) {
  SolutionReport rep;
  rep.global = propagate(code);
  const Network& net = code.net();
  rep.required_rank = net.omega() * code.dim();
  const auto& ts = net.receivers();
  rep.receivers.resize(ts.size());
  rep.decoders.resize(ts.size());
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const MatF x = receiver_matrix(code, rep.global, ts[i]);
      const std::size_t r = x.rank();
      rep.receivers[i] = {ts[i], r, r == rep.required_rank};
      if (r == rep.required_rank) rep.decoders[i] = x.right_inverse();
    }
  };
  threads = std::max<unsigned>(1, std::min<unsigned>(threads, static_cast<unsigned>(ts.size())));
  if (threads == 1) {
    work(0, ts.size());
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, ts.size() * t / threads, ts.size() * (t + 1) / threads);
    for (auto& th : pool) th.join();
  }
  for (const auto& r : rep.receivers)
    if (!r.full) {
      rep.solution = false;
      rep.failing.push_back(r.receiver);
    }
  return rep;
}

/// Edge messages for a source message row vector of length omega*L.
inline std::vector<MatF> propagate_message(const CodeAssignment& code, const MatF& message) {
  const Network& net = code.net();
  const std::size_t L = code.dim();
  if (message.rows() != 1 || message.cols() != net.omega() * L) throw std::invalid_argument("message has wrong shape");
  std::vector<MatF> m;
  m.reserve(net.edge_count());
  const auto& src = net.out_edges(net.source());
  for (const Edge& e : net.edges()) {
    if (e.tail == net.source()) {
      const std::size_t i = static_cast<std::size_t>(std::find(src.begin(), src.end(), e.id) - src.begin());
      m.push_back(message.block(0, i * L, 1, L));
      continue;
    }
    MatF me(code.field(), 1, L);
    for (EdgeId d : net.in_edges(e.tail))
      if (const MatF* k = code.kernel(d, e.id)) me = me + m[d] * *k;
    m.push_back(std::move(me));
  }
  return m;
}

/// [m_e]_{e in In(t)} D_t for receiver index i of the report.
inline MatF decode_at(const CodeAssignment& code, const SolutionReport& rep, std::size_t i,
                      const std::vector<MatF>& edge_messages) {
  if (!rep.decoders.at(i)) throw std::domain_error("receiver has no decoding matrix");
  std::vector<MatF> parts;
  for (EdgeId e : code.net().in_edges(rep.receivers[i].receiver)) parts.push_back(edge_messages[e]);
  return hstack(parts) * *rep.decoders[i];
}

inline MatF random_matrix(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  MatF m(f, rows, cols);
  std::uniform_int_distribution<u64> dist(0, f->size() - 1);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, dist(rng));
  return m;
}

struct DecodeOutcome {
  bool ok = true;
  std::size_t trials = 0;
  std::size_t mismatches = 0;
};

/// Random messages pushed edge by edge through the code and decoded at every
/// receiver.  The code must be a solution.
inline DecodeOutcome simulate_decode(const CodeAssignment& code, std::size_t trials, u64 seed) {
  const SolutionReport rep = is_solution(code);
  if (!rep.solution) throw std::domain_error("simulate_decode needs a solution");
  std::mt19937_64 rng(seed);
  DecodeOutcome out;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const MatF msg = random_matrix(code.field(), 1, code.net().omega() * code.dim(), rng);
    const auto edge_msgs = propagate_message(code, msg);
    for (std::size_t i = 0; i < rep.receivers.size(); ++i)
      if (decode_at(code, rep, i, edge_msgs) != msg) ++out.mismatches;
    ++out.trials;
  }
  out.ok = out.mismatches == 0;
  return out;
}

/// Componentwise Phi of a scalar code over GF(p^k): a vector code of
/// dimension k over GF(p).
inline CodeAssignment lift_scalar(const CodeAssignment& code) {
  if (code.dim() != 1) throw std::invalid_argument("lift_scalar needs a scalar code");
  const FieldSpec& spec = *code.field();
  CodeAssignment out(code.net_ptr(), prime_field(spec.p()), spec.k());
  for (const auto& [pair, k] : code.kernels()) out.set(pair.first, pair.second, phi_lift(code.field(), k.at(0, 0)));
  return out;
}

/// Block-diagonal direct sum of scalar codes over GF(p^{L_1}), ..., GF(p^{L_m})
/// on one network: a vector code of dimension L_1 + ... + L_m over GF(p).
inline CodeAssignment direct_sum(const std::vector<CodeAssignment>& codes) {
  if (codes.empty()) throw std::invalid_argument("direct_sum needs at least one code");
  const u64 p = codes[0].field()->p();
  unsigned total = 0;
  for (const auto& c : codes) {
    if (c.dim() != 1) throw std::invalid_argument("direct_sum takes scalar codes");
    if (c.field()->p() != p) throw std::invalid_argument("direct_sum codes must share the base prime");
    if (c.net_ptr() != codes[0].net_ptr()) throw std::invalid_argument("direct_sum codes must share the network");
    total += c.field()->k();
  }
  std::set<std::pair<EdgeId, EdgeId>> pairs;
  for (const auto& c : codes)
    for (const auto& [pair, k] : c.kernels()) pairs.insert(pair);
  CodeAssignment out(codes[0].net_ptr(), prime_field(p), total);
  for (const auto& pair : pairs) {
    std::vector<MatF> blocks;
    for (const auto& c : codes) {
      const MatF* k = c.kernel(pair.first, pair.second);
      blocks.push_back(phi_lift(c.field(), k ? k->at(0, 0) : 0));
    }
    out.set(pair.first, pair.second, block_diag(blocks));
  }
  return out;
}

}  // namespace lnc
