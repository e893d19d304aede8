#pragma once

// Acyclic multigraph with a unique source and a receiver set, unit-capacity
// max-flow, and generators for the network families used throughout.

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "budget.hpp"
#include "numtheory.hpp"

namespace lnc {

using NodeId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  EdgeId id;
  NodeId tail;
  NodeId head;
};

/// Which generator produced a network, with its parameters.  Solvers use it
/// to pick a normal-form search; it plays no role in validation.
struct FamilyTag {
  std::string name;  // "n-omega-d", "combination", "composite", or empty
  std::vector<u64> d;
  u64 n_plus_1 = 0;
};

class Network {
 public:
  NodeId add_node(std::string name) {
    names_.push_back(std::move(name));
    in_.emplace_back();
    out_.emplace_back();
    return names_.size() - 1;
  }

  EdgeId add_edge(NodeId tail, NodeId head) {
    if (tail >= names_.size() || head >= names_.size()) throw std::out_of_range("edge endpoint out of range");
    const EdgeId id = edges_.size();
    edges_.push_back({id, tail, head});
    out_[tail].push_back(id);
    in_[head].push_back(id);
    return id;
  }

  void set_source(NodeId s) { source_ = s; }
  void add_receiver(NodeId t) { receivers_.push_back(t); }
  void set_family(FamilyTag tag) { family_ = std::move(tag); }

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& name(NodeId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<EdgeId>& in_edges(NodeId v) const { return in_.at(v); }
  const std::vector<EdgeId>& out_edges(NodeId v) const { return out_.at(v); }
  NodeId source() const { return source_; }
  const std::vector<NodeId>& receivers() const { return receivers_; }
  std::size_t omega() const { return out_.at(source_).size(); }
  const FamilyTag& family() const { return family_; }

  std::optional<NodeId> find_node(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<NodeId>(it - names_.begin());
  }

  /// Maximum number of edge-disjoint paths from the source whose last edge
  /// lies in `targets` (unit capacities, super-sink behind the targets).
  std::size_t maxflow_to_edges(const std::vector<EdgeId>& targets) const {
    if (targets.empty()) throw std::invalid_argument("maxflow needs a nonempty edge set");
    for (EdgeId e : targets)
      if (e >= edges_.size()) throw std::out_of_range("unknown edge id " + std::to_string(e));
    // Residual graph: node per original node, one extra node per target edge
    // (the edge is split through it), plus the sink.
    const std::size_t n0 = names_.size();
    std::vector<std::size_t> split(edges_.size(), SIZE_MAX);
    std::size_t count = n0;
    for (EdgeId e : targets)
      if (split[e] == SIZE_MAX) split[e] = count++;
    const std::size_t sink = count++;
    struct Arc {
      std::size_t to, rev;
      int cap;
    };
    std::vector<std::vector<Arc>> g(count);
    auto add_arc = [&](std::size_t u, std::size_t v, int cap) {
      g[u].push_back({v, g[v].size(), cap});
      g[v].push_back({u, g[u].size() - 1, 0});
    };
    for (const Edge& e : edges_) {
      if (split[e.id] == SIZE_MAX) {
        add_arc(e.tail, e.head, 1);
      } else {
        add_arc(e.tail, split[e.id], 1);
        add_arc(split[e.id], e.head, 1);
        add_arc(split[e.id], sink, 1);
      }
    }
    std::size_t flow = 0;
    while (true) {
      std::vector<std::pair<std::size_t, std::size_t>> parent(count, {SIZE_MAX, 0});
      std::queue<std::size_t> q;
      q.push(source_);
      parent[source_] = {source_, 0};
      while (!q.empty() && parent[sink].first == SIZE_MAX) {
        const std::size_t u = q.front();
        q.pop();
        for (std::size_t i = 0; i < g[u].size(); ++i) {
          const Arc& a = g[u][i];
          if (a.cap > 0 && parent[a.to].first == SIZE_MAX) {
            parent[a.to] = {u, i};
            q.push(a.to);
          }
        }
      }
      if (parent[sink].first == SIZE_MAX) break;
      for (std::size_t v = sink; v != source_;) {
        auto [u, i] = parent[v];
        g[u][i].cap -= 1;
        g[v][g[u][i].rev].cap += 1;
        v = u;
      }
      ++flow;
    }
    return flow;
  }

  std::size_t maxflow_to_node(NodeId t) const { return maxflow_to_edges(in_.at(t)); }

  /// Checks the model invariants; returns a description of the first
  /// violation, or nothing.
  std::optional<std::string> validate() const {
    if (source_ >= names_.size()) return "source node out of range";
    if (!in_[source_].empty()) return "source has incoming edges";
    for (NodeId v = 0; v < names_.size(); ++v)
      if (v != source_ && in_[v].empty() && !out_[v].empty()) return "node " + names_[v] + " has no incoming edges";
    // Edge ids must form a topological order led by the source edges.
    for (const Edge& e : edges_)
      for (EdgeId d : in_[e.tail])
        if (d >= e.id) return "edge order is not topological at edge " + std::to_string(e.id);
    for (std::size_t i = 0; i < out_[source_].size(); ++i)
      if (out_[source_][i] != i) return "source edges must come first";
    const std::size_t w = omega();
    for (NodeId t : receivers_) {
      if (t >= names_.size()) return "receiver out of range";
      if (in_[t].empty()) return "receiver " + names_[t] + " has no incoming edges";
      if (maxflow_to_node(t) != w) return "maxflow to receiver " + names_[t] + " is not omega";
    }
    return std::nullopt;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> in_, out_;
  NodeId source_ = 0;
  std::vector<NodeId> receivers_;
  FamilyTag family_;
};

/// Binomial coefficient, saturating at UINT64_MAX.
inline u64 binomial(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (u64 i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<u64>(r);
}

/// Edge ids of the N_{omega,d} layers, in the naming of the generator.
struct NOmegaDLayout {
  std::size_t omega = 0;
  std::vector<u64> d;
  std::vector<EdgeId> source_edges;             // s -> u_j
  std::vector<EdgeId> own_edges;                // u_j -> v_j
  std::vector<EdgeId> next_edges;               // u_{j+1} -> v_j
  std::vector<std::vector<EdgeId>> grey_edges;  // e_{jk}: v_j -> g_{jk}
  std::vector<std::vector<NodeId>> grey_nodes;
};

inline NOmegaDLayout n_omega_d_layout(const Network& net) {
  const FamilyTag& tag = net.family();
  if (tag.name != "n-omega-d") throw std::invalid_argument("network is not an N_{omega,d} instance");
  NOmegaDLayout lay;
  lay.omega = tag.d.size();
  lay.d = tag.d;
  const std::size_t w = lay.omega;
  EdgeId e = 0;
  for (std::size_t j = 0; j < w; ++j) lay.source_edges.push_back(e++);
  for (std::size_t j = 0; j < w; ++j) {
    lay.own_edges.push_back(e++);
    lay.next_edges.push_back(e++);
  }
  lay.grey_edges.resize(w);
  lay.grey_nodes.resize(w);
  for (std::size_t j = 0; j < w; ++j)
    for (u64 k = 0; k < lay.d[j]; ++k) {
      lay.grey_edges[j].push_back(e);
      lay.grey_nodes[j].push_back(net.edge(e).head);
      ++e;
    }
  return lay;
}

/// N_{omega,d}: s -> u_j -> v_j (v_j fed by u_j and u_{j+1}) -> d_j grey
/// nodes per v_j -> one receiver per omega-set of grey nodes with maxflow omega.
inline Network gen_n_omega_d(std::size_t omega, const std::vector<u64>& d, const Budget& budget = {}) {
  if (omega < 3) throw std::invalid_argument("omega must be at least 3");
  if (d.size() != omega) throw std::invalid_argument("d must have omega entries");
  for (u64 x : d)
    if (x < 2) throw std::invalid_argument("each d_j must exceed 1");
  const u64 grey_total = std::accumulate(d.begin(), d.end(), u64{0});
  const u64 subsets = binomial(grey_total, omega);
  if (subsets > budget.receiver_subsets)
    throw BudgetExceeded("N_{omega,d} has " + (subsets == UINT64_MAX ? std::string("> 2^64") : std::to_string(subsets)) +
                         " candidate receiver sets, cap is " + std::to_string(budget.receiver_subsets));

  Network net;
  const NodeId s = net.add_node("s");
  net.set_source(s);
  std::vector<NodeId> u, v;
  for (std::size_t j = 1; j <= omega; ++j) u.push_back(net.add_node("u" + std::to_string(j)));
  for (std::size_t j = 1; j <= omega; ++j) v.push_back(net.add_node("v" + std::to_string(j)));
  for (std::size_t j = 0; j < omega; ++j) net.add_edge(s, u[j]);
  for (std::size_t j = 0; j < omega; ++j) {
    net.add_edge(u[j], v[j]);
    net.add_edge(u[(j + 1) % omega], v[j]);
  }
  std::vector<NodeId> grey;
  std::vector<EdgeId> grey_edge;
  for (std::size_t j = 0; j < omega; ++j)
    for (u64 k = 1; k <= d[j]; ++k) {
      const NodeId g = net.add_node("g" + std::to_string(j + 1) + "_" + std::to_string(k));
      grey_edge.push_back(net.add_edge(v[j], g));
      grey.push_back(g);
    }
  net.set_family({"n-omega-d", d, 0});

  // Scan omega-subsets of grey nodes in lexicographic order of indices.
  std::vector<std::size_t> idx(omega);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<std::size_t>> accepted;
  const std::size_t total = grey.size();
  while (true) {
    std::vector<EdgeId> es;
    for (std::size_t i : idx) es.push_back(grey_edge[i]);
    if (net.maxflow_to_edges(es) == omega) accepted.push_back(idx);
    std::size_t pos = omega;
    while (pos > 0 && idx[pos - 1] == total - omega + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < omega; ++i) idx[i] = idx[i - 1] + 1;
  }
  for (const auto& set : accepted) {
    std::string name = "t";
    for (std::size_t i : set) name += "_" + net.name(grey[i]).substr(1);
    const NodeId t = net.add_node(name);
    for (std::size_t i : set) net.add_edge(grey[i], t);
    net.add_receiver(t);
  }
  return net;
}

inline Network gen_swirl(std::size_t omega, const Budget& budget = {}) {
  return gen_n_omega_d(omega, std::vector<u64>(omega, 2), budget);
}

/// (n+1,2)-combination network.  The source keeps its two source edges,
/// which feed a hub h; h fans out to the n+1 middle nodes, and each pair of
/// middle nodes feeds one receiver.
inline Network gen_combination(u64 n_plus_1) {
  if (n_plus_1 < 3) throw std::invalid_argument("combination network needs n >= 2");
  Network net;
  const NodeId s = net.add_node("s");
  net.set_source(s);
  const NodeId h = net.add_node("h");
  net.add_edge(s, h);
  net.add_edge(s, h);
  std::vector<NodeId> mid;
  for (u64 i = 1; i <= n_plus_1; ++i) {
    mid.push_back(net.add_node("m" + std::to_string(i)));
    net.add_edge(h, mid.back());
  }
  for (u64 i = 0; i < n_plus_1; ++i)
    for (u64 j = i + 1; j < n_plus_1; ++j) {
      const NodeId t = net.add_node("t" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      net.add_edge(mid[i], t);
      net.add_edge(mid[j], t);
      net.add_receiver(t);
    }
  net.set_family({"combination", {}, n_plus_1});
  return net;
}

/// Node and edge maps from a subnetwork copied into a composite.
struct Embedding {
  std::vector<NodeId> node;
  std::vector<EdgeId> edge;
};

namespace detail {

/// Copies the nodes of `sub` into `net` under a name prefix.  Edges are
/// added by the caller so that the composite edge order stays topological.
inline Embedding embed(Network& net, const Network& sub, const std::string& prefix) {
  Embedding emb;
  for (NodeId v = 0; v < sub.node_count(); ++v) emb.node.push_back(net.add_node(prefix + sub.name(v)));
  emb.edge.assign(sub.edge_count(), SIZE_MAX);
  return emb;
}

}  // namespace detail

/// Algorithm 1: super-source s' -> hub s (omega edges); s -> source of N1
/// (omega edges); s -> source of the (n+1,2)-combination network N2 (2 edges);
/// omega - 2 direct edges from s to every receiver of N2.
inline Network compose_algorithm1(const Network& n1, u64 n) {
  const std::size_t w = n1.omega();
  if (w < 2) throw std::invalid_argument("N1 must have source dimension at least 2");
  const Network n2 = gen_combination(n + 1);
  Network net;
  const NodeId sp = net.add_node("s'");
  net.set_source(sp);
  const NodeId hub = net.add_node("s");
  for (std::size_t i = 0; i < w; ++i) net.add_edge(sp, hub);
  Embedding e1 = detail::embed(net, n1, "N1.");
  Embedding e2 = detail::embed(net, n2, "N2.");
  for (std::size_t i = 0; i < w; ++i) net.add_edge(hub, e1.node[n1.source()]);
  for (std::size_t i = 0; i < 2; ++i) net.add_edge(hub, e2.node[n2.source()]);
  // Subnetwork edges keep their relative (topological) order.
  for (const Edge& e : n1.edges()) e1.edge[e.id] = net.add_edge(e1.node[e.tail], e1.node[e.head]);
  for (const Edge& e : n2.edges()) e2.edge[e.id] = net.add_edge(e2.node[e.tail], e2.node[e.head]);
  for (NodeId t : n2.receivers())
    for (std::size_t i = 0; i + 2 < w; ++i) net.add_edge(hub, e2.node[t]);
  for (NodeId t : n1.receivers()) net.add_receiver(e1.node[t]);
  for (NodeId t : n2.receivers()) net.add_receiver(e2.node[t]);
  net.set_family({"composite", {}, n + 1});
  return net;
}

}  // namespace lnc
