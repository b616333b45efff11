#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "astopo/error.hpp"
#include "astopo/graph.hpp"
#include "astopo/jdd.hpp"
#include "astopo/parallel.hpp"

namespace astopo {

/// Node and edge betweenness over ordered pairs (s, t), s != t.
///
/// A node is credited for every shortest s-t path it lies on, endpoints
/// included, so a star hub reaches the maximum n(n-1). An edge is credited for
/// every ordered pair whose shortest paths cross it; an edge to a degree-1
/// node in a connected graph therefore carries 2(n-1). Unreachable pairs
/// contribute nothing.
template <class Scalar = double>
struct BetweennessResult {
  std::vector<Scalar> node;  // by node index
  std::vector<Scalar> edge;  // by edge id
  Scalar norm{};             // n(n-1)

  Scalar normalized_node(AsGraph::Index i) const { return node[i] / norm; }
  Scalar normalized_edge(std::size_t id) const { return edge[id] / norm; }
};

namespace detail {

// One Brandes pass from source s, adding into node/edge.
template <class Scalar>
struct BrandesWorkspace {
  std::vector<std::int32_t> dist;
  std::vector<Scalar> sigma;
  std::vector<Scalar> delta;
  std::vector<AsGraph::Index> order;

  explicit BrandesWorkspace(std::size_t n) : dist(n, -1), sigma(n), delta(n), order(n) {}

  void accumulate(const AsGraph& g, AsGraph::Index s, std::vector<Scalar>& node, std::vector<Scalar>& edge) {
    std::size_t head = 0, tail = 0;
    order[tail++] = s;
    dist[s] = 0;
    sigma[s] = Scalar(1);
    while (head < tail) {
      const auto v = order[head++];
      for (auto u : g.neighbors(v)) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          sigma[u] = Scalar(0);
          delta[u] = Scalar(0);
          order[tail++] = u;
        }
        if (dist[u] == dist[v] + 1) sigma[u] += sigma[v];
      }
    }
    delta[s] = Scalar(0);
    for (std::size_t pos = tail; pos-- > 1;) {
      const auto w = order[pos];
      const Scalar share = (Scalar(1) + delta[w]) / sigma[w];
      auto nb = g.neighbors(w);
      auto ids = g.neighbor_edges(w);
      for (std::size_t a = 0; a < nb.size(); ++a) {
        const auto v = nb[a];
        if (dist[v] != dist[w] - 1) continue;
        const Scalar c = sigma[v] * share;
        edge[ids[a]] += c;
        delta[v] += c;
      }
      node[w] += delta[w] + Scalar(1);  // interior passes plus w as target
    }
    node[s] += Scalar(static_cast<long>(tail - 1));  // s as source
    for (std::size_t i = 0; i < tail; ++i) dist[order[i]] = -1;
  }
};

}  // namespace detail

/// Brandes accumulation from every source, extended to edges. Sources are
/// split into a fixed chunk plan and partial sums are combined in chunk
/// order, so floating-point results are identical for any worker count.
template <class Scalar = double>
BetweennessResult<Scalar> betweenness(const AsGraph& g, unsigned workers = 1) {
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  if (n < 2) throw Error(Errc::empty_graph, "betweenness needs at least two nodes");

  const auto plan = ChunkPlan::for_items(n);
  std::vector<std::vector<Scalar>> node_part(plan.chunks), edge_part(plan.chunks);
  for_each_chunk(plan, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto& node = node_part[chunk];
    auto& edge = edge_part[chunk];
    node.assign(n, Scalar(0));
    edge.assign(m, Scalar(0));
    detail::BrandesWorkspace<Scalar> ws(n);
    for (auto s = static_cast<AsGraph::Index>(begin); s < end; ++s) ws.accumulate(g, s, node, edge);
  });

  BetweennessResult<Scalar> out;
  out.node.assign(n, Scalar(0));
  out.edge.assign(m, Scalar(0));
  for (std::size_t c = 0; c < plan.chunks; ++c) {
    for (std::size_t i = 0; i < n; ++i) out.node[i] += node_part[c][i];
    for (std::size_t e = 0; e < m; ++e) out.edge[e] += edge_part[c][e];
    node_part[c] = {};
    edge_part[c] = {};
  }
  out.norm = Scalar(static_cast<long>(n)) * Scalar(static_cast<long>(n - 1));
  return out;
}

/// B(k): mean normalized node betweenness over k-degree nodes.
inline std::map<std::size_t, double> node_betweenness_by_degree(const AsGraph& g, const BetweennessResult<double>& b) {
  std::map<std::size_t, std::pair<std::size_t, double>> acc;
  for (AsGraph::Index i = 0; i < g.node_count(); ++i) {
    auto& a = acc[g.degree(i)];
    ++a.first;
    a.second += b.normalized_node(i);
  }
  std::map<std::size_t, double> out;
  for (const auto& [k, a] : acc) out[k] = a.second / static_cast<double>(a.first);
  return out;
}

/// B(k1,k2): mean normalized edge betweenness over edges whose endpoints have
/// degrees {k1, k2}.
inline std::map<DegreePair, double> edge_betweenness_by_degrees(const AsGraph& g, const BetweennessResult<double>& b) {
  if (b.edge.size() != g.edge_count()) {
    throw Error(Errc::inconsistent_input, "betweenness result does not belong to this graph");
  }
  std::map<DegreePair, std::pair<std::size_t, double>> acc;
  const auto edges = g.index_edges();
  for (std::size_t id = 0; id < edges.size(); ++id) {
    auto& a = acc[DegreePair::of(g.degree(edges[id].u), g.degree(edges[id].v))];
    ++a.first;
    a.second += b.normalized_edge(id);
  }
  std::map<DegreePair, double> out;
  for (const auto& [key, a] : acc) out[key] = a.second / static_cast<double>(a.first);
  return out;
}

}  // namespace astopo
