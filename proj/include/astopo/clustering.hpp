#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "astopo/error.hpp"
#include "astopo/graph.hpp"
#include "astopo/parallel.hpp"

namespace astopo {

/// Number of links among the neighbors of every node (its triangle count).
inline std::vector<std::uint64_t> neighbor_links(const AsGraph& g, unsigned workers = 1) {
  std::vector<std::uint64_t> links(g.node_count(), 0);
  for_each_chunk(ChunkPlan::for_items(g.node_count()), workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<char> mark(g.node_count(), 0);
    for (auto v = static_cast<AsGraph::Index>(begin); v < end; ++v) {
      auto nb = g.neighbors(v);
      if (nb.size() < 2) continue;
      for (auto u : nb) mark[u] = 1;
      std::uint64_t count = 0;
      for (auto u : nb) {
        for (auto w : g.neighbors(u)) count += mark[w];
      }
      for (auto u : nb) mark[u] = 0;
      links[v] = count / 2;
    }
  });
  return links;
}

/// Exact integer inputs of every clustering statistic.
struct ClusteringTally {
  struct Row {
    std::uint64_t nodes = 0;
    std::uint64_t links = 0;  // Σ over degree-k nodes of links among neighbors
  };
  std::map<std::size_t, Row> by_degree;  // k >= 2 only
  std::uint64_t n = 0;
  std::uint64_t closed = 0;     // Σ_v links(v) = 3 × triangles
  std::uint64_t triplets = 0;   // Σ_v C(deg v, 2)

  std::uint64_t triangles() const { return closed / 3; }
};

inline ClusteringTally clustering_tally(const AsGraph& g, unsigned workers = 1) {
  ClusteringTally t;
  t.n = g.node_count();
  auto links = neighbor_links(g, workers);
  for (AsGraph::Index v = 0; v < g.node_count(); ++v) {
    const std::uint64_t k = g.degree(v);
    if (k < 2) continue;
    auto& row = t.by_degree[k];
    ++row.nodes;
    row.links += links[v];
    t.closed += links[v];
    t.triplets += k * (k - 1) / 2;
  }
  return t;
}

/// C(k) from a tally: mean over degree-k nodes of links / C(k,2).
template <class Scalar = double>
std::map<std::size_t, Scalar> local_clustering(const ClusteringTally& t) {
  std::map<std::size_t, Scalar> out;
  for (const auto& [k, row] : t.by_degree) {
    const std::uint64_t pairs = static_cast<std::uint64_t>(k) * (k - 1) / 2;
    out[k] = Scalar(row.links) / (Scalar(pairs) * Scalar(row.nodes));
  }
  return out;
}

template <class Scalar = double>
std::map<std::size_t, Scalar> local_clustering(const AsGraph& g, unsigned workers = 1) {
  return local_clustering<Scalar>(clustering_tally(g, workers));
}

template <class Scalar = double>
struct BasicClusteringSummary {
  Scalar mean{};   // Σ_k C(k) P(k), degree < 2 contributing 0
  Scalar coeff{};  // 3 × triangles / connected triplets
};

using ClusteringSummary = BasicClusteringSummary<double>;

template <class Scalar = double>
BasicClusteringSummary<Scalar> clustering_summaries(const ClusteringTally& t) {
  if (t.n < 3) throw Error(Errc::undefined_metric, "clustering needs at least three nodes");
  if (t.triplets == 0) throw Error(Errc::undefined_metric, "clustering coefficient undefined: no connected triplet");
  BasicClusteringSummary<Scalar> s;
  for (const auto& [k, c] : local_clustering<Scalar>(t)) {
    s.mean += c * Scalar(t.by_degree.at(k).nodes) / Scalar(t.n);
  }
  s.coeff = Scalar(t.closed) / Scalar(t.triplets);
  return s;
}

template <class Scalar = double>
BasicClusteringSummary<Scalar> clustering_summaries(const AsGraph& g, unsigned workers = 1) {
  return clustering_summaries<Scalar>(clustering_tally(g, workers));
}

struct RichClubPoint {
  std::size_t rho = 0;
  double fraction = 0.0;  // rho / n
  double phi = 0.0;
};

/// Order of nodes by non-increasing degree, ties by ascending ASN.
inline std::vector<AsGraph::Index> degree_rank_order(const AsGraph& g) {
  std::vector<AsGraph::Index> order(g.node_count());
  std::iota(order.begin(), order.end(), 0);
  // Indices already ascend with ASN, so a stable sort on degree alone
  // resolves ties by ASN.
  std::stable_sort(order.begin(), order.end(),
                   [&](AsGraph::Index a, AsGraph::Index b) { return g.degree(a) > g.degree(b); });
  return order;
}

/// φ(ρ/n) for ρ = 2..n: edge density of the subgraph induced by the ρ
/// highest-ranked nodes.
inline std::vector<RichClubPoint> rich_club(const AsGraph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw Error(Errc::empty_graph, "rich-club connectivity needs at least two nodes");
  auto order = degree_rank_order(g);
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;

  std::vector<RichClubPoint> out;
  out.reserve(n - 1);
  std::uint64_t inside = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (auto u : g.neighbors(order[r])) inside += rank[u] < r ? 1 : 0;
    const std::size_t rho = r + 1;
    if (rho < 2) continue;
    const double pairs = static_cast<double>(rho) * static_cast<double>(rho - 1) / 2.0;
    out.push_back({rho, static_cast<double>(rho) / static_cast<double>(n), static_cast<double>(inside) / pairs});
  }
  return out;
}

}  // namespace astopo
