#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "astopo/degree.hpp"
#include "astopo/error.hpp"
#include "astopo/graph.hpp"

namespace astopo {

/// Unordered degree pair, stored with low <= high.
struct DegreePair {
  std::size_t low = 0;
  std::size_t high = 0;

  static DegreePair of(std::size_t k1, std::size_t k2) { return k1 <= k2 ? DegreePair{k1, k2} : DegreePair{k2, k1}; }
  friend auto operator<=>(const DegreePair&, const DegreePair&) = default;
};

/// Joint degree distribution.
///
/// edge_counts holds, for each unordered degree pair, the number of edges whose
/// endpoints have those degrees; every edge is counted exactly once, so the
/// counts sum to m. Two probability views are offered:
///
///   probability(k1,k2)  probability that a random edge joins a k1-degree and
///                       a k2-degree node; sums to 1 over unordered pairs.
///   joint(k1,k2)        symmetric ordered form (random edge end); equals
///                       probability/μ with μ = 1 on the diagonal and 2 off it,
///                       sums to 1 over ordered pairs, and has marginal
///                       Σ_k' joint(k,k') = k P(k) / k̄.
struct JddMatrix {
  std::map<DegreePair, std::uint64_t> edge_counts;
  std::uint64_t m = 0;

  std::uint64_t edges(std::size_t k1, std::size_t k2) const {
    auto it = edge_counts.find(DegreePair::of(k1, k2));
    return it == edge_counts.end() ? 0 : it->second;
  }

  double probability(std::size_t k1, std::size_t k2) const {
    return static_cast<double>(edges(k1, k2)) / static_cast<double>(m);
  }

  double joint(std::size_t k1, std::size_t k2) const {
    double ends = static_cast<double>(edges(k1, k2)) * (k1 == k2 ? 2.0 : 1.0);
    return ends / (2.0 * static_cast<double>(m));
  }

  /// Σ_k' joint(k, k') for every degree that appears in the matrix.
  std::map<std::size_t, double> marginal() const {
    std::map<std::size_t, std::uint64_t> ends;
    for (const auto& [pair, count] : edge_counts) {
      ends[pair.low] += count;
      ends[pair.high] += count;
    }
    std::map<std::size_t, double> out;
    for (const auto& [k, e] : ends) out[k] = static_cast<double>(e) / (2.0 * static_cast<double>(m));
    return out;
  }

  /// Average degree restored from the matrix alone. Isolated nodes leave no
  /// trace in a JDD, so this is the mean over nodes of degree >= 1.
  double recovered_average_degree() const {
    double inverse = 0.0;
    for (const auto& [k, p] : marginal()) inverse += p / static_cast<double>(k);
    return 1.0 / inverse;
  }

  /// P(k) restored from the matrix, over nodes of degree >= 1.
  std::map<std::size_t, double> recovered_degree_distribution() const {
    const double kbar = recovered_average_degree();
    std::map<std::size_t, double> out;
    for (const auto& [k, p] : marginal()) out[k] = kbar * p / static_cast<double>(k);
    return out;
  }
};

inline JddMatrix jdd(const AsGraph& g) {
  if (g.edge_count() == 0) throw Error(Errc::empty_graph, "joint degree distribution needs at least one edge");
  JddMatrix out;
  out.m = g.edge_count();
  for (const auto& e : g.index_edges()) ++out.edge_counts[DegreePair::of(g.degree(e.u), g.degree(e.v))];
  return out;
}

/// P(k2 | k1): probability that a given k1-degree node's neighbor has degree
/// k2, keyed by the ordered pair (k1, k2). Rows exist for every k1 >= 1 with
/// nodes. Throws inconsistent_input when j and d do not describe the same
/// graph (marginal identity off by more than 1e-9).
inline std::map<std::pair<std::size_t, std::size_t>, double> conditional_degree(const JddMatrix& j,
                                                                               const DegreeDistribution& d) {
  const double kbar = d.mean();
  const auto marginal = j.marginal();
  for (const auto& [k, count] : d.counts) {
    if (k == 0 || count == 0) continue;
    auto it = marginal.find(k);
    double restored = it == marginal.end() ? 0.0 : kbar * it->second / static_cast<double>(k);
    if (std::abs(restored - d.pdf(k)) > 1e-9) {
      throw Error(Errc::inconsistent_input, "JDD marginal at k=" + std::to_string(k) + " disagrees with P(k)");
    }
  }
  for (const auto& [k, p] : marginal) {
    if (d.count(k) == 0) {
      throw Error(Errc::inconsistent_input, "JDD has degree " + std::to_string(k) + " absent from P(k)");
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, double> out;
  for (const auto& [pair, count] : j.edge_counts) {
    for (auto [k1, k2] : {std::pair{pair.low, pair.high}, std::pair{pair.high, pair.low}}) {
      out[{k1, k2}] = kbar * j.joint(k1, k2) / (static_cast<double>(k1) * d.pdf(k1));
      if (pair.low == pair.high) break;
    }
  }
  return out;
}

/// k_nn(k) = Σ_k' k' P(k'|k), from a conditional-degree table.
inline std::map<std::size_t, double> knn_from_conditional(
    const std::map<std::pair<std::size_t, std::size_t>, double>& conditional) {
  std::map<std::size_t, double> out;
  for (const auto& [key, p] : conditional) out[key.first] += static_cast<double>(key.second) * p;
  return out;
}

struct NeighborDegreeProfile {
  std::map<std::size_t, double> knn;             // k -> k_nn(k)
  std::map<std::size_t, double> knn_normalized;  // k -> k_nn(k) / (n - 1)
  double mean = 0.0;                              // node average of k_nn over degree >= 1
  double mean_normalized = 0.0;
};

/// Average neighbor degree per degree class, from direct endpoint tallies.
/// Degree-0 nodes have no neighbors and are absent.
inline NeighborDegreeProfile avg_neighbor_degree(const AsGraph& g) {
  std::map<std::size_t, std::pair<std::uint64_t, std::uint64_t>> tally;  // k -> (nodes, Σ neighbor degree)
  for (AsGraph::Index i = 0; i < g.node_count(); ++i) {
    const auto k = g.degree(i);
    if (k == 0) continue;
    std::uint64_t sum = 0;
    for (auto u : g.neighbors(i)) sum += g.degree(u);
    auto& t = tally[k];
    ++t.first;
    t.second += sum;
  }
  NeighborDegreeProfile out;
  const double scale = g.node_count() > 1 ? 1.0 / static_cast<double>(g.node_count() - 1) : 0.0;
  std::uint64_t nodes = 0;
  double weighted = 0.0;
  for (const auto& [k, t] : tally) {
    double knn = static_cast<double>(t.second) / (static_cast<double>(k) * static_cast<double>(t.first));
    out.knn[k] = knn;
    out.knn_normalized[k] = knn * scale;
    nodes += t.first;
    weighted += knn * static_cast<double>(t.first);
  }
  if (nodes > 0) {
    out.mean = weighted / static_cast<double>(nodes);
    out.mean_normalized = out.mean * scale;
  }
  return out;
}

/// Pearson correlation of endpoint degrees over the 2m oriented edges.
/// Sums are exact integers; the single division at the end is the only
/// rounding. Throws undefined_metric when the endpoint-degree variance is 0.
inline double assortativity(const AsGraph& g) {
  if (g.edge_count() < 2) throw Error(Errc::undefined_metric, "assortativity undefined for fewer than two edges");
  using Wide = __int128;
  Wide s1 = 0, s2 = 0, s11 = 0;
  for (const auto& e : g.index_edges()) {
    Wide a = static_cast<Wide>(g.degree(e.u));
    Wide b = static_cast<Wide>(g.degree(e.v));
    s1 += a + b;
    s2 += a * a + b * b;
    s11 += 2 * a * b;
  }
  const Wide ends = 2 * static_cast<Wide>(g.edge_count());
  const Wide num = ends * s11 - s1 * s1;
  const Wide den = ends * s2 - s1 * s1;
  if (den == 0) throw Error(Errc::undefined_metric, "assortativity undefined: all endpoint degrees equal");
  const double r = static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace astopo
