#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "astopo/error.hpp"
#include "astopo/graph.hpp"

namespace astopo {

/// Average node degree 2m/n. Isolated nodes count toward n.
inline double average_degree(const AsGraph& g) {
  if (g.empty()) throw Error(Errc::empty_graph, "average degree needs at least one node");
  return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

/// Node count per degree. Degree-0 nodes are tabulated like any other.
struct DegreeDistribution {
  std::map<std::size_t, std::size_t> counts;
  std::size_t n = 0;
  std::size_t k_max = 0;

  static DegreeDistribution from_degrees(const std::vector<std::size_t>& degrees) {
    DegreeDistribution d;
    for (auto k : degrees) ++d.counts[k];
    d.n = degrees.size();
    d.k_max = d.counts.empty() ? 0 : d.counts.rbegin()->first;
    return d;
  }

  std::size_t count(std::size_t k) const {
    auto it = counts.find(k);
    return it == counts.end() ? 0 : it->second;
  }

  double pdf(std::size_t k) const { return static_cast<double>(count(k)) / static_cast<double>(n); }

  /// Fraction of nodes with degree >= k.
  double ccdf(std::size_t k) const {
    std::size_t tail = 0;
    for (auto it = counts.lower_bound(k); it != counts.end(); ++it) tail += it->second;
    return static_cast<double>(tail) / static_cast<double>(n);
  }

  /// Σ k P(k)
  double mean() const {
    double sum = 0.0;
    for (const auto& [k, c] : counts) sum += static_cast<double>(k) * static_cast<double>(c);
    return sum / static_cast<double>(n);
  }

  std::vector<std::pair<std::size_t, double>> pdf_points() const {
    std::vector<std::pair<std::size_t, double>> out;
    for (const auto& [k, c] : counts) out.emplace_back(k, static_cast<double>(c) / static_cast<double>(n));
    return out;
  }

  /// CCDF at every degree present, ascending.
  std::vector<std::pair<std::size_t, double>> ccdf_points() const {
    std::vector<std::pair<std::size_t, double>> out;
    std::size_t tail = n;
    for (const auto& [k, c] : counts) {
      out.emplace_back(k, static_cast<double>(tail) / static_cast<double>(n));
      tail -= c;
    }
    return out;
  }
};

inline DegreeDistribution degree_distribution(const AsGraph& g) {
  if (g.empty()) throw Error(Errc::empty_graph, "degree distribution needs at least one node");
  std::vector<std::size_t> degrees(g.node_count());
  for (AsGraph::Index i = 0; i < g.node_count(); ++i) degrees[i] = g.degree(i);
  return DegreeDistribution::from_degrees(degrees);
}

/// Natural cut-off n^(1/(gamma-1)) of a power-law degree distribution.
inline double power_law_max_degree(double n, double gamma) {
  if (!(gamma > 1.0)) throw Error(Errc::invalid_argument, "power-law cut-off needs gamma > 1");
  return std::pow(n, 1.0 / (gamma - 1.0));
}

}  // namespace astopo
