#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <optional>
#include <utility>
#include <vector>

#include "astopo/degree.hpp"
#include "astopo/error.hpp"
#include "astopo/graph.hpp"

namespace astopo {

/// Node and edge overlap of two graphs: the six set-difference counts plus,
/// on request, the members of each bucket.
struct GraphDelta {
  std::size_t nodes_both = 0;
  std::size_t nodes_only_a = 0;
  std::size_t nodes_only_b = 0;
  std::size_t edges_both = 0;
  std::size_t edges_only_a = 0;
  std::size_t edges_only_b = 0;

  struct Sets {
    std::vector<Asn> nodes_both, nodes_only_a, nodes_only_b;
    std::vector<Edge> edges_both, edges_only_a, edges_only_b;
  };
  std::optional<Sets> sets;
};

namespace detail {

template <class T>
void split_sorted(const std::vector<T>& a, const std::vector<T>& b, std::vector<T>& both, std::vector<T>& only_a,
                  std::vector<T>& only_b) {
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
}

}  // namespace detail

inline GraphDelta graph_delta(const AsGraph& a, const AsGraph& b, bool keep_sets = false) {
  GraphDelta::Sets s;
  const std::vector<Asn> na(a.nodes().begin(), a.nodes().end());
  const std::vector<Asn> nb(b.nodes().begin(), b.nodes().end());
  detail::split_sorted(na, nb, s.nodes_both, s.nodes_only_a, s.nodes_only_b);
  detail::split_sorted(a.edges(), b.edges(), s.edges_both, s.edges_only_a, s.edges_only_b);

  GraphDelta d;
  d.nodes_both = s.nodes_both.size();
  d.nodes_only_a = s.nodes_only_a.size();
  d.nodes_only_b = s.nodes_only_b.size();
  d.edges_both = s.edges_both.size();
  d.edges_only_a = s.edges_only_a.size();
  d.edges_only_b = s.edges_only_b.size();
  if (keep_sets) d.sets = std::move(s);
  return d;
}

/// Degree distribution of the nodes of a that are absent from b, with degrees
/// measured in a. Its mean() is the average degree of those nodes.
inline DegreeDistribution exclusive_degree_distribution(const AsGraph& a, const AsGraph& b) {
  std::vector<std::size_t> degrees;
  for (AsGraph::Index i = 0; i < a.node_count(); ++i) {
    if (!b.contains(a.asn(i))) degrees.push_back(a.degree(i));
  }
  if (degrees.empty()) throw Error(Errc::empty_set, "every node of the first graph also appears in the second");
  return DegreeDistribution::from_degrees(degrees);
}

/// Both graphs induced on their common node set.
inline std::pair<AsGraph, AsGraph> reduced_pair(const AsGraph& a, const AsGraph& b) {
  std::vector<Asn> common;
  std::set_intersection(a.nodes().begin(), a.nodes().end(), b.nodes().begin(), b.nodes().end(),
                        std::back_inserter(common));
  if (common.empty()) throw Error(Errc::empty_intersection, "the two graphs share no node");
  return {induced_subgraph(a, common), induced_subgraph(b, common)};
}

}  // namespace astopo
