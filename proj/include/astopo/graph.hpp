#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "astopo/asn.hpp"
#include "astopo/error.hpp"

namespace astopo {

/// Immutable undirected simple graph over AS numbers.
///
/// Nodes are kept in ascending ASN order and addressed by a dense index.
/// Adjacency is stored in CSR form with every neighbor list sorted, so any
/// traversal is deterministic. Each undirected edge has an id equal to its
/// position in the sorted (low, high) edge list; neighbor_edges() gives the
/// edge id for every adjacency slot.
class AsGraph {
 public:
  using Index = std::uint32_t;

  struct IndexEdge {
    Index u;
    Index v;
  };

  AsGraph() : offsets_(1, 0) {}

  /// Builds a graph from undirected edges plus optional extra (possibly
  /// isolated) nodes. Duplicates in either orientation collapse.
  /// Throws SelfLoopError on a pair (a, a).
  static AsGraph from_edges(std::vector<Edge> edges, std::vector<Asn> extra_nodes = {}) {
    for (auto& e : edges) {
      if (e.a == e.b) throw SelfLoopError(e.a.value);
      e = make_edge(e.a, e.b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    AsGraph g;
    auto& nodes = g.asns_;
    nodes = std::move(extra_nodes);
    nodes.reserve(nodes.size() + 2 * edges.size());
    for (const auto& e : edges) {
      nodes.push_back(e.a);
      nodes.push_back(e.b);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    nodes.shrink_to_fit();

    g.edges_.reserve(edges.size());
    for (const auto& e : edges) {
      g.edges_.push_back({*g.index_of(e.a), *g.index_of(e.b)});
    }
    g.build_adjacency();
    return g;
  }

  std::size_t node_count() const noexcept { return asns_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return asns_.empty(); }

  std::span<const Asn> nodes() const noexcept { return asns_; }
  Asn asn(Index i) const { return asns_[i]; }

  std::optional<Index> index_of(Asn asn) const {
    auto it = std::lower_bound(asns_.begin(), asns_.end(), asn);
    if (it == asns_.end() || *it != asn) return std::nullopt;
    return static_cast<Index>(it - asns_.begin());
  }

  bool contains(Asn asn) const { return index_of(asn).has_value(); }

  std::span<const Index> neighbors(Index i) const {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }

  std::span<const std::uint32_t> neighbor_edges(Index i) const {
    return {arc_edges_.data() + offsets_[i], arc_edges_.data() + offsets_[i + 1]};
  }

  std::size_t degree(Index i) const { return offsets_[i + 1] - offsets_[i]; }

  std::size_t degree_of(Asn asn) const {
    auto i = index_of(asn);
    if (!i) throw Error(Errc::invalid_argument, "AS" + std::to_string(asn.value) + " not in graph");
    return degree(*i);
  }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (Index i = 0; i < node_count(); ++i) best = std::max(best, degree(i));
    return best;
  }

  std::span<const IndexEdge> index_edges() const noexcept { return edges_; }

  Edge edge(std::size_t id) const { return {asns_[edges_[id].u], asns_[edges_[id].v]}; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (std::size_t id = 0; id < edges_.size(); ++id) out.push_back(edge(id));
    return out;
  }

  std::optional<std::size_t> edge_id(Index u, Index v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return std::nullopt;
    return neighbor_edges(u)[static_cast<std::size_t>(it - nb.begin())];
  }

  bool has_edge(Asn x, Asn y) const {
    auto u = index_of(x);
    auto v = index_of(y);
    return u && v && edge_id(*u, *v).has_value();
  }

  /// Verifies symmetry, absence of self-loops and parallel edges, and the
  /// handshake identity. Throws std::logic_error on violation.
  void check_invariants() const {
    auto fail = [](const std::string& what) { throw std::logic_error("AsGraph invariant: " + what); };
    if (!std::is_sorted(asns_.begin(), asns_.end()) ||
        std::adjacent_find(asns_.begin(), asns_.end()) != asns_.end()) {
      fail("node list not strictly ascending");
    }
    std::size_t degree_sum = 0;
    for (Index i = 0; i < node_count(); ++i) {
      auto nb = neighbors(i);
      degree_sum += nb.size();
      for (std::size_t s = 0; s < nb.size(); ++s) {
        if (nb[s] == i) fail("self-loop");
        if (s > 0 && nb[s - 1] >= nb[s]) fail("neighbor list not strictly ascending");
        if (!edge_id(nb[s], i)) fail("asymmetric adjacency");
      }
    }
    if (degree_sum != 2 * edge_count()) fail("degree sum != 2m");
  }

  friend bool operator==(const AsGraph& x, const AsGraph& y) {
    if (x.asns_ != y.asns_ || x.edges_.size() != y.edges_.size()) return false;
    for (std::size_t i = 0; i < x.edges_.size(); ++i) {
      if (x.edges_[i].u != y.edges_[i].u || x.edges_[i].v != y.edges_[i].v) return false;
    }
    return true;
  }

 private:
  void build_adjacency() {
    const std::size_t n = asns_.size();
    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    targets_.resize(offsets_[n]);
    arc_edges_.resize(offsets_[n]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted by (u, v), so each list receives its lower neighbors
    // first and its higher neighbors afterwards, both ascending.
    for (std::uint32_t id = 0; id < edges_.size(); ++id) {
      const auto& e = edges_[id];
      targets_[cursor[e.u]] = e.v;
      arc_edges_[cursor[e.u]++] = id;
      targets_[cursor[e.v]] = e.u;
      arc_edges_[cursor[e.v]++] = id;
    }
  }

  std::vector<Asn> asns_;
  std::vector<IndexEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Index> targets_;
  std::vector<std::uint32_t> arc_edges_;
};

/// Graph over the distinct endpoints and distinct undirected edges of the
/// input. Throws SelfLoopError on a pair (a, a).
inline AsGraph build_from_edges(std::vector<Edge> edges) { return AsGraph::from_edges(std::move(edges)); }

/// Union of node sets and of edge sets.
inline AsGraph merge(std::span<const AsGraph> graphs) {
  std::vector<Edge> edges;
  std::vector<Asn> nodes;
  for (const auto& g : graphs) {
    auto e = g.edges();
    edges.insert(edges.end(), e.begin(), e.end());
    nodes.insert(nodes.end(), g.nodes().begin(), g.nodes().end());
  }
  return AsGraph::from_edges(std::move(edges), std::move(nodes));
}

inline AsGraph merge(std::initializer_list<AsGraph> graphs) {
  return merge(std::span<const AsGraph>(graphs.begin(), graphs.size()));
}

namespace detail {

inline AsGraph induced_by_mask(const AsGraph& g, const std::vector<bool>& keep) {
  std::vector<Asn> nodes;
  std::vector<Edge> edges;
  for (AsGraph::Index i = 0; i < g.node_count(); ++i) {
    if (keep[i]) nodes.push_back(g.asn(i));
  }
  for (const auto& e : g.index_edges()) {
    if (keep[e.u] && keep[e.v]) edges.push_back({g.asn(e.u), g.asn(e.v)});
  }
  return AsGraph::from_edges(std::move(edges), std::move(nodes));
}

}  // namespace detail

/// Subgraph induced on g.nodes ∩ keep. ASNs in keep that are absent from g
/// are ignored.
template <std::ranges::input_range R>
  requires std::convertible_to<std::ranges::range_value_t<R>, Asn>
AsGraph induced_subgraph(const AsGraph& g, const R& keep) {
  std::vector<bool> mask(g.node_count(), false);
  for (Asn asn : keep) {
    if (auto i = g.index_of(asn)) mask[*i] = true;
  }
  return detail::induced_by_mask(g, mask);
}

/// Connected components as lists of node indices. Components appear in order
/// of their smallest ASN, and each list is ascending.
inline std::vector<std::vector<AsGraph::Index>> connected_components(const AsGraph& g) {
  std::vector<std::vector<AsGraph::Index>> out;
  std::vector<bool> seen(g.node_count(), false);
  std::vector<AsGraph::Index> queue;
  for (AsGraph::Index root = 0; root < g.node_count(); ++root) {
    if (seen[root]) continue;
    queue.assign(1, root);
    seen[root] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (auto u : g.neighbors(queue[head])) {
        if (!seen[u]) {
          seen[u] = true;
          queue.push_back(u);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    out.push_back(queue);
  }
  return out;
}

inline bool is_connected(const AsGraph& g) {
  if (g.empty()) return false;
  std::vector<bool> seen(g.node_count(), false);
  std::vector<AsGraph::Index> queue{0};
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto u : g.neighbors(queue[head])) {
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  return queue.size() == g.node_count();
}

/// Largest connected component. Among equally large components the one
/// holding the smallest ASN wins.
inline AsGraph giant_component(const AsGraph& g) {
  if (g.empty()) throw Error(Errc::empty_graph, "giant component of a graph with no nodes");
  auto components = connected_components(g);
  std::size_t best = 0;
  for (std::size_t c = 1; c < components.size(); ++c) {
    if (components[c].size() > components[best].size()) best = c;
  }
  if (components[best].size() == g.node_count()) return g;
  std::vector<bool> mask(g.node_count(), false);
  for (auto i : components[best]) mask[i] = true;
  return detail::induced_by_mask(g, mask);
}

/// Writes the canonical edge-list form: one "low high" line per edge in
/// ascending (low, high) order, then one line per isolated node.
inline void write_edge_list(std::ostream& os, const AsGraph& g) {
  for (const auto& e : g.edges()) os << e.a.value << ' ' << e.b.value << '\n';
  for (AsGraph::Index i = 0; i < g.node_count(); ++i) {
    if (g.degree(i) == 0) os << g.asn(i).value << '\n';
  }
}

}  // namespace astopo
