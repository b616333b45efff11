#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "astopo/error.hpp"
#include "astopo/graph.hpp"
#include "astopo/parallel.hpp"

namespace astopo {

/// Hop-count distribution over unordered node pairs.
struct DistanceStats {
  std::map<std::size_t, std::uint64_t> histogram;  // hops -> pair count
  std::uint64_t pair_total = 0;
  std::size_t n = 0;
  double mean = 0.0;
  double width = 0.0;  // population standard deviation

  double probability(std::size_t hops) const {
    auto it = histogram.find(hops);
    return it == histogram.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(pair_total);
  }

  /// Expansion: d(x) scaled by the graph size n.
  std::vector<std::pair<std::size_t, double>> expansion() const {
    std::vector<std::pair<std::size_t, double>> out;
    for (const auto& [x, c] : histogram) out.emplace_back(x, probability(x) * static_cast<double>(n));
    return out;
  }
};

struct DistanceProfile {
  DistanceStats stats;
  std::map<std::size_t, double> by_degree;  // k -> mean distance from k-degree nodes
};

namespace detail {

inline void require_connected(const AsGraph& g) {
  if (g.node_count() < 2) throw Error(Errc::empty_graph, "distance metrics need at least two nodes");
  if (!is_connected(g)) {
    throw Error(Errc::disconnected, "distance metrics need a connected graph; apply giant_component first");
  }
}

}  // namespace detail

/// All-pairs breadth-first search. Every tally is an exact integer, so the
/// result does not depend on the worker count.
inline DistanceProfile distance_profile(const AsGraph& g, unsigned workers = 1) {
  detail::require_connected(g);
  const std::size_t n = g.node_count();
  const auto plan = ChunkPlan::for_items(n);
  std::vector<std::vector<std::uint64_t>> partial(plan.chunks);
  std::vector<std::uint64_t> distance_sum(n, 0);

  for_each_chunk(plan, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<std::int32_t> dist(n, -1);
    std::vector<AsGraph::Index> queue(n);
    auto& hist = partial[chunk];
    for (auto s = static_cast<AsGraph::Index>(begin); s < end; ++s) {
      std::size_t head = 0, tail = 0;
      queue[tail++] = s;
      dist[s] = 0;
      std::uint64_t sum = 0;
      while (head < tail) {
        auto v = queue[head++];
        const auto dv = static_cast<std::size_t>(dist[v]);
        sum += dv;
        if (dv >= hist.size()) hist.resize(dv + 1, 0);
        ++hist[dv];
        for (auto u : g.neighbors(v)) {
          if (dist[u] < 0) {
            dist[u] = dist[v] + 1;
            queue[tail++] = u;
          }
        }
      }
      distance_sum[s] = sum;
      for (std::size_t i = 0; i < tail; ++i) dist[queue[i]] = -1;
    }
  });

  std::vector<std::uint64_t> ordered;  // ordered pairs per hop count
  for (const auto& hist : partial) {
    if (hist.size() > ordered.size()) ordered.resize(hist.size(), 0);
    for (std::size_t x = 0; x < hist.size(); ++x) ordered[x] += hist[x];
  }

  DistanceProfile out;
  auto& st = out.stats;
  st.n = n;
  __int128 s1 = 0, s2 = 0;
  for (std::size_t x = 1; x < ordered.size(); ++x) {
    const std::uint64_t pairs = ordered[x] / 2;
    if (pairs == 0) continue;
    st.histogram[x] = pairs;
    st.pair_total += pairs;
    s1 += static_cast<__int128>(x) * pairs;
    s2 += static_cast<__int128>(x) * x * pairs;
  }
  const auto total = static_cast<__int128>(st.pair_total);
  st.mean = static_cast<double>(static_cast<long double>(s1) / static_cast<long double>(total));
  const __int128 var_num = total * s2 - s1 * s1;  // total² × variance
  st.width = static_cast<double>(
      std::sqrt(static_cast<long double>(var_num)) / static_cast<long double>(total));

  std::map<std::size_t, std::pair<std::uint64_t, std::uint64_t>> by_k;  // k -> (nodes, Σ distance sums)
  for (AsGraph::Index v = 0; v < n; ++v) {
    auto& row = by_k[g.degree(v)];
    ++row.first;
    row.second += distance_sum[v];
  }
  for (const auto& [k, row] : by_k) {
    out.by_degree[k] = static_cast<double>(row.second) /
                       (static_cast<double>(row.first) * static_cast<double>(n - 1));
  }
  return out;
}

inline DistanceStats distance_distribution(const AsGraph& g, unsigned workers = 1) {
  return distance_profile(g, workers).stats;
}

/// d(k): mean over k-degree nodes of their mean distance to the other n-1
/// nodes.
inline std::map<std::size_t, double> avg_distance_by_degree(const AsGraph& g, unsigned workers = 1) {
  return distance_profile(g, workers).by_degree;
}

}  // namespace astopo
