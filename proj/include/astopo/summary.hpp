#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "astopo/betweenness.hpp"
#include "astopo/clustering.hpp"
#include "astopo/degree.hpp"
#include "astopo/distance.hpp"
#include "astopo/fit.hpp"
#include "astopo/graph.hpp"
#include "astopo/jdd.hpp"
#include "astopo/spectrum.hpp"

namespace astopo {

/// Names of the fitted relations, usable as keys of SummaryOptions::fit_ranges.
namespace fit_name {
inline constexpr const char* degree = "degree";            // CCDF of P(k) vs k
inline constexpr const char* knn = "knn";                  // k_nn(k) vs k
inline constexpr const char* clustering = "clustering";    // C(k) vs k
inline constexpr const char* rich_club = "rich_club";      // φ vs ρ/n
inline constexpr const char* distance = "distance";        // d(k) vs k
inline constexpr const char* betweenness = "betweenness";  // B(k) vs k
}  // namespace fit_name

struct SummaryOptions {
  unsigned workers = 1;
  std::optional<std::size_t> eig_count;  // default: top 10% of n
  double fit_threshold = 0.9;
  std::map<std::string, FitRange> fit_ranges{{fit_name::rich_club, FitRange{0.1, 1.0}}};
  SpectrumOptions spectrum;
};

/// Every scalar of the summary table for one graph. Exponents are reported as
/// magnitudes in the table's convention: P(k) ~ k^-gamma, k_nn ~ k^-gamma_nn,
/// C(k) ~ k^-gamma_c, φ ~ (ρ/n)^-gamma_rc, d(k) ~ k^-gamma_d, B(k) ~ k^gamma_b.
/// Empty optionals are undefined metrics or rejected fits.
struct MetricSummary {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double avg_degree = 0.0;
  std::size_t max_degree = 0;
  std::optional<double> powerlaw_max_degree;
  std::optional<double> gamma;
  std::optional<double> avg_neighbor_degree_normalized;
  std::optional<double> gamma_nn;
  std::optional<double> assortativity;
  std::optional<double> clustering_mean;
  std::optional<double> clustering_coeff;
  std::optional<double> gamma_c;
  std::optional<double> gamma_rc;
  std::optional<double> avg_distance;
  std::optional<double> distance_stddev;
  std::optional<double> gamma_d;
  std::optional<double> avg_node_betweenness_normalized;
  std::optional<double> gamma_b;
  std::optional<double> avg_edge_betweenness_normalized;
  std::vector<double> top_eigenvalues;  // up to three, |λ| descending
  std::size_t giant_component_nodes = 0;
  std::size_t giant_component_excluded = 0;
};

/// Summary plus all per-figure data behind it.
struct MetricReport {
  MetricSummary summary;
  DegreeDistribution degrees;
  std::optional<JddMatrix> jdd;
  NeighborDegreeProfile knn;
  std::map<std::size_t, double> clustering;
  std::vector<RichClubPoint> rich_club;
  std::optional<DistanceProfile> distance;
  std::map<std::size_t, double> betweenness_by_degree;
  std::map<DegreePair, double> edge_betweenness_by_degrees;
  SpectrumResult spectrum;
  std::map<std::string, PowerLawFit> fits;  // only relations with >= 2 usable points
};

namespace detail {

template <class Map>
std::vector<FitPoint> points_of(const Map& m) {
  std::vector<FitPoint> out;
  for (const auto& [k, v] : m) out.push_back({static_cast<double>(k), v});
  return out;
}

/// Fits the strictly positive points; nullopt when fewer than two distinct x
/// values remain.
inline std::optional<PowerLawFit> try_fit(std::vector<FitPoint> points, const SummaryOptions& opts,
                                          const std::string& name) {
  FitOptions fo;
  fo.threshold = opts.fit_threshold;
  if (auto it = opts.fit_ranges.find(name); it != opts.fit_ranges.end()) fo.range = it->second;
  std::erase_if(points, [&](const FitPoint& p) {
    return !(p.x > 0.0) || !(p.y > 0.0) || (fo.range && !fo.range->contains(p.x));
  });
  std::set<double> xs;
  for (const auto& p : points) xs.insert(p.x);
  if (xs.size() < 2) return std::nullopt;
  return fit_power_law(points, fo);
}

}  // namespace detail

/// Computes every metric of the suite. Distance metrics run on the giant
/// component; everything else on the whole graph. Metrics that are undefined
/// for this graph (for example assortativity of a regular graph) are left
/// empty rather than raising.
inline MetricReport compute_report(const AsGraph& g, const SummaryOptions& opts = {}) {
  if (g.empty()) throw Error(Errc::empty_graph, "cannot summarize a graph with no nodes");
  MetricReport r;
  auto& s = r.summary;
  const std::size_t n = g.node_count();
  s.nodes = n;
  s.edges = g.edge_count();
  s.avg_degree = average_degree(g);
  s.max_degree = g.max_degree();

  r.degrees = degree_distribution(g);
  auto accept = [&](const std::string& name, std::optional<PowerLawFit> fit) -> std::optional<double> {
    if (!fit) return std::nullopt;
    r.fits[name] = *fit;
    if (!fit->accepted) return std::nullopt;
    return fit->exponent;
  };

  std::vector<FitPoint> ccdf;
  for (auto [k, p] : r.degrees.ccdf_points()) ccdf.push_back({static_cast<double>(k), p});
  if (auto slope = accept(fit_name::degree, detail::try_fit(ccdf, opts, fit_name::degree))) {
    s.gamma = 1.0 - *slope;
    if (*s.gamma > 1.0) s.powerlaw_max_degree = power_law_max_degree(static_cast<double>(n), *s.gamma);
  }

  if (g.edge_count() > 0) {
    r.jdd = jdd(g);
    r.knn = avg_neighbor_degree(g);
    if (n > 1) s.avg_neighbor_degree_normalized = r.knn.mean_normalized;
    if (auto e = accept(fit_name::knn, detail::try_fit(detail::points_of(r.knn.knn), opts, fit_name::knn))) {
      s.gamma_nn = -*e;
    }
    try {
      s.assortativity = assortativity(g);
    } catch (const Error&) {
    }
  }

  const auto tally = clustering_tally(g, opts.workers);
  r.clustering = local_clustering(tally);
  if (n >= 3 && tally.triplets > 0) {
    auto cs = clustering_summaries(tally);
    s.clustering_mean = cs.mean;
    s.clustering_coeff = cs.coeff;
  }
  if (auto e = accept(fit_name::clustering,
                      detail::try_fit(detail::points_of(r.clustering), opts, fit_name::clustering))) {
    s.gamma_c = -*e;
  }

  if (n >= 2) {
    r.rich_club = rich_club(g);
    std::vector<FitPoint> rc;
    for (const auto& p : r.rich_club) rc.push_back({p.fraction, p.phi});
    if (auto e = accept(fit_name::rich_club, detail::try_fit(rc, opts, fit_name::rich_club))) s.gamma_rc = -*e;
  }

  const AsGraph giant = giant_component(g);
  s.giant_component_nodes = giant.node_count();
  s.giant_component_excluded = n - giant.node_count();
  if (giant.node_count() >= 2) {
    r.distance = distance_profile(giant, opts.workers);
    s.avg_distance = r.distance->stats.mean;
    s.distance_stddev = r.distance->stats.width;
    if (auto e = accept(fit_name::distance,
                        detail::try_fit(detail::points_of(r.distance->by_degree), opts, fit_name::distance))) {
      s.gamma_d = -*e;
    }
  }

  if (n >= 2) {
    const auto b = betweenness<double>(g, opts.workers);
    double node_sum = 0.0, edge_sum = 0.0;
    for (AsGraph::Index i = 0; i < n; ++i) node_sum += b.normalized_node(i);
    for (std::size_t e = 0; e < g.edge_count(); ++e) edge_sum += b.normalized_edge(e);
    s.avg_node_betweenness_normalized = node_sum / static_cast<double>(n);
    if (g.edge_count() > 0) s.avg_edge_betweenness_normalized = edge_sum / static_cast<double>(g.edge_count());
    r.betweenness_by_degree = node_betweenness_by_degree(g, b);
    r.edge_betweenness_by_degrees = edge_betweenness_by_degrees(g, b);
    if (auto e = accept(fit_name::betweenness,
                        detail::try_fit(detail::points_of(r.betweenness_by_degree), opts, fit_name::betweenness))) {
      s.gamma_b = *e;
    }
  }

  const std::size_t k = std::min(n, std::max<std::size_t>(3, opts.eig_count.value_or(default_eigen_count(n))));
  r.spectrum = spectrum_top(g, k, opts.spectrum);
  const std::size_t shown = std::min<std::size_t>(3, r.spectrum.count());
  s.top_eigenvalues.assign(r.spectrum.eigenvalues.begin(), r.spectrum.eigenvalues.begin() + static_cast<std::ptrdiff_t>(shown));
  if (opts.eig_count && *opts.eig_count < r.spectrum.count()) r.spectrum.eigenvalues.resize(*opts.eig_count);
  return r;
}

inline MetricSummary summarize(const AsGraph& g, const SummaryOptions& opts = {}) {
  return compute_report(g, opts).summary;
}

}  // namespace astopo
