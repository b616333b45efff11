#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "astopo/detail/lanczos.hpp"
#include "astopo/error.hpp"
#include "astopo/graph.hpp"

namespace astopo {

struct SpectrumOptions {
  std::size_t dense_limit = 4096;  // dense decomposition up to this many nodes
  double tolerance = 1e-10;        // relative residual for the iterative route
  std::size_t max_basis = 0;       // iterative basis cap, 0 = unlimited
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // |λ| descending, signs kept; ties put positive first
  bool iterative = false;

  std::size_t count() const { return eigenvalues.size(); }
};

/// Default eigenvalue count: the top 10% of n, at least one.
inline std::size_t default_eigen_count(std::size_t n) {
  return std::max<std::size_t>(1, (n + 9) / 10);
}

inline std::vector<double> dense_adjacency_eigenvalues(const AsGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.index_edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

/// The k adjacency eigenvalues of largest magnitude.
inline SpectrumResult spectrum_top(const AsGraph& g, std::size_t k, const SpectrumOptions& opts = {}) {
  const std::size_t n = g.node_count();
  if (n == 0) throw Error(Errc::empty_graph, "spectrum of a graph with no nodes");
  if (k < 1 || k > n) {
    throw Error(Errc::invalid_argument, "eigenvalue count " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  SpectrumResult out;
  if (n <= opts.dense_limit) {
    out.eigenvalues = dense_adjacency_eigenvalues(g);
  } else {
    out.iterative = true;
    detail::LanczosOptions lo;
    lo.tolerance = opts.tolerance;
    lo.max_basis = opts.max_basis;
    // One extra value keeps both members of a ±λ pair that straddles k.
    out.eigenvalues = detail::lanczos_top(g, std::min(n, k + 1), lo, opts.seed);
  }
  detail::order_by_magnitude(out.eigenvalues);
  out.eigenvalues.resize(k);
  return out;
}

}  // namespace astopo
