#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "astopo/error.hpp"
#include "astopo/graph.hpp"

namespace astopo::detail {

/// y = A x for the adjacency matrix of g.
inline void adjacency_apply(const AsGraph& g, const double* x, double* y) {
  for (AsGraph::Index i = 0; i < g.node_count(); ++i) {
    double sum = 0.0;
    for (auto u : g.neighbors(i)) sum += x[u];
    y[i] = sum;
  }
}

/// Uniform entries in [-1, 1) drawn from raw 64-bit output, so the sequence is
/// the same on every standard library.
inline void fill_random(Eigen::Ref<Eigen::VectorXd> v, std::mt19937_64& rng) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
  }
}

/// Two classical Gram-Schmidt passes of w against the first `cols` columns of
/// basis.
inline void orthogonalize(Eigen::Ref<Eigen::VectorXd> w, const Eigen::MatrixXd& basis, Eigen::Index cols) {
  if (cols == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    Eigen::VectorXd h = basis.leftCols(cols).transpose() * w;
    w.noalias() -= basis.leftCols(cols) * h;
  }
}

/// Solves (T - shift I) x = rhs in place for a symmetric tridiagonal T using
/// Gaussian elimination with partial pivoting. Zero pivots are replaced by
/// `tiny`, which is what inverse iteration wants near an exact eigenvalue.
class TridiagonalSolver {
 public:
  TridiagonalSolver(const std::vector<double>& diag, const std::vector<double>& off, double shift, double tiny)
      : n_(diag.size()), dl_(off), d_(diag), du_(off), du2_(n_ > 2 ? n_ - 2 : 0, 0.0), swap_(n_, false) {
    for (auto& x : d_) x -= shift;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double f = dl_[i] / d_[i];
        dl_[i] = f;
        d_[i + 1] -= f * du_[i];
      } else {
        const double f = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = f;
        const double t = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = t - f * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -f * du_[i + 1];
        }
        swap_[i] = true;
      }
    }
    for (auto& x : d_) {
      if (std::abs(x) < tiny) x = x < 0 ? -tiny : tiny;
    }
  }

  void solve(std::vector<double>& b) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (!swap_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double t = b[i];
        b[i] = b[i + 1];
        b[i + 1] = t - dl_[i] * b[i];
      }
    }
    for (std::size_t i = n_; i-- > 0;) {
      double x = b[i];
      if (i + 1 < n_) x -= du_[i] * b[i + 1];
      if (i + 2 < n_) x -= du2_[i] * b[i + 2];
      b[i] = x / d_[i];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<bool> swap_;
};

struct RitzSelection {
  std::vector<double> values;  // sorted by |value| descending
  Eigen::MatrixXd vectors;     // columns in basis coordinates (j rows)
  std::vector<double> residuals;
};

inline bool by_magnitude(double a, double b) {
  return std::abs(a) != std::abs(b) ? std::abs(a) > std::abs(b) : a > b;
}

/// Sorts by magnitude, descending. Magnitudes within 1e-8 of the largest one
/// count as ties and list the positive value first, so the ±λ pairs of a
/// bipartite graph come out in a fixed order despite rounding.
inline void order_by_magnitude(std::vector<double>& values) {
  std::sort(values.begin(), values.end(), by_magnitude);
  if (values.empty()) return;
  const double tie = 1e-8 * std::max(std::abs(values.front()), 1.0);
  for (std::size_t begin = 0; begin < values.size();) {
    std::size_t end = begin + 1;
    while (end < values.size() && std::abs(values[end - 1]) - std::abs(values[end]) <= tie) ++end;
    std::stable_sort(values.begin() + static_cast<std::ptrdiff_t>(begin), values.begin() + static_cast<std::ptrdiff_t>(end),
                     [](double a, double b) { return a > 0 && b <= 0; });
    begin = end;
  }
}

/// Ritz pairs of the `want` largest-magnitude eigenvalues of the tridiagonal
/// (diag, off) plus their residual norms |beta_next * y_last|.
inline RitzSelection select_ritz(const std::vector<double>& diag, const std::vector<double>& off, double beta_next,
                                 std::size_t want) {
  const std::size_t j = diag.size();
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), static_cast<Eigen::Index>(j));
  Eigen::VectorXd e = j > 1 ? Eigen::Map<const Eigen::VectorXd>(off.data(), static_cast<Eigen::Index>(j - 1))
                            : Eigen::VectorXd(0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  std::vector<double> theta(es.eigenvalues().data(), es.eigenvalues().data() + j);
  std::sort(theta.begin(), theta.end(), by_magnitude);
  want = std::min(want, j);

  RitzSelection out;
  out.values.assign(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(want));
  out.vectors.resize(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(want));
  out.residuals.resize(want);

  const double scale = std::max(std::abs(theta.front()), 1.0);
  const double tiny = scale * 1e-15;
  const double cluster = scale * 1e-7;

  // Process in ascending value order so near-equal values are adjacent and can
  // be orthogonalized against each other.
  std::vector<std::size_t> by_value(want);
  std::iota(by_value.begin(), by_value.end(), 0);
  std::sort(by_value.begin(), by_value.end(), [&](auto a, auto b) { return out.values[a] < out.values[b]; });

  std::vector<double> x(j);
  std::size_t cluster_start = 0;
  for (std::size_t p = 0; p < want; ++p) {
    const std::size_t col = by_value[p];
    const double value = out.values[col];
    if (p > 0 && value - out.values[by_value[p - 1]] > cluster) cluster_start = p;
    TridiagonalSolver solver(diag, off, value, tiny);
    for (std::size_t i = 0; i < j; ++i) x[i] = 1.0 + 0.5 * std::sin(static_cast<double>(i * 7 + p * 13 + 1));
    for (int iter = 0; iter < 3; ++iter) {
      solver.solve(x);
      Eigen::Map<Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(j));
      for (std::size_t q = cluster_start; q < p; ++q) {
        auto prev = out.vectors.col(static_cast<Eigen::Index>(by_value[q]));
        xv -= prev.dot(xv) * prev;
      }
      xv /= xv.norm();
    }
    out.vectors.col(static_cast<Eigen::Index>(col)) = Eigen::Map<Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(j));
    out.residuals[col] = std::abs(beta_next * x[j - 1]);
  }
  return out;
}

struct LanczosOptions {
  double tolerance = 1e-10;
  std::size_t max_basis = 0;  // 0: no limit beyond the dimension
};

struct EigenBlock {
  std::vector<double> values;
  Eigen::MatrixXd vectors;  // n x values.size(), orthonormal
};

/// Largest-magnitude eigenpairs of A restricted to the orthogonal complement
/// of `locked` (orthonormal columns spanning an invariant subspace).
///
/// Lanczos with full reorthogonalization against the basis and the locked
/// block. A breakdown (invariant Krylov subspace) continues from a fresh
/// random vector with a zero coupling, which is how exact multiplicities in
/// structured graphs get resolved.
inline EigenBlock lanczos_extremal(const AsGraph& g, const Eigen::MatrixXd& locked, std::size_t want,
                                   const LanczosOptions& opts, std::mt19937_64& rng,
                                   std::size_t step_limit = 0) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  const Eigen::Index space = n - locked.cols();
  if (space <= 0 || want == 0) return {};
  want = std::min<std::size_t>(want, static_cast<std::size_t>(space));
  Eigen::Index limit = space;
  if (opts.max_basis > 0) limit = std::min<Eigen::Index>(limit, static_cast<Eigen::Index>(opts.max_basis));
  const bool probing = step_limit > 0;
  if (probing) limit = std::min<Eigen::Index>(limit, static_cast<Eigen::Index>(step_limit));

  const double anorm = std::max<double>(1.0, static_cast<double>(g.max_degree()));
  const double breakdown = 1e-12 * anorm;

  Eigen::MatrixXd basis(n, std::min<Eigen::Index>(limit + 1, std::max<Eigen::Index>(2 * static_cast<Eigen::Index>(want) + 32, 64)));
  std::vector<double> alpha, beta;
  Eigen::VectorXd w(n);

  auto fresh_vector = [&](Eigen::Index filled) -> bool {
    for (int attempt = 0; attempt < 3; ++attempt) {
      fill_random(w, rng);
      orthogonalize(w, locked, locked.cols());
      orthogonalize(w, basis, filled);
      const double norm = w.norm();
      if (norm > 1e-8 * std::sqrt(static_cast<double>(n))) {
        basis.col(filled) = w / norm;
        return true;
      }
    }
    return false;
  };

  fresh_vector(0);
  Eigen::Index j = 0;  // columns of basis in use, with T of size j
  Eigen::Index next_check = std::min<Eigen::Index>(limit, static_cast<Eigen::Index>(want) + 20);
  double beta_next = 0.0;
  double worst = 0.0;

  while (true) {
    adjacency_apply(g, basis.col(j).data(), w.data());
    const double a = basis.col(j).dot(w);
    w -= a * basis.col(j);
    if (j > 0) w -= beta.back() * basis.col(j - 1);
    orthogonalize(w, locked, locked.cols());
    orthogonalize(w, basis, j + 1);
    alpha.push_back(a);
    beta_next = w.norm();
    ++j;

    bool exhausted = j >= space;
    if (!exhausted && j < limit) {
      if (j >= basis.cols()) basis.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(limit + 1, basis.cols() * 3 / 2 + 1));
      if (beta_next <= breakdown) {
        if (!fresh_vector(j)) exhausted = true;
        beta.push_back(0.0);
        beta_next = 0.0;
      } else {
        basis.col(j) = w / beta_next;
        beta.push_back(beta_next);
      }
    }
    if (exhausted) beta_next = 0.0;

    if (exhausted || j >= next_check || j >= limit) {
      std::vector<double> off(beta.begin(), beta.begin() + (j - 1));
      auto ritz = select_ritz(alpha, off, beta_next, want);
      bool converged = true;
      worst = 0.0;
      const double floor = 1e-3 * std::abs(ritz.values.front());
      for (std::size_t i = 0; i < ritz.values.size(); ++i) {
        const double bound = opts.tolerance * std::max(std::abs(ritz.values[i]), floor);
        worst = std::max(worst, ritz.residuals[i] / std::max(std::abs(ritz.values[i]), floor));
        if (ritz.residuals[i] > bound) converged = false;
      }
      if (converged || exhausted || probing) {
        EigenBlock out;
        out.values = ritz.values;
        out.vectors.noalias() = basis.leftCols(j) * ritz.vectors;
        return out;
      }
      if (j >= limit) {
        throw ConvergenceError(worst, "Lanczos basis limit " + std::to_string(limit) + " reached");
      }
      next_check = std::min<Eigen::Index>(limit, j + std::max<Eigen::Index>(10, j / 10));
    }
  }
}

/// Orthonormal basis of the column span (thin QR).
inline Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& x) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  return qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols());
}

/// The `count` largest-magnitude adjacency eigenvalues.
///
/// After the first extraction, short probe runs look for an eigenvalue in the
/// complement of the found subspace that beats the smallest kept magnitude
/// (a copy of a repeated eigenvalue that the Krylov space missed). Any hit is
/// resolved, merged in, and the probe is repeated.
inline std::vector<double> lanczos_top(const AsGraph& g, std::size_t count, const LanczosOptions& opts,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::Index n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd none(n, 0);
  auto found = lanczos_extremal(g, none, count, opts, rng);
  std::vector<double> values = found.values;
  Eigen::MatrixXd locked = orthonormalize(found.vectors);

  constexpr int max_rounds = 64;
  for (int round = 0; round < max_rounds && locked.cols() < n; ++round) {
    const double floor_mag = std::abs(*std::min_element(values.begin(), values.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    }));
    const std::size_t probe_steps = std::min<std::size_t>(static_cast<std::size_t>(n - locked.cols()), 48);
    auto probe = lanczos_extremal(g, locked, probe_steps, opts, rng, probe_steps);
    std::size_t above = 0;
    const double margin = floor_mag * (1.0 + 1e-7) + 1e-9 * std::abs(values.front());
    for (double v : probe.values) above += std::abs(v) > margin ? 1 : 0;
    if (above == 0) break;

    auto extra = lanczos_extremal(g, locked, above, opts, rng);
    std::vector<double> merged = values;
    merged.insert(merged.end(), extra.values.begin(), extra.values.end());
    Eigen::MatrixXd vecs(n, locked.cols() + extra.vectors.cols());
    vecs << locked, extra.vectors;

    std::vector<std::size_t> order(merged.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return by_magnitude(merged[a], merged[b]); });
    order.resize(std::min(order.size(), count));
    values.clear();
    Eigen::MatrixXd kept(n, static_cast<Eigen::Index>(order.size()));
    for (std::size_t c = 0; c < order.size(); ++c) {
      values.push_back(merged[order[c]]);
      kept.col(static_cast<Eigen::Index>(c)) = vecs.col(static_cast<Eigen::Index>(order[c]));
    }
    locked = orthonormalize(kept);
    if (round + 1 == max_rounds) {
      throw ConvergenceError(0.0, "repeated-eigenvalue deflation did not settle");
    }
  }
  order_by_magnitude(values);
  return values;
}

}  // namespace astopo::detail
