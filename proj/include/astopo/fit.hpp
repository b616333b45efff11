#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "astopo/error.hpp"

namespace astopo {

struct FitPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Inclusive x-interval.
struct FitRange {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Parses "lo:hi".
inline FitRange parse_fit_range(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error(Errc::invalid_argument, "fit range must be lo:hi");
  try {
    std::size_t used = 0;
    std::string lo_s(text.substr(0, colon)), hi_s(text.substr(colon + 1));
    FitRange r{std::stod(lo_s, &used), 0.0};
    if (used != lo_s.size()) throw std::invalid_argument("lo");
    r.hi = std::stod(hi_s, &used);
    if (used != hi_s.size()) throw std::invalid_argument("hi");
    if (!(r.lo <= r.hi)) throw Error(Errc::invalid_argument, "fit range lo > hi");
    return r;
  } catch (const std::logic_error&) {
    throw Error(Errc::invalid_argument, "bad fit range '" + std::string(text) + "'");
  }
}

struct FitOptions {
  std::optional<FitRange> range;
  double threshold = 0.9;       // minimum r² for acceptance
  std::size_t min_distinct = 5;  // minimum distinct x values for acceptance
};

/// y = prefactor × x^exponent fitted by least squares in log-log space.
struct PowerLawFit {
  double exponent = 0.0;  // signed slope; decaying laws are negative
  double prefactor = 0.0;
  FitRange range;                   // x-extent of the points used
  std::optional<double> r_squared;  // empty when log y has zero variance
  std::size_t points_used = 0;
  std::size_t distinct_x = 0;
  bool accepted = false;
};

namespace detail {

// log v relative to the binary exponent of a reference value. Scaling every
// input by a power of two leaves the result bit-identical.
struct LogAxis {
  int ref_exp = 0;
  bool started = false;

  long double operator()(double v) {
    int e = 0;
    const double m = std::frexp(v, &e);
    if (!started) {
      ref_exp = e;
      started = true;
    }
    return static_cast<long double>(e - ref_exp) * std::numbers::ln2_v<long double> + std::log(static_cast<long double>(m));
  }
  long double offset() const { return ref_exp * std::numbers::ln2_v<long double>; }
};

}  // namespace detail

/// Throws invalid_argument on a non-positive coordinate or fewer than two
/// distinct in-range x values. Scaling x or y by a power of two leaves the
/// exponent and r² bit-identical; other constants are exact up to the rounding
/// of the scaled inputs.
inline PowerLawFit fit_power_law(std::span<const FitPoint> points, const FitOptions& opts = {}) {
  std::vector<long double> lx, ly;
  detail::LogAxis log_x, log_y;
  PowerLawFit fit;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!(p.x > 0.0) || !(p.y > 0.0)) {
      std::ostringstream msg;
      msg << "point " << i << " (" << p.x << ", " << p.y << ") is not strictly positive";
      throw Error(Errc::invalid_argument, msg.str());
    }
    if (opts.range && !opts.range->contains(p.x)) continue;
    if (lx.empty()) {
      fit.range = {p.x, p.x};
    } else {
      fit.range.lo = std::min(fit.range.lo, p.x);
      fit.range.hi = std::max(fit.range.hi, p.x);
    }
    lx.push_back(log_x(p.x));
    ly.push_back(log_y(p.y));
  }
  fit.points_used = lx.size();
  {
    std::vector<long double> sorted = lx;
    std::sort(sorted.begin(), sorted.end());
    fit.distinct_x = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  }
  if (fit.distinct_x < 2) throw Error(Errc::invalid_argument, "power-law fit needs at least two distinct x values");

  const auto count = static_cast<long double>(lx.size());
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= count;
  my /= count;
  long double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const long double dx = lx[i] - mx, dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const bool flat = std::all_of(ly.begin(), ly.end(), [&](long double v) { return v == ly.front(); });
  if (flat) sxy = syy = 0;
  const long double slope = sxy / sxx;
  fit.exponent = static_cast<double>(slope);
  fit.prefactor = static_cast<double>(std::exp((my + log_y.offset()) - slope * (mx + log_x.offset())));
  if (syy > 0) {
    long double r2 = (sxy * sxy) / (sxx * syy);
    fit.r_squared = static_cast<double>(std::min<long double>(1, std::max<long double>(0, r2)));
  }
  fit.accepted = fit.r_squared && *fit.r_squared >= opts.threshold && fit.distinct_x >= opts.min_distinct;
  return fit;
}

}  // namespace astopo
