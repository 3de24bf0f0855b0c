#pragma once

// Slope estimates for (1/n) log f(n).
//
// Point estimate: the secant over the tail window [ceil(N/2), N],
// (log f(N) - log f(M)) / (N - M). Diagnostics: the last successive
// difference and a least-squares slope over the same window. For limsup
// quantities the secant is taken on the running maximum of the series.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "catdyn/entropy/series.hpp"

namespace catdyn {

struct EntropyEstimate {
  double point = 0;
  std::string method;  // "tail-secant" or "envelope-secant"
  int window_lo = 0, window_hi = 0;
  double last_difference = 0;
  double regression_slope = 0;
  double residual = 0;      // max |residual| of the regression line
  bool oscillation = false; // tail successive differences spread by more than 0.05
  bool absent = false;      // series too short or ends in log 0
};

namespace detail {

inline double secant(const SeriesPoint& a, const SeriesPoint& b, double t) {
  const double db = b.weight.base - a.weight.base;
  const double ds = static_cast<double>(b.weight.shift - a.weight.shift) * t;
  return (db + ds) / static_cast<double>(b.n - a.n);
}

inline void diagnostics(const std::vector<int>& ns, const std::vector<double>& ys, std::size_t from, EntropyEstimate& e) {
  const std::size_t N = ys.size();
  e.last_difference = (ys[N - 1] - ys[N - 2]) / static_cast<double>(ns[N - 1] - ns[N - 2]);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(N - from);
  for (std::size_t i = from; i < N; ++i) {
    sx += ns[i], sy += ys[i], sxx += static_cast<double>(ns[i]) * ns[i], sxy += ns[i] * ys[i];
  }
  const double den = m * sxx - sx * sx;
  e.regression_slope = den == 0 ? e.last_difference : (m * sxy - sx * sy) / den;
  const double icpt = (sy - e.regression_slope * sx) / m;
  e.residual = 0;
  for (std::size_t i = from; i < N; ++i) e.residual = std::max(e.residual, std::abs(ys[i] - icpt - e.regression_slope * ns[i]));
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = std::max<std::size_t>(from, 1); i < N; ++i) {
    const double d = (ys[i] - ys[i - 1]) / static_cast<double>(ns[i] - ns[i - 1]);
    lo = std::min(lo, d), hi = std::max(hi, d);
  }
  e.oscillation = hi - lo > 0.05;
}

inline std::size_t window_start(const std::vector<SeriesPoint>& pts) {
  const int N = pts.back().n;
  const int M = (N + 1) / 2;
  std::size_t i = 0;
  while (i + 1 < pts.size() && pts[i].n < M) ++i;
  if (i + 1 == pts.size() && i > 0) --i;
  return i;
}

}  // namespace detail

/// Estimate of lim (1/n) log f(n) at parameter t.
inline EntropyEstimate estimate_limit(const GrowthSeries& s) {
  EntropyEstimate e;
  e.method = "tail-secant";
  const double t = s.param();
  if (s.points.size() < 2 || s.points.back().weight.zero) {
    e.absent = true;
    e.point = s.points.empty() ? 0 : -std::numeric_limits<double>::infinity();
    return e;
  }
  const std::size_t from = detail::window_start(s.points);
  const auto& a = s.points[from];
  const auto& b = s.points.back();
  e.window_lo = a.n, e.window_hi = b.n;
  if (a.weight.zero) {
    e.point = std::numeric_limits<double>::infinity();
  } else {
    e.point = detail::secant(a, b, t);
  }
  std::vector<int> ns;
  std::vector<double> ys;
  for (const auto& p : s.points) ns.push_back(p.n), ys.push_back(p.log_value(t));
  if (std::isfinite(e.point)) detail::diagnostics(ns, ys, from, e);
  return e;
}

/// Estimate of limsup (1/n) log f(n): tail secant of the running maximum.
inline EntropyEstimate estimate_limsup(const GrowthSeries& s) {
  EntropyEstimate e;
  e.method = "envelope-secant";
  const double t = s.param();
  std::vector<SeriesPoint> env;
  bool seen = false;
  SeriesPoint best;
  for (const auto& p : s.points) {
    if (!p.weight.zero && (!seen || p.log_value(t) > best.log_value(t))) best = p, seen = true;
    if (!seen) continue;
    SeriesPoint q = best;
    q.n = p.n;
    env.push_back(q);
  }
  if (env.size() < 2) {
    e.absent = true;
    e.point = -std::numeric_limits<double>::infinity();
    return e;
  }
  const std::size_t from = detail::window_start(env);
  e.window_lo = env[from].n, e.window_hi = env.back().n;
  e.point = detail::secant(env[from], env.back(), t);
  std::vector<int> ns;
  std::vector<double> ys;
  for (const auto& p : env) ns.push_back(p.n), ys.push_back(p.log_value(t));
  detail::diagnostics(ns, ys, from, e);
  return e;
}

}  // namespace catdyn
