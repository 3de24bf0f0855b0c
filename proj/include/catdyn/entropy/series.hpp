#pragma once

// Growth series built from Ext tables, and the weighted dimension
// delta'_t = sum_i dim Ext^i e^{-i t}.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "catdyn/error.hpp"
#include "catdyn/homological/complex.hpp"

namespace catdyn {

/// log delta'_t split as `base + shift * t`, where shift = -i for the
/// dominant degree i and base = log dim Ext^i + log(1 + rest). Keeping the
/// integer part separate makes differences of pure shifts exact in t.
struct LogWeight {
  double base = 0;
  long shift = 0;
  bool zero = false;  // delta' = 0, log = -infinity

  double value(double t) const {
    if (zero) return -std::numeric_limits<double>::infinity();
    return base + static_cast<double>(shift) * t;
  }
};

struct DeltaPrime {
  double value = 0;                  // floating value of delta'_t
  std::optional<std::size_t> exact;  // total dimension when t = 0
  bool zero = false;
};

inline LogWeight log_delta_prime(const ExtTable& table, double t) {
  if (table.empty()) return LogWeight{0, 0, true};
  // dominant degree maximizes log dim_i - i t; ties go to the lowest degree
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (auto [d, n] : table.dims()) {
    const double v = std::log(static_cast<double>(n)) - static_cast<double>(d) * t;
    if (v > best_val) best_val = v, best = d;
  }
  const double top = static_cast<double>(table.at(best));
  double rest = 0;
  for (auto [d, n] : table.dims())
    if (d != best) rest += static_cast<double>(n) / top * std::exp(-static_cast<double>(d - best) * t);
  return LogWeight{std::log(top) + std::log1p(rest), -static_cast<long>(best), false};
}

inline DeltaPrime delta_prime(const ExtTable& table, double t) {
  DeltaPrime out;
  if (table.empty()) {
    out.zero = true;
    if (t == 0) out.exact = 0;
    return out;
  }
  double s = 0;
  for (auto [d, n] : table.dims()) s += static_cast<double>(n) * std::exp(-static_cast<double>(d) * t);
  out.value = s;
  if (t == 0) out.exact = table.total();
  return out;
}

struct SeriesPoint {
  int n = 0;
  LogWeight weight;
  std::string field;  // field the dimensions were computed over
  double log_value(double t) const { return weight.value(t); }
};

/// (n, log value) pairs for one quantity. `t` is set for delta'_t series.
struct GrowthSeries {
  std::string quantity;
  std::optional<double> t;
  std::vector<SeriesPoint> points;
  std::vector<std::string> notes;

  double param() const { return t.value_or(0.0); }
  int n_max() const { return points.empty() ? 0 : points.back().n; }
};

/// log of a plain nonnegative count as a series point.
inline LogWeight log_count(std::size_t n) {
  if (n == 0) return LogWeight{0, 0, true};
  return LogWeight{std::log(static_cast<double>(n)), 0, false};
}

}  // namespace catdyn
