#pragma once

// Run reports: JSON (keys scenario, series, estimates, matrices, verdicts,
// meta) and long-format CSV (scenario, quantity, n, value).
//
// Non-finite doubles are written as the strings "inf", "-inf", "nan"; exact
// rationals as strings.

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "catdyn/entropy/entropy.hpp"

namespace catdyn {

struct PointRecord {
  int n = 0;
  double value = 0;  // log value at the series parameter
  double base = 0;
  long shift = 0;
  bool absent = false;  // log 0
  std::string field;
  std::optional<std::map<int, std::size_t>> dims;
  friend bool operator==(const PointRecord&, const PointRecord&) = default;
};

struct SeriesRecord {
  std::string quantity;
  std::optional<double> t;
  std::vector<PointRecord> points;
  std::vector<std::string> notes;
  friend bool operator==(const SeriesRecord&, const SeriesRecord&) = default;
};

struct EstimateRecord {
  std::string quantity;
  std::optional<double> t;
  double point = 0;
  std::string method;
  int window_lo = 0, window_hi = 0;
  double last_difference = 0, regression_slope = 0, residual = 0;
  bool oscillation = false, absent = false;
  friend bool operator==(const EstimateRecord&, const EstimateRecord&) = default;
};

struct SpectralRecord {
  std::vector<std::string> char_poly;  // constant term first
  std::string rho_lower, rho_upper;
  std::string log_rho_lower, log_rho_upper;
  bool exact = false, log_minus_infinity = false;
  friend bool operator==(const SpectralRecord&, const SpectralRecord&) = default;
};

struct MatrixRecord {
  std::string name;
  std::vector<std::vector<std::string>> entries;
  std::optional<SpectralRecord> spectral;
  friend bool operator==(const MatrixRecord&, const MatrixRecord&) = default;
};

struct VerdictRecord {
  std::string name;
  bool pass = false;
  double lhs = 0, rhs = 0, tolerance = 0, gap = 0;
  std::string detail;
  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

struct ScenarioEcho {
  std::string name;
  std::string kind;  // "algebra" or "lattice"
  std::string source;
  nlohmann::json params;
  friend bool operator==(const ScenarioEcho&, const ScenarioEcho&) = default;
};

struct Meta {
  std::string version;
  std::uint64_t seed = 0;
  std::vector<std::string> fields;
  int completed = 0;
  std::vector<std::string> notes;
  std::optional<nlohmann::json> timings;
  friend bool operator==(const Meta&, const Meta&) = default;
};

struct Report {
  ScenarioEcho scenario;
  std::vector<SeriesRecord> series;
  std::vector<EstimateRecord> estimates;
  std::vector<MatrixRecord> matrices;
  std::vector<VerdictRecord> verdicts;
  Meta meta;

  bool all_pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
  friend bool operator==(const Report&, const Report&) = default;
};

// ---------------------------------------------------------------------------
// Builders from library types.

inline VerdictRecord to_record(const Verdict& v) { return {v.name, v.pass, v.lhs, v.rhs, v.tolerance, v.gap, v.detail}; }

inline EstimateRecord to_record(const std::string& quantity, std::optional<double> t, const EntropyEstimate& e) {
  return {quantity,          t,          e.point,           e.method,     e.window_lo, e.window_hi,
          e.last_difference, e.regression_slope, e.residual, e.oscillation, e.absent};
}

inline SeriesRecord to_record(const GrowthSeries& s, const std::vector<ExtTable>* dims = nullptr) {
  SeriesRecord r{s.quantity, s.t, {}, s.notes};
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& p = s.points[i];
    PointRecord q{p.n, p.log_value(s.param()), p.weight.base, p.weight.shift, p.weight.zero, p.field, std::nullopt};
    if (p.weight.zero) q.base = 0;
    if (dims) q.dims = (*dims)[i].dims();
    r.points.push_back(std::move(q));
  }
  return r;
}

inline std::vector<std::vector<std::string>> matrix_entries(const IntMatrix& m) {
  std::vector<std::vector<std::string>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i].push_back(to_string(m(i, j)));
  return rows;
}

inline MatrixRecord matrix_record(const std::string& name, const IntMatrix& m, bool spectral, const Rational& tol) {
  MatrixRecord r{name, matrix_entries(m), std::nullopt};
  if (spectral) {
    SpectralRecord s;
    const IntPolynomial p = char_poly(m);
    for (long k = 0; k <= p.degree(); ++k) s.char_poly.push_back(to_string(p.coeff(static_cast<std::size_t>(k))));
    const auto rho = spectral_radius(m, tol);
    const auto lr = log_spectral_radius(m, tol);
    s.rho_lower = to_string(rho.lower), s.rho_upper = to_string(rho.upper);
    s.exact = lr.exact;
    s.log_minus_infinity = lr.minus_infinity;
    if (!lr.minus_infinity) s.log_rho_lower = to_string(lr.lower), s.log_rho_upper = to_string(lr.upper);
    r.spectral = s;
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON.

namespace report_detail {

inline nlohmann::json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline double num(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw InvalidArgument("bad number '" + s + "' in report");
  }
  return j.get<double>();
}

inline nlohmann::json opt_num(const std::optional<double>& x) { return x ? num(*x) : nlohmann::json(nullptr); }
inline std::optional<double> opt_num(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return num(j);
}

}  // namespace report_detail

inline nlohmann::json to_json(const Report& r) {
  using nlohmann::json;
  using report_detail::num;
  using report_detail::opt_num;
  json out;
  out["scenario"] = {{"name", r.scenario.name}, {"kind", r.scenario.kind}, {"source", r.scenario.source}, {"params", r.scenario.params}};
  out["series"] = json::array();
  for (const auto& s : r.series) {
    json pts = json::array();
    for (const auto& p : s.points) {
      json jp = {{"n", p.n}, {"value", num(p.value)}, {"base", num(p.base)}, {"shift", p.shift}, {"absent", p.absent}, {"field", p.field}};
      if (p.dims) {
        json d = json::object();
        for (auto [deg, n] : *p.dims) d[std::to_string(deg)] = n;
        jp["dims"] = d;
      }
      pts.push_back(jp);
    }
    out["series"].push_back({{"quantity", s.quantity}, {"t", opt_num(s.t)}, {"points", pts}, {"notes", s.notes}});
  }
  out["estimates"] = json::array();
  for (const auto& e : r.estimates)
    out["estimates"].push_back({{"quantity", e.quantity},
                                {"t", opt_num(e.t)},
                                {"point", num(e.point)},
                                {"method", e.method},
                                {"window", {e.window_lo, e.window_hi}},
                                {"last_difference", num(e.last_difference)},
                                {"regression_slope", num(e.regression_slope)},
                                {"residual", num(e.residual)},
                                {"oscillation", e.oscillation},
                                {"absent", e.absent}});
  out["matrices"] = json::array();
  for (const auto& m : r.matrices) {
    json jm = {{"name", m.name}, {"entries", m.entries}};
    if (m.spectral) {
      const auto& s = *m.spectral;
      jm["spectral"] = {{"char_poly", s.char_poly},
                        {"rho", {s.rho_lower, s.rho_upper}},
                        {"log_rho", {s.log_rho_lower, s.log_rho_upper}},
                        {"exact", s.exact},
                        {"log_minus_infinity", s.log_minus_infinity}};
    }
    out["matrices"].push_back(jm);
  }
  out["verdicts"] = json::array();
  for (const auto& v : r.verdicts)
    out["verdicts"].push_back({{"name", v.name},
                               {"pass", v.pass},
                               {"lhs", num(v.lhs)},
                               {"rhs", num(v.rhs)},
                               {"tolerance", num(v.tolerance)},
                               {"gap", num(v.gap)},
                               {"detail", v.detail}});
  out["meta"] = {{"version", r.meta.version},
                 {"seed", r.meta.seed},
                 {"fields", r.meta.fields},
                 {"completed", r.meta.completed},
                 {"notes", r.meta.notes},
                 {"all_pass", r.all_pass()}};
  if (r.meta.timings) out["meta"]["timings"] = *r.meta.timings;
  return out;
}

inline Report report_from_json(const nlohmann::json& j) {
  using report_detail::num;
  using report_detail::opt_num;
  Report r;
  try {
    const auto& sc = j.at("scenario");
    r.scenario = {sc.at("name"), sc.at("kind"), sc.at("source"), sc.at("params")};
    for (const auto& s : j.at("series")) {
      SeriesRecord sr{s.at("quantity"), opt_num(s.at("t")), {}, s.at("notes").get<std::vector<std::string>>()};
      for (const auto& p : s.at("points")) {
        PointRecord pr{p.at("n"), num(p.at("value")), num(p.at("base")), p.at("shift"), p.at("absent"), p.at("field"), std::nullopt};
        if (p.contains("dims")) {
          std::map<int, std::size_t> d;
          for (const auto& [k, v] : p.at("dims").items()) d[std::stoi(k)] = v.get<std::size_t>();
          pr.dims = d;
        }
        sr.points.push_back(std::move(pr));
      }
      r.series.push_back(std::move(sr));
    }
    for (const auto& e : j.at("estimates"))
      r.estimates.push_back({e.at("quantity"), opt_num(e.at("t")), num(e.at("point")), e.at("method"), e.at("window").at(0),
                             e.at("window").at(1), num(e.at("last_difference")), num(e.at("regression_slope")),
                             num(e.at("residual")), e.at("oscillation"), e.at("absent")});
    for (const auto& m : j.at("matrices")) {
      MatrixRecord mr{m.at("name"), m.at("entries").get<std::vector<std::vector<std::string>>>(), std::nullopt};
      if (m.contains("spectral")) {
        const auto& s = m.at("spectral");
        mr.spectral = SpectralRecord{s.at("char_poly").get<std::vector<std::string>>(),
                                     s.at("rho").at(0),
                                     s.at("rho").at(1),
                                     s.at("log_rho").at(0),
                                     s.at("log_rho").at(1),
                                     s.at("exact"),
                                     s.at("log_minus_infinity")};
      }
      r.matrices.push_back(std::move(mr));
    }
    for (const auto& v : j.at("verdicts"))
      r.verdicts.push_back({v.at("name"), v.at("pass"), num(v.at("lhs")), num(v.at("rhs")), num(v.at("tolerance")), num(v.at("gap")),
                            v.at("detail")});
    const auto& m = j.at("meta");
    r.meta.version = m.at("version");
    r.meta.seed = m.at("seed");
    r.meta.fields = m.at("fields").get<std::vector<std::string>>();
    r.meta.completed = m.at("completed");
    r.meta.notes = m.at("notes").get<std::vector<std::string>>();
    if (m.contains("timings")) r.meta.timings = m.at("timings");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed report JSON: ") + e.what());
  }
  return r;
}

/// Aggregate of several reports (corpus runs).
inline nlohmann::json to_json(const std::vector<Report>& reports) {
  nlohmann::json out;
  out["reports"] = nlohmann::json::array();
  bool pass = true;
  for (const auto& r : reports) {
    out["reports"].push_back(to_json(r));
    pass = pass && r.all_pass();
  }
  out["all_pass"] = pass;
  return out;
}

// ---------------------------------------------------------------------------
// CSV.

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string short_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

inline std::string series_label(const SeriesRecord& s) {
  return s.t ? s.quantity + "[t=" + short_double(*s.t) + "]" : s.quantity;
}

inline std::string csv_header() { return "scenario,quantity,n,value\n"; }

inline std::string to_csv_rows(const Report& r) {
  std::string out;
  for (const auto& s : r.series)
    for (const auto& p : s.points)
      out += r.scenario.name + "," + series_label(s) + "," + std::to_string(p.n) + "," + format_double(p.value) + "\n";
  return out;
}

inline std::string to_csv(const std::vector<Report>& reports) {
  std::string out = csv_header();
  for (const auto& r : reports) out += to_csv_rows(r);
  return out;
}

}  // namespace catdyn
