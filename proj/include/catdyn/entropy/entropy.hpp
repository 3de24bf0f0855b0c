#pragma once

// Power sequences of a quasi-endofunctor and the entropy invariants built on
// them: h_t, h_{HH^*}, h_{HH_*}, K_num spectral bounds and their comparisons.

#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catdyn/entropy/estimators.hpp"
#include "catdyn/entropy/series.hpp"
#include "catdyn/exact/spectral.hpp"
#include "catdyn/homological/hochschild.hpp"

namespace catdyn {

/// Dimension tables of the powers M^n, n = 1..completed.
struct PowerTables {
  std::vector<ExtTable> cat;       // H^*(A (x) M^n) = Ext^*(A, Phi^n(A))
  std::vector<ExtTable> hh_upper;  // HH^*(M^n)
  std::vector<ExtTable> hh_lower;  // HH_*(M^n), keyed by homological degree
  std::vector<std::size_t> kernel_summands;
  std::string field;
  int completed = 0;
  std::optional<std::string> cap_note;
  friend bool operator==(const PowerTables&, const PowerTables&) = default;
};

struct PowerOptions {
  int n_max = 6;
  bool hochschild = true;
  std::size_t summand_cap = 4000000;  // per complex
};

/// Computes the tables up to n_max, stopping early (with a note) when a
/// complex exceeds the summand cap. HH_* goes through both the definition and
/// the trace complex; a mismatch throws.
template <ExactField F>
PowerTables power_tables(const FunctorKernels<F>& K, const ProjComplex<F>& M, const PowerOptions& opt,
                         const std::string& field_name) {
  if (opt.n_max < 1) throw InvalidArgument("n_max must be at least 1");
  PowerTables out;
  out.field = field_name;
  ProjComplex<F> X = minimize(free_right_module(K.algebra()));
  ProjComplex<F> B;
  for (int n = 1; n <= opt.n_max; ++n) {
    X = minimize(tensor(X, M));
    if (opt.hochschild) B = n == 1 ? M : derived_tensor(B, M);
    const std::size_t size = std::max(X.summand_count(), opt.hochschild ? B.summand_count() : 0);
    if (size > opt.summand_cap) {
      out.cap_note = "summand cap " + std::to_string(opt.summand_cap) + " exceeded at n = " + std::to_string(n) +
                     "; series stops at n = " + std::to_string(out.completed);
      break;
    }
    out.cat.push_back(homology(X));
    if (opt.hochschild) {
      out.hh_upper.push_back(K.hochschild_cohomology(B));
      out.hh_lower.push_back(K.hochschild_homology(B));
      out.kernel_summands.push_back(B.summand_count());
    }
    out.completed = n;
  }
  return out;
}

/// Per-n field labels when several runs are spliced together.
using FieldLabel = std::function<std::string(int n)>;

inline GrowthSeries delta_series(const std::vector<ExtTable>& tables, double t, const FieldLabel& field) {
  GrowthSeries s{"delta_prime", t, {}, {}};
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    s.points.push_back({n, log_delta_prime(tables[i], t), field(n)});
  }
  return s;
}

inline GrowthSeries total_series(const std::string& quantity, const std::vector<ExtTable>& tables, const FieldLabel& field) {
  GrowthSeries s{quantity, std::nullopt, {}, {}};
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    s.points.push_back({n, log_count(tables[i].total()), field(n)});
  }
  return s;
}

/// log |sum (-1)^i dim HH_i(M^n)|, absent when the sum vanishes.
inline GrowthSeries euler_trace_series(const std::vector<ExtTable>& hh_lower, const FieldLabel& field) {
  GrowthSeries s{"euler_trace", std::nullopt, {}, {}};
  for (std::size_t i = 0; i < hh_lower.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    s.points.push_back({n, log_count(static_cast<std::size_t>(std::labs(hh_lower[i].euler_characteristic()))), field(n)});
  }
  return s;
}

struct CategoricalEntropy {
  double t = 0;
  GrowthSeries series;
  EntropyEstimate estimate;
};

inline std::vector<CategoricalEntropy> categorical_entropy(const std::vector<ExtTable>& cat, const std::vector<double>& tgrid,
                                                           const FieldLabel& field) {
  std::vector<CategoricalEntropy> out;
  for (double t : tgrid) {
    auto s = delta_series(cat, t, field);
    auto e = estimate_limit(s);
    out.push_back({t, std::move(s), e});
  }
  return out;
}

inline std::vector<double> make_tgrid(double lo, double hi, double step) {
  if (!(step > 0) || hi < lo) throw InvalidArgument("t grid needs lo <= hi and step > 0");
  std::vector<double> g;
  const long n = std::lround(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

// ---------------------------------------------------------------------------
// Numerical Grothendieck group.

struct KNumMatrix {
  IntMatrix matrix;       // column i = class of e_i A (x) M in the basis [e_l A]
  IntMatrix euler_form;   // chi(P_i, P_j) = dim e_j A e_i
};

template <ExactField F>
KNumMatrix knum_matrix(const FinDimAlgebra<F>& A, const ProjComplex<F>& M) {
  const std::size_t nv = A.nvertices();
  IntMatrix m(Rationals{}, nv, nv), chi(Rationals{}, nv, nv);
  for (std::size_t t = 0; t < M.terms.size(); ++t) {
    const int deg = M.lo + static_cast<int>(t);
    const long sign = deg % 2 == 0 ? 1 : -1;
    for (const auto& s : M.terms[t])
      for (std::size_t i = 0; i < nv; ++i) m(s.l, i) += Rational(sign * static_cast<long>(A.block_dim(i, s.j)));
  }
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = 0; j < nv; ++j) chi(i, j) = Rational(static_cast<long>(A.block_dim(j, i)));
  return {m, chi};
}

// ---------------------------------------------------------------------------
// Verdicts.

struct Verdict {
  std::string name;
  bool pass = false;
  double lhs = 0, rhs = 0, tolerance = 0;
  double gap = 0;  // rhs + tolerance - lhs for inequalities lhs <= rhs + tol
  std::string detail;
};

/// lhs <= rhs + tol. -infinity on the left always passes.
inline Verdict inequality(const std::string& name, double lhs, double rhs, double tol, std::string detail = {}) {
  Verdict v{name, false, lhs, rhs, tol, 0, std::move(detail)};
  if (std::isinf(lhs) && lhs < 0) {
    v.pass = true;
    v.gap = std::numeric_limits<double>::infinity();
    return v;
  }
  v.gap = rhs + tol - lhs;
  v.pass = lhs <= rhs + tol;
  return v;
}

/// h_cat >= log rho(K_num) - tol, with the certified upper end of the log
/// enclosure on the right.
inline Verdict yomdin_bound_check(double h0, const LogEnclosure& log_rho, double tol) {
  const double bound = log_rho.minus_infinity ? -std::numeric_limits<double>::infinity() : log_rho.upper.get_d();
  Verdict v = inequality("yomdin: log rho(K_num) <= h_cat + tol", bound, h0, tol);
  v.detail = log_rho.exact ? "log rho exact" : "log rho certified upper end";
  return v;
}

struct EntropySummary {
  std::vector<CategoricalEntropy> h_t;
  EntropyEstimate h_cat;
  EntropyEstimate hh_upper, hh_lower, euler;
  GrowthSeries hh_upper_series, hh_lower_series, euler_series;
};

/// Verdicts (a)-(d) and the per-n Lefschetz inequality.
inline std::vector<Verdict> inequality_report(const EntropySummary& s, const PowerTables& tables, const LogEnclosure& log_rho,
                                              double tol) {
  std::vector<Verdict> out;
  out.push_back(inequality("h_HH^* <= h_cat + tol", s.hh_upper.point, s.h_cat.point, tol));
  out.push_back(inequality("h_HH_* <= h_cat + tol", s.hh_lower.point, s.h_cat.point, tol));
  const double lr = log_rho.minus_infinity ? -std::numeric_limits<double>::infinity() : log_rho.upper.get_d();
  out.push_back(inequality("log rho(K_num) <= h_cat + tol", lr, s.h_cat.point, tol));
  out.push_back(inequality("euler trace growth <= h_HH_* + tol", s.euler.point, s.hh_lower.point, tol));
  bool lefschetz = true;
  std::string where;
  for (std::size_t i = 0; i < tables.hh_lower.size(); ++i) {
    const auto chi = static_cast<std::size_t>(std::labs(tables.hh_lower[i].euler_characteristic()));
    if (chi > tables.hh_lower[i].total()) lefschetz = false, where = "fails at n = " + std::to_string(i + 1);
  }
  Verdict v{"|chi(HH_*(M^n))| <= dim HH_*(M^n) for all n", lefschetz, 0, 0, 0, 0,
            lefschetz ? "checked n = 1.." + std::to_string(tables.hh_lower.size()) : where};
  out.push_back(v);
  return out;
}

inline EntropySummary summarize(const PowerTables& tables, const std::vector<double>& tgrid, const FieldLabel& field) {
  EntropySummary s;
  std::vector<double> grid = tgrid;
  if (std::find(grid.begin(), grid.end(), 0.0) == grid.end()) grid.push_back(0.0);
  s.h_t = categorical_entropy(tables.cat, grid, field);
  for (const auto& c : s.h_t)
    if (c.t == 0.0) s.h_cat = c.estimate;
  s.hh_upper_series = total_series("hh_upper", tables.hh_upper, field);
  s.hh_lower_series = total_series("hh_lower", tables.hh_lower, field);
  s.euler_series = euler_trace_series(tables.hh_lower, field);
  s.hh_upper = estimate_limsup(s.hh_upper_series);
  s.hh_lower = estimate_limsup(s.hh_lower_series);
  s.euler = estimate_limsup(s.euler_series);
  return s;
}

}  // namespace catdyn
