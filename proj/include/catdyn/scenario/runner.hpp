#pragma once

// Runs a parsed scenario and assembles its report.
//
// Field policy for algebras with rational coefficients:
//   Q      all powers over Q
//   Fp p   all powers over F_p
//   auto   Q when nmax <= exact_max; otherwise F_32003 for every n plus Q for
//          n <= exact_max, reporting the Q values there and a verdict on the
//          overlap.
// Presentations over F_p or an extension field are computed over that field.

#include <algorithm>
#include <chrono>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "catdyn/entropy/entropy.hpp"
#include "catdyn/quiver/presentation.hpp"
#include "catdyn/scenario/report.hpp"
#include "catdyn/scenario/scenario.hpp"

#ifndef CATDYN_VERSION
#define CATDYN_VERSION "0.1.0"
#endif

namespace catdyn {

inline const char* version() { return CATDYN_VERSION; }

struct RunOptions {
  bool timings = false;
};

/// Command-line overrides of scenario parameters.
struct Overrides {
  std::optional<int> n_max;
  std::optional<std::string> tgrid;
  std::optional<FieldPolicy> field;
  std::optional<std::uint64_t> seed;
};

inline void apply_overrides(Scenario& s, const Overrides& o) {
  if (o.seed) s.seed = *o.seed;
  if (!o.n_max && !o.tgrid && !o.field) return;
  if (!s.entropy) throw InvalidArgument("--nmax, --tgrid and --field only apply to algebra scenarios");
  auto& e = *s.entropy;
  if (o.n_max) {
    if (*o.n_max < 3 || *o.n_max > 40) throw InvalidArgument("--nmax must lie in 3..40");
    e.n_max = *o.n_max;
  }
  if (o.tgrid) {
    e.tgrid = parse_tgrid(*o.tgrid);
    e.tgrid_text = *o.tgrid;
  }
  if (o.field) e.field = *o.field;
}

namespace runner_detail {

const Rational kSpectralTol(1, 1000000000);

struct AlgebraRun {
  PowerTables tables;
  KNumMatrix knum;
};

template <ExactField F>
AlgebraRun compute(const AlgebraPresentation& p, const F& field, const EntropyParams& e, int n_max) {
  const auto A = build_algebra(p, field);
  const FunctorKernels<F> K(A);
  const auto M = K.kernel(parse_functor_word(e.functor));
  return {power_tables(K, M, PowerOptions{n_max, e.hochschild, e.cap}, field.spec().name()), knum_matrix(*A, M)};
}

/// Runs over the field named by `spec`, or its extension by `minpoly`.
inline AlgebraRun compute_over(const AlgebraPresentation& p, const FieldSpec& spec, const EntropyParams& e, int n_max) {
  AlgebraPresentation q = p;
  q.field = spec.prime_subfield();
  if (spec.characteristic == 0) {
    if (spec.minpoly.empty()) return compute(q, Rationals{}, e, n_max);
    return compute(q, make_extension(Rationals{}, spec.minpoly), e, n_max);
  }
  const PrimeField fp(spec.characteristic);
  if (spec.minpoly.empty()) return compute(q, fp, e, n_max);
  return compute(q, make_extension(fp, spec.minpoly), e, n_max);
}

inline void check_reducible_mod(const AlgebraPresentation& p, std::uint32_t prime) {
  for (const auto& r : p.relations)
    for (const auto& t : r.terms)
      if (t.coeff.get_den() % prime == 0)
        throw InvalidArgument("relation coefficient " + to_string(t.coeff) + " has no reduction mod " + std::to_string(prime));
}

inline std::vector<SeriesRecord> series_records(const PowerTables& tables, const EntropySummary& s) {
  std::vector<SeriesRecord> out;
  const FieldLabel label = [&](int) { return std::string(); };
  GrowthSeries cat = total_series("cat_total", tables.cat, label);
  auto cat_rec = to_record(cat, &tables.cat);
  out.push_back(cat_rec);
  for (const auto& c : s.h_t) out.push_back(to_record(c.series));
  if (!tables.hh_upper.empty()) {
    out.push_back(to_record(s.hh_upper_series, &tables.hh_upper));
    out.push_back(to_record(s.hh_lower_series, &tables.hh_lower));
    out.push_back(to_record(s.euler_series));
  }
  return out;
}

/// Sampled check of log f(m+n) <= log f(m) + log f(n) + C on the t = 0
/// series; reports the largest excess seen.
inline std::string submultiplicativity_note(const std::vector<ExtTable>& cat, std::uint64_t seed) {
  std::vector<std::pair<int, int>> pairs;
  const int N = static_cast<int>(cat.size());
  for (int m = 1; m <= N; ++m)
    for (int n = m; m + n <= N; ++n) pairs.emplace_back(m, n);
  if (pairs.empty()) return "submultiplicativity: series too short";
  std::mt19937_64 rng(seed);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  if (pairs.size() > 16) pairs.resize(16);
  double excess = -std::numeric_limits<double>::infinity();
  for (auto [m, n] : pairs) {
    const auto f = [&](int k) { return log_count(cat[k - 1].total()).value(0); };
    if (cat[m + n - 1].empty()) continue;
    excess = std::max(excess, f(m + n) - f(m) - f(n));
  }
  return "submultiplicativity sample (" + std::to_string(pairs.size()) + " pairs, seed " + std::to_string(seed) +
         "): max log f(m+n) - log f(m) - log f(n) = " + format_double(excess);
}

inline bool same_tables(const PowerTables& a, const PowerTables& b) {
  return a.cat == b.cat && a.hh_upper == b.hh_upper && a.hh_lower == b.hh_lower && a.kernel_summands == b.kernel_summands &&
         a.completed == b.completed;
}

inline nlohmann::json params_json(const Scenario& s) {
  nlohmann::json j;
  j["seed"] = s.seed;
  if (s.entropy) {
    const auto& e = *s.entropy;
    j["functor"] = e.functor;
    j["nmax"] = e.n_max;
    j["tgrid"] = e.tgrid_text;
    j["tolerance"] = e.tolerance;
    j["yomdin_tolerance"] = e.yomdin_tolerance;
    j["field"] = e.field.text();
    j["exact_max"] = e.exact_max;
    j["cap"] = e.cap;
    j["hochschild"] = e.hochschild;
  }
  if (s.basechange) {
    std::vector<std::string> mp;
    for (const auto& c : s.basechange->minpoly) mp.push_back(to_string(c));
    j["extension"] = mp;
  }
  if (s.lattice) {
    const auto& l = *s.lattice;
    if (l.degree) j["degree"] = *l.degree;
    if (l.gram) j["gram"] = matrix_entries(*l.gram);
    j["word"] = l.word;
    j["power"] = l.power;
    j["expect_trivial"] = l.expect_trivial;
  }
  return j;
}

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

inline Report run_algebra(const Scenario& s, const RunOptions& opt) {
  const auto t0 = Clock::now();
  const EntropyParams& e = *s.entropy;
  const AlgebraPresentation p = parse_quiver(*s.algebra, s.algebra_line);
  Report r;
  r.meta.version = version();
  r.meta.seed = s.seed;
  nlohmann::json timings = nlohmann::json::object();

  std::optional<AlgebraRun> main_run;
  std::optional<AlgebraRun> exact;  // rational confirmation (auto policy)
  std::string main_field;
  const FieldSpec& pf = p.field;
  if (s.basechange || !pf.is_prime_field() || pf.characteristic != 0) {
    if (e.field.kind == FieldPolicy::Kind::rational && pf.characteristic != 0)
      throw InvalidArgument("field policy Q conflicts with a presentation over " + pf.name());
    if (e.field.kind == FieldPolicy::Kind::prime && (pf.characteristic != e.field.prime || !pf.is_prime_field()))
      throw InvalidArgument("field policy " + e.field.text() + " conflicts with a presentation over " + pf.name());
    main_run = compute_over(p, pf, e, e.n_max);
    main_field = pf.name();
  } else if (e.field.kind == FieldPolicy::Kind::rational ||
             (e.field.kind == FieldPolicy::Kind::automatic && e.n_max <= e.exact_max)) {
    main_run = compute_over(p, FieldSpec{0, {}}, e, e.n_max);
    main_field = "Q";
  } else {
    const std::uint32_t prime = e.field.prime;
    check_reducible_mod(p, prime);
    const auto tp = Clock::now();
    main_run = compute_over(p, FieldSpec{prime, {}}, e, e.n_max);
    timings["prime_field_ms"] = ms_since(tp);
    main_field = FieldSpec{prime, {}}.name();
    if (e.field.kind == FieldPolicy::Kind::automatic) {
      const auto tq = Clock::now();
      exact = compute_over(p, FieldSpec{0, {}}, e, std::min(e.exact_max, e.n_max));
      timings["rational_ms"] = ms_since(tq);
    }
  }
  r.meta.fields.push_back(main_field);
  const AlgebraRun& main = *main_run;

  PowerTables tables = main.tables;
  int q_upto = 0;
  if (exact) {
    r.meta.fields.insert(r.meta.fields.begin(), "Q");
    const PowerTables& qt = exact->tables;
    q_upto = std::min(qt.completed, tables.completed);
    bool agree = true;
    for (int i = 0; i < q_upto; ++i) {
      agree = agree && qt.cat[i] == tables.cat[i];
      if (e.hochschild) agree = agree && qt.hh_upper[i] == tables.hh_upper[i] && qt.hh_lower[i] == tables.hh_lower[i];
      tables.cat[i] = qt.cat[i];
      if (e.hochschild) tables.hh_upper[i] = qt.hh_upper[i], tables.hh_lower[i] = qt.hh_lower[i];
    }
    VerdictRecord v{"dimension tables over Q and " + main_field + " agree for n <= " + std::to_string(q_upto), agree, 0, 0, 0, 0,
                    agree ? "exact overlap" : "tables differ: " + main_field + " may be a bad prime"};
    r.verdicts.push_back(v);
  }
  const FieldLabel label = [&](int n) { return n <= q_upto ? std::string("Q") : main_field; };

  EntropySummary summary = summarize(tables, e.tgrid, label);
  auto series = series_records(tables, summary);
  for (auto& sr : series)
    for (auto& pt : sr.points) pt.field = label(pt.n);
  series.front().notes.push_back(submultiplicativity_note(tables.cat, s.seed));
  r.series = std::move(series);

  for (const auto& c : summary.h_t) r.estimates.push_back(to_record("h_t", c.t, c.estimate));
  r.estimates.push_back(to_record("h_cat", std::nullopt, summary.h_cat));
  if (e.hochschild) {
    r.estimates.push_back(to_record("h_hh_upper", std::nullopt, summary.hh_upper));
    r.estimates.push_back(to_record("h_hh_lower", std::nullopt, summary.hh_lower));
    r.estimates.push_back(to_record("euler_trace", std::nullopt, summary.euler));
  }

  r.matrices.push_back(matrix_record("K_num", main.knum.matrix, true, kSpectralTol));
  r.matrices.push_back(matrix_record("euler_form", main.knum.euler_form, false, kSpectralTol));
  const LogEnclosure lr = log_spectral_radius(main.knum.matrix, kSpectralTol);

  for (const auto& v : inequality_report(summary, tables, lr, e.tolerance)) {
    const bool hh = v.name.find("HH") != std::string::npos || v.name.find("euler") != std::string::npos;
    if (hh && !e.hochschild) continue;
    r.verdicts.push_back(to_record(v));
  }
  r.verdicts.push_back(to_record(yomdin_bound_check(summary.h_cat.point, lr, e.yomdin_tolerance)));

  if (s.basechange) {
    FieldSpec ext = pf;
    ext.minpoly = s.basechange->minpoly;
    const auto tb = Clock::now();
    const AlgebraRun big = compute_over(p, ext, e, e.n_max);
    timings["extension_ms"] = ms_since(tb);
    r.meta.fields.push_back(ext.name());
    const FieldLabel blabel = [&](int) { return std::string(); };
    const FieldLabel slabel = [&](int) { return std::string(); };
    const bool tables_same = same_tables(main.tables, big.tables);
    const bool series_same = series_records(main.tables, summarize(main.tables, e.tgrid, slabel)) ==
                             series_records(big.tables, summarize(big.tables, e.tgrid, blabel));
    const bool knum_same = main.knum.matrix == big.knum.matrix;
    const bool ok = tables_same && series_same && knum_same;
    r.verdicts.push_back({"base change " + pf.name() + " -> " + ext.name() + " leaves tables and series unchanged", ok, 0, 0, 0, 0,
                          ok ? "identical for n <= " + std::to_string(big.tables.completed)
                             : std::string(tables_same ? "" : "tables differ; ") + (series_same ? "" : "series differ; ") +
                                   (knum_same ? "" : "K_num differs")});
  }

  r.meta.completed = tables.completed;
  if (main.tables.cap_note) r.meta.notes.push_back(*main.tables.cap_note);
  if (tables.completed < e.n_max)
    r.meta.notes.push_back("series computed to n = " + std::to_string(tables.completed) + " of " + std::to_string(e.n_max));
  if (opt.timings) {
    timings["total_ms"] = ms_since(t0);
    r.meta.timings = timings;
  }
  return r;
}

inline Report run_lattice(const Scenario& s, const RunOptions& opt) {
  const auto t0 = Clock::now();
  const LatticeParams& l = *s.lattice;
  const LatticeIsometry gen = parse_lattice_word(l.word, l);
  const LatticeIsometry P = power(gen, l.power);
  Report r;
  r.meta.version = version();
  r.meta.seed = s.seed;
  r.meta.fields.push_back("Z");
  r.meta.completed = static_cast<int>(l.power);
  r.matrices.push_back(matrix_record("generator", gen.matrix(), true, kSpectralTol));
  r.matrices.push_back(matrix_record("generator^" + std::to_string(l.power), P.matrix(), true, kSpectralTol));
  const LogEnclosure lr = entropy_lower_bound(P, kSpectralTol);

  long order = 0;
  LatticeIsometry q = gen;
  for (long k = 1; k <= 24; ++k, q = compose(q, gen))
    if (q.is_identity()) {
      order = k;
      break;
    }
  r.meta.notes.push_back(order ? "generator order " + std::to_string(order) : "generator order infinite or > 24");

  const double lr_upper = lr.minus_infinity ? -std::numeric_limits<double>::infinity() : lr.upper.get_d();
  if (l.expect_trivial) {
    const bool trivial = is_cohomologically_trivial(P);
    const bool zero = !lr.minus_infinity && lr.exact && lr.lower == 0 && lr.upper == 0;
    std::string detail = trivial ? "matrix is the identity" : "matrix is not the identity";
    detail += zero ? "; log rho = 0 exactly" : "; log rho in [" + format_double(lr.lower.get_d()) + ", " + format_double(lr_upper) + "]";
    r.verdicts.push_back({"lattice action trivial; log rho = 0", trivial && zero, lr_upper, 0, 0, -lr_upper, detail});
  }
  const auto tz = trace_zeta(P.matrix(), 10);
  r.verdicts.push_back({"trace-zeta identity to order 10", tz.agree(), 0, 0, 0, 0,
                        tz.agree() ? "exp side equals det side" : "coefficients differ"});
  if (opt.timings) r.meta.timings = nlohmann::json{{"total_ms", ms_since(t0)}};
  return r;
}

}  // namespace runner_detail

inline Report run_scenario(const Scenario& s, const RunOptions& opt = {}) {
  Report r = s.is_lattice() ? runner_detail::run_lattice(s, opt) : runner_detail::run_algebra(s, opt);
  r.scenario = {s.name, s.is_lattice() ? "lattice" : "algebra", s.text, runner_detail::params_json(s)};
  return r;
}

}  // namespace catdyn
