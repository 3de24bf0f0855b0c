#include <cmath>

#include <catch_amalgamated.hpp>

#include "catdyn/entropy/entropy.hpp"
#include "catdyn/quiver/presentation.hpp"

using namespace catdyn;
using Catch::Matchers::WithinAbs;

namespace {

const char* kA2 = "vertices 1 2; arrow a: 1->2";
const char* kKron3 = "vertices 1 2; arrows a b c: 1->2";

AlgebraPtr<Rationals> build_q(const std::string& text) { return build_algebra(parse_quiver(text), Rationals{}); }

const FieldLabel q_label = [](int) { return std::string("Q"); };

GrowthSeries synthetic(const std::vector<std::size_t>& dims) {
  GrowthSeries s{"synthetic", std::nullopt, {}, {}};
  for (std::size_t i = 0; i < dims.size(); ++i) s.points.push_back({static_cast<int>(i) + 1, log_count(dims[i]), "Q"});
  return s;
}

}  // namespace

TEST_CASE("delta prime examples") {
  const auto a = delta_prime(ExtTable(std::map<int, std::size_t>{{0, 3}}), 0);
  REQUIRE(a.exact);
  CHECK(*a.exact == 3);
  CHECK(delta_prime(ExtTable(std::map<int, std::size_t>{{-4, 3}}), 1).value == Catch::Approx(3 * std::exp(4.0)));
  CHECK(*delta_prime(ExtTable(std::map<int, std::size_t>{{0, 1}, {1, 1}}), 0).exact == 2);
  CHECK(delta_prime(ExtTable{}, 0.5).zero);
  CHECK(log_delta_prime(ExtTable{}, 0).zero);
  for (double t : {-1.0, -0.3, 0.0, 0.7}) {
    const ExtTable tab(std::map<int, std::size_t>{{-2, 4}, {0, 1}, {3, 7}});
    CHECK(log_delta_prime(tab, t).value(t) == Catch::Approx(std::log(delta_prime(tab, t).value)));
  }
}

TEST_CASE("estimators on synthetic sequences") {
  const auto geo = estimate_limit(synthetic({2, 6, 18, 54, 162, 486}));
  CHECK_THAT(geo.point, WithinAbs(std::log(3.0), 1e-12));
  CHECK_THAT(geo.regression_slope, WithinAbs(std::log(3.0), 1e-12));
  CHECK_FALSE(geo.oscillation);

  const auto periodic = synthetic({3, 2, 3, 3, 2, 3, 3, 2, 3, 3, 2, 3});
  CHECK(estimate_limit(periodic).point == 0);
  CHECK(estimate_limit(periodic).oscillation);
  CHECK(estimate_limsup(synthetic({1, 1, 2, 1, 1, 2, 1, 1, 2, 1, 1, 2})).point == 0);
  CHECK(estimate_limsup(synthetic({1, 2, 1, 4, 1, 8, 1, 16})).point == Catch::Approx(std::log(2.0) / 2));
  CHECK(estimate_limit(synthetic({5})).absent);
  CHECK(estimate_limit(synthetic({5, 0})).absent);
}

TEST_CASE("identity and shift functors over A2") {
  const auto A = build_q(kA2);
  const FunctorKernels<Rationals> K(A);
  const auto grid = make_tgrid(-1, 1, 0.25);
  REQUIRE(grid.size() == 9);

  const auto id = power_tables(K, K.diagonal(), {5, true}, "Q");
  for (const auto& c : categorical_entropy(id.cat, grid, q_label)) CHECK(c.estimate.point == 0);
  const auto sid = summarize(id, grid, q_label);
  CHECK(sid.hh_upper.point == 0);
  CHECK(sid.hh_lower.point == 0);
  for (const auto& t : id.hh_lower) CHECK(t.dims() == std::map<int, std::size_t>{{0, 2}});

  const auto sh = power_tables(K, K.generator(FunctorGenerator::shift), {6, true}, "Q");
  for (const auto& c : categorical_entropy(sh.cat, grid, q_label)) {
    INFO(c.t);
    CHECK(c.estimate.point == c.t);
    CHECK(c.series.points.back().weight.base == std::log(3.0));
  }
  CHECK(sh.cat[3].dims() == std::map<int, std::size_t>{{-4, 3}});
  const auto ssh = summarize(sh, grid, q_label);
  CHECK(ssh.h_cat.point == 0);
  for (const auto& p : ssh.euler_series.points) CHECK(p.weight.base == std::log(2.0));

  const auto sh2 = power_tables(K, K.kernel(parse_functor_word("shift^2")), {4, true}, "Q");
  CHECK(summarize(sh2, grid, q_label).hh_upper.point == 0);
  CHECK(summarize(sh2, grid, q_label).hh_lower.point == 0);
}

TEST_CASE("Serre functor of A2 has zero entropy") {
  const auto A = build_q(kA2);
  const FunctorKernels<Rationals> K(A);
  const auto tabs = power_tables(K, K.serre(), {12, true}, "Q");
  REQUIRE(tabs.completed == 12);
  const auto s = summarize(tabs, {0.0}, q_label);
  CHECK(s.h_cat.point >= -0.05);
  CHECK(s.h_cat.point <= 0.05);
  CHECK(s.hh_upper.point <= s.h_cat.point + 0.1);
  CHECK(s.hh_lower.point <= s.h_cat.point + 0.1);
  // S^3 = [1]: the cat series repeats with period 3 up to shifts
  CHECK(tabs.cat[2].total() == 3);
  CHECK(tabs.cat[5].total() == 3);
}

TEST_CASE("K_num matrices") {
  const auto A = build_q(kA2);
  const FunctorKernels<Rationals> K(A);
  CHECK(knum_matrix(*A, K.diagonal()).matrix == IntMatrix::identity(Rationals{}, 2));
  CHECK(knum_matrix(*A, K.generator(FunctorGenerator::shift)).matrix == int_matrix({{-1, 0}, {0, -1}}));
  const auto ka2 = knum_matrix(*A, K.serre()).matrix;
  CHECK(is_quasi_unipotent_or_nilpotent(ka2));
  CHECK(log_spectral_radius(ka2, Rational(1, 1000000)).exact);
  // Euler form of a hereditary algebra: chi(P_i, P_j) = dim Hom(P_i, P_j)
  CHECK(knum_matrix(*A, K.diagonal()).euler_form == int_matrix({{1, 0}, {1, 1}}));

  const auto B = build_q(kKron3);
  const FunctorKernels<Rationals> KB(B);
  const auto kk = knum_matrix(*B, KB.serre()).matrix;
  const auto rho = spectral_radius(kk, Rational(1, 100000000));
  const double expected = (7 + 3 * std::sqrt(5.0)) / 2;
  CHECK(rho.contains(expected));
  const auto lr = log_spectral_radius(kk, Rational(1, 100000000));
  CHECK(lr.contains(1.9248473));
  // the Serre class is minus the Coxeter transformation
  CHECK(char_poly(kk) == IntPolynomial{1, 7, 1});
}

TEST_CASE("K_num is multiplicative and matches Euler characteristics") {
  for (const char* text : {kA2, kKron3, "vertices 1 2 3; arrow a: 1->2; arrow b: 2->3; relation b*a = 0"}) {
    INFO(text);
    const auto A = build_q(text);
    const FunctorKernels<Rationals> K(A);
    const std::vector<ProjComplex<Rationals>> gens = {K.diagonal(), K.serre(), K.inverse_dualizing(),
                                                      K.generator(FunctorGenerator::shift)};
    for (const auto& M : gens)
      for (const auto& N : gens) {
        const auto MN = derived_tensor(M, N);
        CHECK(knum_matrix(*A, MN).matrix == knum_matrix(*A, N).matrix * knum_matrix(*A, M).matrix);
      }
    for (const auto& M : gens) {
      const auto km = knum_matrix(*A, M).matrix;
      Rational expect = 0;
      for (std::size_t i = 0; i < A->nvertices(); ++i)
        for (std::size_t l = 0; l < A->nvertices(); ++l) {
          std::size_t dim_l = 0;
          for (std::size_t b = 0; b < A->nvertices(); ++b) dim_l += A->block_dim(l, b);
          expect += km(l, i) * Rational(static_cast<long>(dim_l));
        }
      CHECK(Rational(functor_power_homology(M, 1).euler_characteristic()) == expect);
    }
  }
}

TEST_CASE("3-Kronecker Serre functor: entropy near log rho") {
  const PrimeField fp(32003);
  const auto A = build_algebra(parse_quiver(std::string(kKron3) + "; field Fp 32003"), fp);
  const FunctorKernels<PrimeField> K(A);
  const auto tabs = power_tables(K, K.serre(), {5, true}, "F32003");
  const auto s = summarize(tabs, {0.0}, [](int) { return std::string("F32003"); });
  const double log_rho = std::log((7 + 3 * std::sqrt(5.0)) / 2);
  CHECK_THAT(s.h_cat.point, WithinAbs(log_rho, 0.01));
  CHECK(s.hh_upper.point <= s.h_cat.point + 0.1);
  CHECK(s.hh_lower.point <= s.h_cat.point + 0.1);
  // the field does not matter for small n
  const auto AQ = build_q(kKron3);
  const FunctorKernels<Rationals> KQ(AQ);
  const auto tq = power_tables(KQ, KQ.serre(), {3, true}, "Q");
  for (int n = 0; n < 3; ++n) {
    CHECK(tq.cat[n] == tabs.cat[n]);
    CHECK(tq.hh_upper[n] == tabs.hh_upper[n]);
    CHECK(tq.hh_lower[n] == tabs.hh_lower[n]);
  }
}

TEST_CASE("inequality report and Lefschetz check") {
  const auto A = build_q(kA2);
  const FunctorKernels<Rationals> K(A);
  const auto tabs = power_tables(K, K.diagonal(), {4, true}, "Q");
  const auto s = summarize(tabs, {0.0}, q_label);
  const auto lr = log_spectral_radius(knum_matrix(*A, K.diagonal()).matrix, Rational(1, 1000000));
  for (const auto& v : inequality_report(s, tabs, lr, 0.1)) {
    INFO(v.name);
    CHECK(v.pass);
  }
  CHECK(yomdin_bound_check(s.h_cat.point, lr, 0.15).pass);
  CHECK(yomdin_bound_check(0.0, lr, 0.15).gap == Catch::Approx(0.15));
  CHECK_FALSE(inequality("x", 1.0, 0.5, 0.1).pass);
  CHECK(inequality("x", -std::numeric_limits<double>::infinity(), 0.0, 0.0).pass);
}

TEST_CASE("summand cap stops the series") {
  const auto A = build_q(kKron3);
  const FunctorKernels<Rationals> K(A);
  const auto tabs = power_tables(K, K.serre(), {6, true, 300}, "Q");
  CHECK(tabs.completed == 2);
  REQUIRE(tabs.cap_note);
  CHECK(tabs.cap_note->find("n = 3") != std::string::npos);
}
