#include <random>

#include <catch_amalgamated.hpp>

#include "catdyn/lattice/mukai.hpp"

using namespace catdyn;

namespace {

MukaiVector vec(const MukaiLattice& lat, long r, std::vector<long> c, long m) {
  std::vector<Integer> cc(c.begin(), c.end());
  return MukaiVector(lat, r, cc, m);
}

}  // namespace

TEST_CASE("Mukai pairing") {
  const auto quartic = MukaiLattice::degree(2);
  REQUIRE(mukai_pairing(vec(quartic, 1, {0}, 1), vec(quartic, 1, {0}, 1)) == -2);
  REQUIRE(mukai_pairing(vec(quartic, 0, {1}, 0), vec(quartic, 0, {1}, 0)) == 4);
  REQUIRE(mukai_pairing(vec(quartic, 1, {0}, 0), vec(quartic, 0, {0}, 1)) == -1);
  REQUIRE_THROWS_AS(mukai_pairing(vec(quartic, 1, {0}, 1), vec(MukaiLattice::degree(3), 1, {0}, 1)), InvalidArgument);
  // v(O) is (1,0,1) for every NS lattice; v(O(n)) has square -2 too.
  auto odd = MukaiLattice(int_matrix({{1, 0}, {0, -1}}));
  REQUIRE(mukai_pairing(vec(odd, 1, {0, 0}, 1), vec(odd, 1, {0, 0}, 1)) == -2);
  for (long d = 2; d <= 6; ++d) {
    auto lat = MukaiLattice::degree(d);
    for (long n = -3; n <= 3; ++n) REQUIRE(mukai_pairing(line_bundle_vector(lat, n), line_bundle_vector(lat, n)) == -2);
  }
}

TEST_CASE("spherical reflection") {
  const auto quartic = MukaiLattice::degree(2);
  auto s = spherical_reflection(vec(quartic, 1, {0}, 1));
  REQUIRE(s(vec(quartic, 3, {5}, 7)) == vec(quartic, -7, {5}, -3));
  REQUIRE(power(s, 2).is_identity());
  REQUIRE_FALSE(is_cohomologically_trivial(s));
  REQUIRE(s(vec(quartic, 1, {0}, 1)) == vec(quartic, -1, {0}, -1));
  REQUIRE_THROWS_AS(spherical_reflection(vec(quartic, 0, {1}, 0)), InvalidArgument);
}

TEST_CASE("line bundle twists form a group homomorphism") {
  const auto quartic = MukaiLattice::degree(2);
  auto t = line_bundle_twist(quartic, {Integer(-1)});
  REQUIRE(t(vec(quartic, 1, {0}, 0)) == vec(quartic, 1, {-1}, 2));
  REQUIRE(line_bundle_twist(quartic, {Integer(0)}).is_identity());
  REQUIRE(compose(t, line_bundle_twist(quartic, {Integer(1)})).is_identity());
  // twist maps v(O(n)) to v(O(n+l)).
  REQUIRE(t(line_bundle_vector(quartic, 2)) == line_bundle_vector(quartic, 1));

  const auto rank2 = MukaiLattice(int_matrix({{2, 1}, {1, -2}}));
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) {
      auto lhs = compose(line_bundle_twist(rank2, {Integer(a), Integer(b)}), line_bundle_twist(rank2, {Integer(1), Integer(-1)}));
      auto rhs = line_bundle_twist(rank2, {Integer(a + 1), Integer(b - 1)});
      REQUIRE(lhs.matrix() == rhs.matrix());
    }
  REQUIRE_THROWS_AS(line_bundle_twist(MukaiLattice(int_matrix({{1}})), {Integer(1)}), InvalidArgument);
}

TEST_CASE("shift and composition") {
  const auto quartic = MukaiLattice::degree(2);
  auto sh = shift_isometry(quartic);
  REQUIRE(sh(vec(quartic, 1, {0}, 1)) == vec(quartic, -1, {0}, -1));
  REQUIRE(is_cohomologically_trivial(power(sh, 2)));
  auto s = spherical_reflection(vec(quartic, 1, {0}, 1));
  auto t = line_bundle_twist(quartic, {Integer(-1)});
  // a o b applies b first.
  auto v = vec(quartic, 1, {0}, 0);
  REQUIRE(compose(s, t)(v) == s(t(v)));
  REQUIRE(compose(t, inverse(t)).is_identity());
  REQUIRE(compose(s, t).word() == std::vector<std::string>{"T(1,0,1)", "twist(-1)"});
  REQUIRE_THROWS_AS(compose(s, shift_isometry(MukaiLattice::degree(3))), InvalidArgument);
  REQUIRE_THROWS_AS(LatticeIsometry(quartic, int_matrix({{1, 0, 0}, {0, 2, 0}, {0, 0, 1}}), {}), InvalidArgument);
}

TEST_CASE("phi_zero on the quartic is trivial") {
  auto r = phi_zero_scenario(2);
  REQUIRE(r.trivial);
  REQUIRE(is_cohomologically_trivial(r.fourth_power));
  REQUIRE(r.order == 4);
  REQUIRE(r.log_radius.exact);
  REQUIRE(r.log_radius.upper == 0);
  REQUIRE(r.generator.matrix() == int_matrix({{-2, 4, -1}, {-1, 1, 0}, {-1, 0, 0}}));
  REQUIRE_THROWS_AS(phi_zero_scenario(1), InvalidArgument);
}

TEST_CASE("phi_zero for higher degree has the orders forced by its trace") {
  // trace M = 1 - d, so only d = 2 gives an element of order 4.
  REQUIRE(phi_zero_scenario(3).order == 6);
  REQUIRE_FALSE(phi_zero_scenario(3).trivial);
  auto d4 = phi_zero_scenario(4);
  REQUIRE(d4.order == 0);
  REQUIRE(d4.log_radius.exact);  // -(unipotent): log rho = 0
  auto d5 = phi_zero_scenario(5);
  REQUIRE(d5.order == 0);
  // M has eigenvalues -1 and (-3 +- sqrt5)/2, so M^4 has radius ((3+sqrt5)/2)^4.
  REQUIRE(d5.log_radius.contains(4 * 0.9624236501192069));
  for (long d = 6; d <= 10; ++d) REQUIRE_FALSE(phi_zero_scenario(d).trivial);
}

TEST_CASE("entropy lower bound") {
  const auto quartic = MukaiLattice::degree(2);
  auto e = entropy_lower_bound(LatticeIsometry::identity(quartic), Rational(1, 1000000));
  REQUIRE(e.exact);
  REQUIRE(e.upper == 0);
  // Hyperbolic NS block: the isometry diag(1, g, 1) with g = [[2,1],[1,1]]
  // preserves the NS form [[-2,1],[1,2]].
  auto hyp = MukaiLattice(int_matrix({{-2, 1}, {1, 2}}));
  LatticeIsometry h(hyp, int_matrix({{1, 0, 0, 0}, {0, 2, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}}), {"g"});
  auto lb = entropy_lower_bound(h, Rational(1, 1000000000));
  REQUIRE_FALSE(lb.exact);
  REQUIRE(lb.contains(0.9624236501));
  REQUIRE(lb.upper - lb.lower < Rational(1, 1000000));
}

TEST_CASE("trace zeta identity") {
  auto id = trace_zeta(int_matrix({{1, 0}, {0, 1}}), 3);
  REQUIRE(id.agree());
  REQUIRE(id.det_side == std::vector<Rational>{1, 2, 3, 4});
  auto nil = trace_zeta(int_matrix({{0, 1}, {0, 0}}), 4);
  REQUIRE(nil.agree());
  REQUIRE(nil.exp_side == std::vector<Rational>{1, 0, 0, 0, 0});
  auto g = trace_zeta(int_matrix({{2, 1}, {1, 1}}), 3);
  REQUIRE(g.exp_side == std::vector<Rational>{1, 3, 8, 21});
  REQUIRE(g.agree());

  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<long>> rows(4, std::vector<long>(4));
    for (auto& r : rows)
      for (auto& x : r) x = static_cast<long>(rng() % 7) - 3;
    REQUIRE(trace_zeta(int_matrix(rows), 10).agree());
  }
}
