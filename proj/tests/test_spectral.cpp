#include <cmath>
#include <random>

#include <catch_amalgamated.hpp>

#include "catdyn/exact/spectral.hpp"

using namespace catdyn;

TEST_CASE("char_poly examples") {
  REQUIRE(char_poly(int_matrix({{1, 0}, {0, 1}})) == IntPolynomial({1, -2, 1}));
  REQUIRE(char_poly(int_matrix({{0, 1}, {0, 0}})) == IntPolynomial({0, 0, 1}));
  REQUIRE(char_poly(int_matrix({{2, 1}, {1, 1}})) == IntPolynomial({1, -3, 1}));
  REQUIRE_THROWS_AS(char_poly(int_matrix({{1, 2, 3}})), InvalidArgument);
}

namespace {

// Independent oracle: Laplace expansion of det(xI - m) with polynomial entries.
IntPolynomial det_oracle(const std::vector<std::vector<IntPolynomial>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return IntPolynomial::constant(1);
  IntPolynomial acc;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<IntPolynomial>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      minor.emplace_back();
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) minor.back().push_back(a[i][k]);
    }
    IntPolynomial term = a[0][j] * det_oracle(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

TEST_CASE("char_poly matches cofactor expansion on random integer matrices") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<std::vector<long>> rows(n, std::vector<long>(n));
    for (auto& r : rows)
      for (auto& x : r) x = static_cast<long>(rng() % 7) - 3;
    const IntMatrix m = int_matrix(rows);
    std::vector<std::vector<IntPolynomial>> xm(n, std::vector<IntPolynomial>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        xm[i][j] = (i == j ? IntPolynomial::monomial(1) : IntPolynomial{}) - IntPolynomial::constant(m(i, j));
    const IntPolynomial p = char_poly(m);
    REQUIRE(p == det_oracle(xm));
    REQUIRE(p.degree() == static_cast<long>(n));
    REQUIRE(p.is_integral());
    REQUIRE(char_poly(m.transpose()) == p);
  }
}

TEST_CASE("spectral radius enclosures") {
  const Rational tol(1, 100000000);
  auto id = spectral_radius(int_matrix({{1, 0}, {0, 1}}), tol);
  REQUIRE(id.exact);
  REQUIRE(id.lower == 1);
  REQUIRE(id.upper == 1);

  auto nil = spectral_radius(int_matrix({{0, 1}, {0, 0}}), tol);
  REQUIRE(nil.exact);
  REQUIRE(nil.upper == 0);

  auto golden = spectral_radius(int_matrix({{2, 1}, {1, 1}}), tol);
  REQUIRE_FALSE(golden.exact);
  REQUIRE(golden.width() <= tol);
  REQUIRE(golden.contains(2.6180339887));
  // Companion matrix of x^2 - 3x + 1 has the same radius.
  auto companion = spectral_radius(int_matrix({{0, -1}, {1, 3}}), tol);
  REQUIRE(companion.contains(2.618033988));

  // Rotation by 90 degrees: complex eigenvalues of modulus 1.
  auto rot = spectral_radius(int_matrix({{0, -1}, {1, 0}}), tol);
  REQUIRE(rot.exact);
  REQUIRE(rot.lower == 1);

  // Eigenvalues 1 +- i, radius sqrt 2.
  auto r2 = spectral_radius(int_matrix({{1, -1}, {1, 1}}), tol);
  REQUIRE(r2.contains(std::sqrt(2.0)));
  REQUIRE(spectral_radius(int_matrix({{-3, 0}, {0, 2}}), tol).lower == 3);
  REQUIRE_THROWS_AS(spectral_radius(int_matrix({{1}}), Rational(0)), InvalidArgument);
}

TEST_CASE("log spectral radius and Kronecker detection") {
  const Rational tol(1, 1000000000);
  auto zero = log_spectral_radius(int_matrix({{0, -1}, {1, 0}}), tol);
  REQUIRE(zero.exact);
  REQUIRE(zero.lower == 0);
  REQUIRE(zero.upper == 0);
  auto golden = log_spectral_radius(int_matrix({{2, 1}, {1, 1}}), tol);
  REQUIRE(golden.contains(0.9624236501));
  REQUIRE(golden.upper - golden.lower < Rational(1, 100000000));
  REQUIRE(log_spectral_radius(int_matrix({{0, 1}, {0, 0}}), tol).minus_infinity);
  // Unipotent but not the identity: still log rho = 0 exactly.
  REQUIRE(log_spectral_radius(int_matrix({{1, 5}, {0, 1}}), tol).exact);
}

TEST_CASE("cyclotomic polynomials and squarefree parts") {
  REQUIRE(cyclotomic(1) == IntPolynomial({-1, 1}));
  REQUIRE(cyclotomic(4) == IntPolynomial({1, 0, 1}));
  REQUIRE(cyclotomic(6) == IntPolynomial({1, -1, 1}));
  REQUIRE(cyclotomic(12).degree() == 4);
  IntPolynomial p = IntPolynomial({-1, 1}) * IntPolynomial({-1, 1}) * IntPolynomial({1, -3, 1});
  REQUIRE(squarefree_part(p) == IntPolynomial({-1, 1}) * IntPolynomial({1, -3, 1}));
  auto split = kronecker_split(p * IntPolynomial::monomial(2));
  REQUIRE(split.zero_multiplicity == 2);
  REQUIRE(split.cyclotomic_indices == std::vector<long>{1, 1});
  REQUIRE(split.rest == IntPolynomial({1, -3, 1}));
}
