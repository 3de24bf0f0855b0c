#include <algorithm>
#include <random>

#include <catch_amalgamated.hpp>

#include "catdyn/exact/matrix.hpp"

using namespace catdyn;

TEST_CASE("rref basics") {
  Rationals q;
  REQUIRE(rref(Matrix<Rationals>::identity(q, 3)).rank == 3);
  REQUIRE(rref(Matrix<Rationals>(q, 2, 4)).rank == 0);
  auto m = Matrix<Rationals>::from_integers(q, {{2, 1}, {1, 1}});
  auto r = rref(m);
  REQUIRE(r.rank == 2);
  REQUIRE(r.pivots == std::vector<std::size_t>{0, 1});
  auto s = Matrix<Rationals>::from_integers(q, {{0, 1, 2}, {0, 2, 4}, {1, 0, 0}});
  REQUIRE(rref(s).pivots == std::vector<std::size_t>{0, 1});
}

TEST_CASE("mixed fields are rejected") {
  Matrix<PrimeField> a(PrimeField(5), 2, 2), b(PrimeField(7), 2, 2);
  REQUIRE_THROWS_AS(a.hstack(b), FieldMismatch);
  REQUIRE_THROWS_AS(a * b, FieldMismatch);
}

TEST_CASE("sparse and dense rank agree and are permutation invariant") {
  std::mt19937 rng(3);
  PrimeField f(101);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
    Matrix<PrimeField> m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (rng() % 4 == 0) m(i, j) = f.from_integer(static_cast<long>(rng() % 5));
    // Force some dependent rows.
    if (rows > 2)
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = f.add(m(0, j), f.mul(f.from_integer(3), m(1, j)));
    const std::size_t dense = rref(m).rank;
    REQUIRE(sparse_rank(m.to_sparse()) == dense);
    REQUIRE(rank(m, {1.1}) == dense);
    REQUIRE(rank(m, {0.0}) == dense);
    REQUIRE(dense <= std::min(rows, cols));
    std::vector<std::size_t> perm(rows);
    for (std::size_t i = 0; i < rows; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix<PrimeField> p(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) p(i, j) = m(perm[i], cols - 1 - j);
    REQUIRE(rank(p) == dense);
    // Rank-nullity.
    REQUIRE(nullspace(m).cols() + dense == cols);
    REQUIRE((m * nullspace(m)).is_zero());
  }
}

TEST_CASE("inverse") {
  Rationals q;
  auto m = Matrix<Rationals>::from_integers(q, {{2, 1}, {1, 1}});
  REQUIRE(m * inverse(m) == Matrix<Rationals>::identity(q, 2));
  REQUIRE_THROWS_AS(inverse(Matrix<Rationals>::from_integers(q, {{1, 2}, {2, 4}})), InvalidArgument);
}

TEST_CASE("extend_scalars preserves rank") {
  Rationals q;
  auto k = make_extension(q, {Rational(-2), 0, Rational(1)});
  auto m = Matrix<Rationals>::from_integers(q, {{1, 2, 3}, {2, 4, 7}});
  auto mk = extend_scalars(m, k);
  REQUIRE(rank(mk) == 2);
  REQUIRE(extend_scalars(Matrix<Rationals>(q, 2, 3), k).is_zero());

  PrimeField f5(5);
  auto f25 = make_extension(f5, {Rational(-2), 0, Rational(1)});
  auto a = Matrix<PrimeField>::from_integers(f5, {{1, 2}, {3, 4}});
  REQUIRE(rank(a) == 2);
  REQUIRE(rank(extend_scalars(a, f25)) == 2);
  auto b = Matrix<PrimeField>::from_integers(f5, {{1, 2}, {3, 6}});
  REQUIRE(rank(extend_scalars(b, f25)) == 1);

  REQUIRE_THROWS_AS(extend_scalars(a, make_extension(PrimeField(7), {Rational(1), 0, Rational(1)})), NoEmbedding);
}
