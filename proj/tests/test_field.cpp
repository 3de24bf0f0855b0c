#include <random>

#include <catch_amalgamated.hpp>

#include "catdyn/exact/field.hpp"

using namespace catdyn;

namespace {

template <ExactField F>
void check_axioms(const F& k, const std::vector<typename F::Element>& sample) {
  for (const auto& a : sample)
    for (const auto& b : sample)
      for (const auto& c : sample) {
        REQUIRE(k.equal(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c))));
        REQUIRE(k.equal(k.add(k.add(a, b), c), k.add(a, k.add(b, c))));
        REQUIRE(k.equal(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c))));
        REQUIRE(k.equal(k.mul(a, b), k.mul(b, a)));
      }
  for (const auto& a : sample) {
    REQUIRE(k.equal(k.add(a, k.neg(a)), k.zero()));
    if (!k.is_zero(a)) REQUIRE(k.equal(k.mul(a, k.inv(a)), k.one()));
  }
}

}  // namespace

TEST_CASE("rationals satisfy the field axioms on random triples") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  Rationals q;
  std::vector<Rational> s;
  for (int i = 0; i < 8; ++i) s.push_back(Rational(num(rng), den(rng)));
  for (auto& x : s) x.canonicalize();
  s.push_back(0);
  check_axioms(q, s);
}

TEST_CASE("prime field arithmetic") {
  PrimeField f(32003);
  std::mt19937 rng(11);
  std::vector<PrimeField::Element> s;
  for (int i = 0; i < 8; ++i) s.push_back(f.from_integer(static_cast<long>(rng() % 100000) - 50000));
  check_axioms(f, s);
  REQUIRE(f.from_integer(-1) == 32002u);
  REQUIRE(f.from_rational(Rational(1, 2)) == f.inv(f.from_integer(2)));
  REQUIRE_THROWS_AS(PrimeField(15), InvalidArgument);
}

TEST_CASE("quadratic extensions") {
  SECTION("Q(sqrt2)") {
    auto k = make_extension(Rationals{}, {Rational(-2), Rational(0), Rational(1)});
    REQUIRE(k.degree() == 2);
    const auto t = k.generator();
    REQUIRE(k.equal(k.mul(t, t), k.from_integer(2)));
    std::vector<RationalExtension::Element> s{t, k.add(t, k.one()), k.from_rational(Rational(3, 7)), k.zero(),
                                               k.sub(k.mul(t, k.from_integer(5)), k.from_integer(2))};
    check_axioms(k, s);
    REQUIRE(k.spec().name() == "Q[t]/(t^2 - 2)");
  }
  SECTION("F25 as F5[t]/(t^2 - 2)") {
    PrimeField f5(5);
    auto k = make_extension(f5, {Rational(-2), Rational(0), Rational(1)});
    std::vector<PrimeExtension::Element> all;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        PrimeExtension::Element x{};
        x.c[0] = a, x.c[1] = b;
        all.push_back(x);
      }
    // Every nonzero element is invertible: this is a field of 25 elements.
    for (const auto& x : all)
      if (!k.is_zero(x)) REQUIRE(k.equal(k.mul(x, k.inv(x)), k.one()));
    check_axioms(k, std::vector<PrimeExtension::Element>(all.begin(), all.begin() + 9));
  }
  SECTION("reducible minimal polynomials are rejected") {
    REQUIRE_THROWS_AS(make_extension(Rationals{}, {Rational(-4), Rational(0), Rational(1)}), InvalidArgument);
    REQUIRE_THROWS_AS(make_extension(PrimeField(7), {Rational(-2), Rational(0), Rational(1)}), InvalidArgument);
    // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2) has no rational root.
    REQUIRE_THROWS_AS(make_extension(Rationals{}, {Rational(4), 0, 0, 0, Rational(1)}), InvalidArgument);
  }
}

TEST_CASE("degree four field and embeddings") {
  // Q(sqrt2) -> Q(2^(1/4)), t -> s^2.
  auto k2 = make_extension(Rationals{}, {Rational(-2), 0, Rational(1)});
  auto k4 = make_extension(Rationals{}, {Rational(-2), 0, 0, 0, Rational(1)});
  REQUIRE(k4.degree() == 4);
  auto s = k4.generator();
  FieldEmbedding<RationalExtension, RationalExtension> emb(k2, k4, k4.mul(s, s));
  auto image = emb(k2.generator());
  REQUIRE(k4.equal(k4.mul(image, image), k4.from_integer(2)));
  REQUIRE_THROWS_AS((FieldEmbedding<RationalExtension, RationalExtension>(k2, k4, s)), NoEmbedding);
  REQUIRE_THROWS_AS((FieldEmbedding<RationalExtension, RationalExtension>(k2, k4)), NoEmbedding);
  REQUIRE_THROWS_AS((FieldEmbedding<PrimeField, PrimeExtension>(PrimeField(7), make_extension(PrimeField(5), {2, 0, 1}))), NoEmbedding);
}
