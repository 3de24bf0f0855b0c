#include <catch_amalgamated.hpp>

#include "catdyn/quiver/algebra.hpp"
#include "catdyn/quiver/presentation.hpp"

using namespace catdyn;

namespace {

AlgebraPtr<Rationals> build_q(const std::string& text) { return build_algebra(parse_quiver(text), Rationals{}); }

}  // namespace

TEST_CASE("parser accepts the basic statements") {
  const auto p = parse_quiver("vertices 1 2; arrow a: 1->2");
  REQUIRE(p.vertices.size() == 2);
  REQUIRE(p.arrows.size() == 1);
  CHECK(p.arrows[0].source == 0);
  CHECK(p.arrows[0].target == 1);
  CHECK(p.truncation == 6);

  const auto k3 = parse_quiver("vertices 1 2\narrows a b c: 1 -> 2  # three arrows\n");
  CHECK(k3.arrows.size() == 3);

  const auto r = parse_quiver("vertices 1 2 3; arrow a: 1->2; arrow b: 2->3; relation b*a = 0; truncate 4; field Fp 5");
  REQUIRE(r.relations.size() == 1);
  CHECK(r.relations[0].terms[0].arrows == std::vector<std::size_t>{0, 1});
  CHECK(r.truncation == 4);
  CHECK(r.field.characteristic == 5);
}

TEST_CASE("parser errors carry positions") {
  auto throws_at = [](const std::string& text, std::size_t line) {
    try {
      parse_quiver(text);
    } catch (const ParseError& e) {
      return e.line() == line;
    }
    return false;
  };
  CHECK(throws_at("vertices 1 2\narrow a: 1 -> 3", 2));
  CHECK(throws_at("vertices 1 2\narrow a: 1 -> 2\narrow a: 2 -> 1", 3));
  CHECK(throws_at("vertices 1 1", 1));
  CHECK(throws_at("vertices 1 2\narrows a b: 1 -> 2\nrelation a*b = 0", 3));
  CHECK(throws_at("vertices 1 2\narrow a: 1 -> 2 extra", 2));
  CHECK(throws_at("vertices 1 2\nfrobnicate", 2));
  CHECK(throws_at("vertices 1\ntruncate 1", 2));
  CHECK(throws_at("vertices 1 2\narrow a: 1 -> 2\nrelation c = 0", 3));
}

TEST_CASE("dimensions of small path algebras") {
  CHECK(build_q("vertices 1 2; arrow a: 1->2")->dim() == 3);
  CHECK(build_q("vertices 1 2; arrows a b c: 1->2")->dim() == 5);
  CHECK(build_q("vertices 1 2 3; arrow a: 1->2; arrow b: 2->3; relation b*a = 0")->dim() == 5);
  CHECK(build_q("vertices 1 2 3; arrow a: 1->2; arrow b: 2->3")->dim() == 6);
  CHECK(build_q("vertices 1; arrow x: 1->1; truncate 2")->dim() == 2);
  CHECK(build_q("vertices 1; arrow x: 1->1; truncate 4")->dim() == 4);
  CHECK(build_q("vertices 1 2")->dim() == 2);
}

TEST_CASE("commutative square relation") {
  const auto A = build_q(
      "vertices 1 2 3 4\narrow a: 1->2\narrow b: 2->4\narrow c: 1->3\narrow d: 3->4\nrelation b*a - d*c = 0");
  CHECK(A->dim() == 4 + 4 + 1);
  CHECK(A->block_dim(0, 3) == 1);
}

TEST_CASE("inconsistent relations are rejected") {
  CHECK_THROWS_AS(build_q("vertices 1; arrow x: 1->1; relation 1 - x = 0; truncate 3"), Error);
  CHECK_THROWS_AS(build_q("vertices 1; relation 1 = 0"), Error);
}

TEST_CASE("built algebras satisfy the algebra axioms") {
  for (const char* text : {"vertices 1 2; arrow a: 1->2", "vertices 1 2; arrows a b c: 1->2",
                           "vertices 1 2 3; arrow a: 1->2; arrow b: 2->3; relation b*a = 0",
                           "vertices 1; arrow x: 1->1; truncate 3",
                           "vertices 1 2; arrow a: 1->2; arrow b: 2->1; relation a*b = 0; relation b*a = 0",
                           "vertices 1 2 3 4; arrow a: 1->2; arrow b: 2->4; arrow c: 1->3; arrow d: 3->4; relation b*a + 2*d*c = 0"}) {
    INFO(text);
    const auto A = build_q(text);
    CHECK(A->is_associative());
    CHECK(A->unit_axioms_hold());
  }
}

TEST_CASE("acyclic dimension is independent of the truncation past the longest path") {
  const std::string base = "vertices 1 2 3 4; arrows a b: 1->2; arrow c: 2->3; arrow d: 3->4; truncate ";
  const auto d4 = build_q(base + "4")->dim();
  // paths: 4 trivial, 4 arrows, 2 of length 2 (ca, cb) + dc, 2 of length 3
  CHECK(d4 == 4 + 4 + 3 + 2);
  for (int n : {5, 6, 9}) CHECK(build_q(base + std::to_string(n))->dim() == d4);
}

TEST_CASE("products follow the concatenation convention") {
  const auto A = build_q("vertices 1 2 3; arrow a: 1->2; arrow b: 2->3");
  // basis: e1 e2 e3, arrows, then the length-2 path labelled b*a
  std::uint32_t a = 0, b = 0, ba = 0;
  for (std::uint32_t i = 0; i < A->dim(); ++i) {
    if (A->basis(i).label == "a") a = i;
    if (A->basis(i).label == "b") b = i;
    if (A->basis(i).label == "b*a") ba = i;
  }
  REQUIRE(ba != 0);
  REQUIRE(A->mul(a, b).size() == 1);
  CHECK(A->mul(a, b)[0].first == ba);
  CHECK(A->mul(b, a).empty());
  CHECK(A->source(ba) == 0);
  CHECK(A->target(ba) == 2);
}

TEST_CASE("opposite and enveloping algebras") {
  const auto A = build_q("vertices 1 2; arrow a: 1->2");
  const auto op = opposite(*A);
  CHECK(op->dim() == 3);
  CHECK(same_table(*opposite(*op), *A));
  const auto env = enveloping(*A);
  CHECK(env->dim() == 9);
  CHECK(env->nvertices() == 4);
  CHECK(env->is_associative());
  CHECK(env->unit_axioms_hold());
}

TEST_CASE("base change keeps structure constants") {
  const auto A = build_q("vertices 1 2 3; arrow a: 1->2; arrow b: 2->3; relation b*a = 0");
  const auto Q2 = make_extension(Rationals{}, {Rational(-2), Rational(0), Rational(1)});
  const auto A2 = base_change(*A, Q2);
  CHECK(A2->dim() == A->dim());
  CHECK(same_structure_constants(*A, *A2, FieldEmbedding<Rationals, RationalExtension>(Rationals{}, Q2)));
  CHECK(A2->is_associative());

  const PrimeField f5(5);
  const auto B = build_algebra(parse_quiver("vertices 1 2; arrows a b: 1->2; field Fp 5"), f5);
  const auto f25 = make_extension(f5, {Rational(2), Rational(0), Rational(1)});  // t^2 + 2 irreducible mod 5
  const auto B25 = base_change(*B, f25);
  CHECK(same_structure_constants(*B, *B25, FieldEmbedding<PrimeField, PrimeExtension>(f5, f25)));

  // enveloping commutes with base change
  CHECK(same_table(*enveloping(*A2), *base_change(*enveloping(*A), Q2)));
}

TEST_CASE("relations with coefficients over a prime field") {
  const PrimeField f3(3);
  const auto A = build_algebra(
      parse_quiver("vertices 1 2 3; arrows a b: 1->2; arrow c: 2->3; relation c*a + 2*c*b = 0; field Fp 3"), f3);
  CHECK(A->dim() == 3 + 3 + 1);
  CHECK(A->is_associative());
}
