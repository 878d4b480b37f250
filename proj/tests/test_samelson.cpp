#include "doctest.h"
#include "samelson/exact_linalg.hpp"
#include "samelson/samelson.hpp"

using namespace samelson;

namespace {

struct Built {
  LieAlgebra L;
  CartanData cd;
  SamelsonStructure S;
};

Built make(const char* group, TorusJKind kind = TorusJKind::Default, std::uint64_t seed = 0) {
  Built b{build_algebra(parse_group(group)), {}, {}};
  b.cd = cartan_decomposition(b.L, {}, seed);
  b.S = build_samelson_structure(b.L, b.cd, torus_complex_structure(b.L, b.cd, kind));
  return b;
}

}  // namespace

TEST_CASE("su(3) Samelson structure") {
  Built b = make("A2");
  CHECK(b.S.positive_roots.size() == 3);
  CHECK(mul<Surd>(b.S.J, b.S.J) == MatR(-identity<Surd>(8)));
  CHECK(nijenhuis_vanishes(b.L, b.S.J));
  CHECK(check_samelson(b.L, b.cd, b.S).empty());
  CHECK(b.S.components.size() == 1);
  // the hexagonal torus forces sqrt3 into J_k
  bool irrational = false;
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) irrational |= !b.S.torus_J(i, j).is_rational();
  CHECK(irrational);
}

TEST_CASE("rotation J_k on the su(3) torus is not Killing-orthogonal") {
  LieAlgebra L = build_algebra(parse_group("A2"));
  CartanData cd = cartan_decomposition(L);
  MatR rot = zeros<Surd>(2, 2);
  rot(0, 1) = -1;
  rot(1, 0) = 1;
  CHECK_THROWS_WITH_AS(build_samelson_structure(L, cd, rot), doctest::Contains("not Killing-orthogonal"),
                       std::invalid_argument);
  MatR not_cx = identity<Surd>(2);
  CHECK_THROWS_WITH_AS(build_samelson_structure(L, cd, not_cx), doctest::Contains("-Id"), std::invalid_argument);
}

TEST_CASE("other simple types and seeds") {
  for (const char* g : {"B2", "C2", "A3+A1", "D4", "A1+A1"})
    for (std::uint64_t seed : {0u, 1u, 7u}) {
      CAPTURE(g);
      CAPTURE(seed);
      Built b = make(g, TorusJKind::Default, seed);
      CHECK(check_samelson(b.L, b.cd, b.S).empty());
    }
}

TEST_CASE("odd torus dimension is rejected") {
  LieAlgebra L = build_algebra(parse_group("A1"));
  CartanData cd = cartan_decomposition(L);
  CHECK_THROWS_WITH_AS(torus_complex_structure(L, cd, TorusJKind::Default), doctest::Contains("odd"),
                       std::invalid_argument);
}

TEST_CASE("irreducible components") {
  CHECK(make("A1+A1").S.components.size() == 1);
  CHECK(make("A1+A1", TorusJKind::Mixing).S.components.size() == 1);
  CHECK_THROWS_WITH_AS(make("A1+A1", TorusJKind::Product), doctest::Contains("odd torus rank"),
                       std::invalid_argument);
  CHECK(make("A2+A2", TorusJKind::Product).S.components.size() == 2);
  CHECK(make("A2+A2", TorusJKind::Mixing).S.components.size() == 1);
  CHECK(make("A1+A1+A1+A1").S.components.size() == 2);
  CHECK(make("A1+A1+A1+A1", TorusJKind::Mixing).S.components.size() == 1);
  Built ex = make("A2+T2");
  CHECK(ex.S.components.size() == 2);
  // idempotent
  CHECK(irreducible_components(ex.S, ex.L, ex.cd) == ex.S.components);
}

TEST_CASE("bi-invariant metrics") {
  Built b = make("A2");
  MatR g = biinvariant_metric(b.S, b.L, {Rational(1)});
  CHECK(g == MatR(-killing_form(b.L)));
  CHECK(ad_invariance_defect(b.L, g).is_zero());

  Built q = make("A1+A1+A1+A1");
  MatR g2 = biinvariant_metric(q.S, q.L, {Rational(2), Rational(3)});
  MatR B = killing_form(q.L);
  for (int a = 0; a < q.L.dimension; ++a)
    for (int c = 0; c < q.L.dimension; ++c) {
      int f = q.L.factor_of(a);
      Surd expect = q.L.factor_of(c) != f ? Surd(0) : (f < 2 ? Surd(-2) : Surd(-3)) * B(a, c);
      CHECK(g2(a, c) == expect);
    }
  CHECK(ad_invariance_defect(q.L, g2).is_zero());
  CHECK(mul<Surd>(mul<Surd>(transpose<Surd>(q.S.J), g2), q.S.J) == g2);
  CHECK_THROWS(biinvariant_metric(q.S, q.L, {Rational(1), Rational(-1)}));
  CHECK_THROWS(biinvariant_metric(q.S, q.L, {Rational(1)}));

  Built t = make("A2+T2");
  MatR gt = biinvariant_metric(t.S, t.L, {Rational(1), Rational(5)});
  CHECK(ad_invariance_defect(t.L, gt).is_zero());
  CHECK(mul<Surd>(mul<Surd>(transpose<Surd>(t.S.J), gt), t.S.J) == gt);
}

TEST_CASE("torus J survives a JSON round trip") {
  Built b = make("A2");
  auto j = matrix_to_json(b.S.torus_J);
  CHECK(surd_matrix_from_json(j) == b.S.torus_J);
  CHECK(to_json(b.S)["components"].size() == 1);
}
