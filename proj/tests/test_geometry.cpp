#include "doctest.h"
#include "samelson/exact_linalg.hpp"
#include "samelson/geometry.hpp"
#include "samelson/samelson.hpp"

#include <random>

using namespace samelson;

namespace {

struct Setup {
  LieAlgebra L;
  CartanData cd;
  SamelsonStructure S;
  MatR g;
};

Setup setup(const char* group) {
  Setup s{build_algebra(parse_group(group)), {}, {}, {}};
  s.cd = cartan_decomposition(s.L);
  s.S = build_samelson_structure(s.L, s.cd, torus_complex_structure(s.L, s.cd, TorusJKind::Default));
  std::vector<Rational> lambda(s.S.components.size(), Rational(1));
  s.g = biinvariant_metric(s.S, s.L, lambda);
  return s;
}

template <class S>
Form<S> random_form(int n, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  Form<S> f(n, k);
  for (std::size_t r = 0; r < f.size(); ++r) f.component(r) = S(d(rng));
  return f;
}

}  // namespace

TEST_CASE("d of abelian coframe vanishes") {
  LieAlgebra L = build_algebra(parse_group("T2"));
  Vec<Surd> e(2);
  e << Surd(1), Surd(0);
  Form<Surd> de = invariant_d<Surd>(L, Form<Surd>::from_vector(e));
  for (std::size_t r = 0; r < de.size(); ++r) CHECK(de.component(r).is_zero());
}

TEST_CASE("d e^1 = -e^2 ^ e^3 for the cyclic su(2) basis") {
  nlohmann::json j;
  j["group"] = "A1";
  j["dimension"] = 3;
  j["rank"] = 1;
  j["labels"] = {"e1", "e2", "e3"};
  j["factors"] = {{0, 1, 2}};
  j["factor_torus"] = {{0}};
  j["torus"] = {0};
  j["structure_constants"] = {{0, 1, 2, "1"}, {1, 2, 0, "1"}, {0, 2, 1, "-1"}};
  LieAlgebra L = lie_algebra_from_json(j);
  Vec<Surd> e1(3);
  e1 << Surd(1), Surd(0), Surd(0);
  Form<Surd> d = invariant_d<Surd>(L, Form<Surd>::from_vector(e1));
  CHECK(d.at({1, 2}) == Surd(-1));
  CHECK(d.at({0, 1}) == Surd(0));
  CHECK(d.at({0, 2}) == Surd(0));
}

TEST_CASE("d squares to zero exactly") {
  std::mt19937_64 rng(3);
  for (const char* g : {"A2", "A1+A1", "B2", "A2+T2"}) {
    LieAlgebra L = build_algebra(parse_group(g));
    for (int k = 0; k <= 3; ++k) {
      CAPTURE(g);
      CAPTURE(k);
      Form<Surd> phi = random_form<Surd>(L.dimension, k, rng);
      Form<Surd> dd = invariant_d<Surd>(L, invariant_d<Surd>(L, phi));
      for (std::size_t r = 0; r < dd.size(); ++r) CHECK(dd.component(r).is_zero());
    }
  }
}

TEST_CASE("wedge basics") {
  const int n = 4;
  Vec<Surd> a(n), b(n);
  a << Surd(1), Surd(0), Surd(0), Surd(0);
  b << Surd(0), Surd(1), Surd(0), Surd(0);
  Form<Surd> ab = wedge(Form<Surd>::from_vector(a), Form<Surd>::from_vector(b));
  CHECK(ab.at({0, 1}) == Surd(1));
  CHECK(ab.at({1, 0}) == Surd(-1));
  Form<Surd> ba = wedge(Form<Surd>::from_vector(b), Form<Surd>::from_vector(a));
  CHECK(ba.at({0, 1}) == Surd(-1));
}

TEST_CASE("bi-invariant metrics are exactly Bismut flat") {
  for (const char* g : {"A2", "A1+A1", "A2+T2"}) {
    CAPTURE(g);
    Setup s = setup(g);
    CurvatureReport<Surd> rep = curvature_report<Surd>(s.L, s.S.J, s.g);
    CHECK(rep.flat_norm.is_zero());
    CHECK(rep.pluriclosed_residual.is_zero());
    CHECK(is_zero_matrix<Surd>(rep.ricci));
    // Levi-Civita is half the bracket
    const int n = s.L.dimension;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) CHECK(rep.levi_civita[i](k, j) == Surd(s.L.c(i, j, k) / 2));
  }
}

TEST_CASE("float path on bi-invariant metrics") {
  for (const char* g : {"A2", "A1+A1"}) {
    Setup s = setup(g);
    MatD J = to_double(s.S.J), G = to_double(s.g);
    auto rep = curvature_report<double>(s.L, J, G);
    CHECK(rep.flat_norm < 1e-10);
    CHECK(rep.pluriclosed_residual < 1e-12);
    CHECK(check_report(s.L, J, G, rep, 1e-10).empty());
    auto rep2 = curvature_report<double>(s.L, J, MatD(2.0 * G));
    CHECK(rep2.flat_norm < 1e-10);
  }
}

TEST_CASE("random Hermitian metrics: report invariants, Lee oracle, Ricci identity") {
  std::mt19937_64 rng(11);
  for (const char* g : {"A1+A1", "A2", "A2+T2"}) {
    Setup s = setup(g);
    MatD J = to_double(s.S.J), G0 = to_double(s.g);
    for (int trial = 0; trial < 3; ++trial) {
      CAPTURE(g);
      MatD G = random_hermitian_metric(G0, J, 0.3, rng);
      auto rep = curvature_report<double>(s.L, J, G);
      CHECK(check_report(s.L, J, G, rep, 1e-9).empty());
      Eigen::VectorXd oracle = lee_form_by_wedge(s.L, J, G);
      CHECK((oracle - rep.lee).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(verify_ricci_identity(s.L, J, G) < 1e-8);
      CHECK(verify_ricci_identity(s.L, J, MatD(2.0 * G)) < 1e-8);
      // torsion equals -J d omega
      for (std::size_t r = 0; r < rep.jdomega.size(); ++r) {
        auto t = rep.jdomega.tuple(r);
        CHECK(std::abs(rep.torsion(t[0], t[1], t[2]) + rep.jdomega.component(r)) < 1e-12);
      }
    }
  }
}

TEST_CASE("non-Hermitian or singular metrics are rejected") {
  Setup s = setup("A2");
  MatD J = to_double(s.S.J), G = to_double(s.g);
  MatD bad = G;
  bad(0, 2) += 0.5;
  bad(2, 0) += 0.5;
  CHECK_THROWS_WITH(curvature_report<double>(s.L, J, bad), doctest::Contains("Hermitian"));
  CHECK_THROWS(curvature_report<double>(s.L, J, MatD(MatD::Zero(8, 8))));
}

TEST_CASE("three-parameter family on su(3)+R^2") {
  Setup s = setup("A2+T2");
  MatD J = to_double(s.S.J);
  struct P {
    double a, b;
    std::complex<double> u;
  };
  for (P p : {P{1, 1, 0}, P{1, 1, 0.3}, P{2, 1, {0.3, 0.4}}}) {
    MatD g = family_metric(s.L, J, p.a, p.b, p.u);
    auto rep = curvature_report<double>(s.L, J, g);
    CHECK(rep.flat_norm < 1e-8);
    CHECK(rep.pluriclosed_residual < 1e-10);
  }
  // positivity boundary |u| = 1/2 for alpha = beta = 1
  CHECK_NOTHROW(curvature_report<double>(s.L, J, family_metric(s.L, J, 1, 1, 0.49)));
  CHECK_THROWS(curvature_report<double>(s.L, J, family_metric(s.L, J, 1, 1, 0.51)));
  CHECK(family_biinvariance_defect(s.L, J, family_metric(s.L, J, 1, 1, 0)) < 1e-12);
  CHECK(family_biinvariance_defect(s.L, J, family_metric(s.L, J, 1, 1, 0.3)) > 1e-3);
}
