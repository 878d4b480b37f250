#include "doctest.h"
#include "samelson/exact_linalg.hpp"
#include "samelson/tanre.hpp"

using namespace samelson;

namespace {

struct Built {
  LieAlgebra L;
  CartanData cd;
  SamelsonStructure S;
};

Built make(const char* group, TorusJKind kind = TorusJKind::Default) {
  Built b{build_algebra(parse_group(group)), {}, {}};
  b.cd = cartan_decomposition(b.L);
  b.S = build_samelson_structure(b.L, b.cd, torus_complex_structure(b.L, b.cd, kind));
  return b;
}

// Weyl data needs no complex structure (odd ranks allowed).
Built make_weyl(const char* group) {
  Built b{build_algebra(parse_group(group)), {}, {}};
  b.cd = cartan_decomposition(b.L);
  return b;
}

TanreModel model(const char* group, TorusJKind kind = TorusJKind::Default, int truncation = 6) {
  Built b = make(group, kind);
  return build_model(b.L, b.cd, b.S, truncation);
}

// Oracle for invariants: common fixed space of the generating reflections.
int fixed_space_dim(const WeylGroup& W, int d) {
  const auto n = static_cast<Eigen::Index>(monomials(static_cast<int>(W.coords.size()), d).size());
  MatR stacked = zeros<Surd>(0, n);
  for (const MatR& s : W.reflections) stacked = vcat<Surd>(stacked, MatR(substitution_matrix(s, d) - identity<Surd>(n)));
  return static_cast<int>(n) - rank<Surd>(stacked);
}

}  // namespace

TEST_CASE("Weyl group orders and orthogonality") {
  struct Case {
    const char* g;
    std::size_t order;
  };
  for (Case c : {Case{"A2", 6}, Case{"A1+A1", 4}, Case{"B2", 8}, Case{"C2", 8}, Case{"A3", 24}, Case{"A2+T2", 6}}) {
    CAPTURE(c.g);
    Built b = make_weyl(c.g);
    WeylGroup W = weyl_group(b.L, b.cd);
    CHECK(W.order() == c.order);
    MatR G = torus_gram(b.L, b.cd);
    MatR Gs(W.coords.size(), W.coords.size());
    for (std::size_t i = 0; i < W.coords.size(); ++i)
      for (std::size_t j = 0; j < W.coords.size(); ++j) Gs(i, j) = G(W.coords[i], W.coords[j]);
    for (const MatR& w : W.elements) CHECK(mul<Surd>(mul<Surd>(transpose<Surd>(w), Gs), w) == Gs);
  }
  Built b = make_weyl("A3");
  CHECK_THROWS_AS(weyl_group(b.L, b.cd, 10), std::runtime_error);
}

TEST_CASE("invariant polynomials match the fixed space of the reflections") {
  for (const char* g : {"A2", "A1+A1", "B2", "A3"}) {
    Built b = make_weyl(g);
    WeylGroup W = weyl_group(b.L, b.cd);
    for (int d = 1; d <= 3; ++d) {
      CAPTURE(g);
      CAPTURE(d);
      CHECK(invariant_polynomials(W, d).cols() == fixed_space_dim(W, d));
    }
    CHECK(invariant_polynomials(W, 1).cols() == 0);
  }
  CHECK(invariant_polynomials(weyl_group(make_weyl("A2").L, make_weyl("A2").cd), 2).cols() == 1);
  Built p = make_weyl("A1+A1");
  CHECK(invariant_polynomials(weyl_group(p.L, p.cd), 2).cols() == 2);
}

TEST_CASE("coinvariant Hilbert series") {
  // Poincare polynomial prod (1 + t + ... + t^{d_i - 1}) over the fundamental degrees
  auto hilbert = [](const char* g, int maxd) {
    Built b = make_weyl(g);
    return coinvariant_algebra(weyl_group(b.L, b.cd), maxd).hilbert();
  };
  CHECK(hilbert("A2", 4) == std::vector<int>{1, 2, 2, 1, 0});
  CHECK(hilbert("A1+A1", 3) == std::vector<int>{1, 2, 1, 0});
  CHECK(hilbert("B2", 5) == std::vector<int>{1, 2, 2, 2, 1, 0});
  CHECK(hilbert("A3", 3) == std::vector<int>{1, 3, 5, 6});
}

TEST_CASE("su(3) model") {
  TanreModel M = model("A2");
  CHECK(M.m == 1);  // r/2 generators nu
  CHECK(validate(M.complex).ok);
  CHECK(M.Y.hilbert() == std::vector<int>{1, 2, 2, 1});
  CohomologyTable t = cohomology(M.complex);
  CHECK(t.get(Flavor::Dolbeault, {0, 1}) == 1);
  CHECK(t.get(Flavor::Dolbeault, {1, 1}) == 1);
  for (int p = 1; p <= 3; ++p) CHECK(t.get(Flavor::Dolbeault, {p, 0}) == 0);
  CHECK(t.get(Flavor::DeRham, {1, 0}) == 0);
  CHECK(t.get(Flavor::DeRham, {0, 0}) == 1);
}

TEST_CASE("2 omega_i = del(xi + iJxi) + delbar(xi - iJxi)") {
  for (const char* g : {"A2", "A1+A1", "B2"}) {
    TanreModel M = model(g);
    for (int q = 0; q < M.r; ++q) {
      CAPTURE(g);
      CAPTURE(q);
      VecG v10 = M.xi_10(q);
      VecG v01 = zeros<Gauss>(M.complex.dim({0, 1}), 1).col(0);
      for (int a = 0; a < M.m; ++a) v01(M.index(0, 0, 0, 1u << a)) = v10(M.index(0, 0, 1u << a, 0)).conj();
      VecG lhs = mul<Gauss>(M.complex.delbar({1, 0}), MatG(v10)).col(0) + mul<Gauss>(M.complex.del({0, 1}), MatG(v01)).col(0);
      VecG w = M.omega(q);
      const bool identity_holds = lhs == VecG(w + w);
      CHECK(identity_holds);
      // hence omega_q is Aeppli-exact
      VecG cls = class_coordinates(M.complex, Flavor::Aeppli, {1, 1}, w);
      for (Eigen::Index i = 0; i < cls.size(); ++i) CHECK(cls(i).is_zero());
    }
  }
}

TEST_CASE("truncated su(3) model: length-2 zig-zags from (0,1)") {
  TanreModel M = model("A2", TorusJKind::Default, 3);
  ZigzagDecomposition z = zigzag_decompose(M.complex);
  int count = 0;
  for (const auto& p : z.pieces)
    if (p.kind == ZigzagPiece::Kind::Zigzag && p.length() == 2 && p.anchor == Bidegree{0, 1}) count += p.multiplicity;
  CHECK(count == 1);  // r/2 with r = 2
}

TEST_CASE("Aeppli h11 of the models") {
  struct Case {
    const char* g;
    TorusJKind kind;
    int expect;
  };
  for (Case c : {Case{"A2", TorusJKind::Default, 1}, Case{"A1+A1", TorusJKind::Default, 1},
                 Case{"A1+A1", TorusJKind::Mixing, 1}, Case{"B2", TorusJKind::Default, 1},
                 Case{"A1+A1+A1+A1", TorusJKind::Default, 2}, Case{"A1+A1+A1+A1", TorusJKind::Mixing, 1},
                 Case{"A2+T2", TorusJKind::Default, 4}}) {
    CAPTURE(c.g);
    TanreModel M = model(c.g, c.kind);
    AeppliH11 h = aeppli_h11(M);
    CHECK(h.dimension == c.expect);
    CHECK(h.metric_class_rank == M.components);
    if (!M.has_abelian) CHECK(h.central_dim == h.dimension);
  }
  CHECK_THROWS_WITH(aeppli_h11(model("A2", TorusJKind::Default, 3)), doctest::Contains(">= 4"));
}

TEST_CASE("torus factors: uniform model equals the tensor product, Kunneth with L = 0") {
  TanreModel whole = model("A2+T2");
  TanreModel a = model("A2"), t = model("T2");
  CHECK(t.complex.total_dimension() == 4);
  DoubleComplex prod = tensor_product(a.complex, t.complex, 6);
  CHECK(cohomology(prod) == cohomology(whole.complex));
  KunnethReport k = kunneth_aeppli_check(a.complex, t.complex, 6);
  CHECK(k.direct.at({1, 1}) == 4);
  CHECK(k.defect.at({1, 1}) == 0);
}

TEST_CASE("central system") {
  SUBCASE("su(3): one solution, A = G with b = 4") {
    TanreModel M = model("A2");
    CentralSystem cs = central_square_solve(M);
    CHECK(cs.solution_dim == 1);
    CHECK(cs.antisymmetric_dim == 0);
    CHECK(cs.eigen_relations);
    CHECK(cs.j_invariant);
    // direct substitution oracle
    const int r = M.r;
    MatG Lm(r, r), Rm(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        Lm(i, j) = Gauss(Surd(i == j ? 1 : 0), M.torus_J(j, i));
        Rm(i, j) = Gauss(Surd(i == j ? 1 : 0), -M.torus_J(i, j));
      }
    MatG Q = mul<Gauss>(mul<Gauss>(Lm, to_gauss(M.gram)), Rm);
    CHECK(MatG(Q + transpose<Gauss>(Q)) == to_gauss(MatR(M.gram * Surd(4))));
    // the computed solution is proportional to it
    MatG both(r * r, 2);
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        both(j * r + k, 0) = Q(j, k);
        both(j * r + k, 1) = cs.Q[0](j, k);
      }
    CHECK(rank<Gauss>(both) == 1);
  }
  SUBCASE("mixing J on su(2)^2 forces b1 = b2") {
    TanreModel M = model("A1+A1", TorusJKind::Mixing);
    CentralSystem cs = central_square_solve(M.torus_J, M.gram, {0, 1});
    CHECK(cs.solution_dim == 1);
    CHECK(cs.b[0][0] == cs.b[0][1]);
  }
  SUBCASE("pairwise product on su(2)^4") {
    TanreModel M = model("A1+A1+A1+A1");
    CentralSystem cs = central_square_solve(M);
    CHECK(cs.solution_dim == 2);
    CHECK(cs.antisymmetric_dim == 0);
  }
  SUBCASE("J must square to -Id") {
    CHECK_THROWS_WITH(central_square_solve(identity<Surd>(2), identity<Surd>(2), {0, 0}), doctest::Contains("-Id"));
  }
}

TEST_CASE("model export") {
  TanreModel M = model("A2");
  nlohmann::json j = to_json(M);
  CHECK(j["generators"].size() == 4);
  CHECK(j["coinvariant_hilbert"] == nlohmann::json({1, 2, 2, 1}));
  DoubleComplex back = double_complex_from_json(j);
  CHECK(cohomology(back) == cohomology(M.complex));
}
