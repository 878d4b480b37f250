#include "doctest.h"
#include "samelson/exact_linalg.hpp"
#include "samelson/liealg.hpp"

#include <Eigen/Cholesky>

#include <set>

using namespace samelson;

namespace {

// number of roots of the simple types, from the classical formulas
int root_count(const FactorSpec& f) {
  const int r = f.rank;
  switch (f.type) {
    case CartanType::A: return r * (r + 1);
    case CartanType::B:
    case CartanType::C: return 2 * r * r;
    case CartanType::D: return 2 * r * (r - 1);
    case CartanType::T: return 0;
  }
  return -1;
}

}  // namespace

TEST_CASE("dimensions and factor blocks") {
  struct Row {
    const char* group;
    int dim, rank;
  };
  for (Row row : {Row{"A1", 3, 1}, Row{"A2", 8, 2}, Row{"A3", 15, 3}, Row{"B2", 10, 2}, Row{"C2", 10, 2},
                  Row{"D4", 28, 4}, Row{"A1+A1", 6, 2}, Row{"A2+T2", 10, 4}}) {
    CAPTURE(row.group);
    LieAlgebra L = build_algebra(parse_group(row.group));
    CHECK(L.dimension == row.dim);
    CHECK(L.rank == row.rank);
    CHECK(check_structure(L).empty());
  }
  LieAlgebra L = build_algebra(parse_group("A1+A1"));
  REQUIRE(L.factors.size() == 2);
  CHECK(L.factors[0].size() == 3);
  CHECK(L.factors[1].size() == 3);
}

TEST_CASE("unsupported data are rejected") {
  CHECK_THROWS(parse_group("E6"));
  CHECK_THROWS(parse_group("A"));
  CHECK_THROWS(build_algebra(parse_group("A0")));
  CHECK_THROWS(build_algebra(parse_group("D2")));
}

TEST_CASE("killing form of the cyclic su(2) basis is -2 Id") {
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
  CHECK(check_structure(L).empty());
  MatR B = killing_form(L);
  CHECK(B == MatR(identity<Surd>(3) * Surd(-2)));
}

TEST_CASE("killing form: symmetric, negative-definite, ad-invariant, block-diagonal") {
  for (const char* g : {"A2", "B2", "C2", "A1+A1", "A3"}) {
    CAPTURE(g);
    LieAlgebra L = build_algebra(parse_group(g));
    MatR B = killing_form(L);
    CHECK(B == transpose<Surd>(B));
    Eigen::LLT<MatD> llt(-to_double(B));
    CHECK(llt.info() == Eigen::Success);
    const int n = L.dimension;
    // B([x,y],z) = B(x,[y,z])
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          Rational lhs = 0, rhs = 0;
          for (int k = 0; k < n; ++k) {
            lhs += L.c(x, y, k) * B(k, z).rational_part();
            rhs += B(x, k).rational_part() * L.c(y, z, k);
          }
          CHECK(lhs == rhs);
        }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (L.factor_of(a) != L.factor_of(b)) CHECK(B(a, b).is_zero());
  }
}

TEST_CASE("su(3) roots match the diagonal-entry oracle") {
  LieAlgebra L = build_algebra(parse_group("A2"));
  CartanData cd = cartan_decomposition(L);
  // h1 = i diag(1,-1,0), h2 = i diag(0,1,-1); E_jk has weight d_j - d_k
  const int d1[3] = {1, -1, 0};
  const int d2[3] = {0, 1, -1};
  std::set<std::vector<int>> expected;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      if (j != k) expected.insert({d1[j] - d1[k], d2[j] - d2[k]});
  std::set<std::vector<int>> got(cd.roots.begin(), cd.roots.end());
  CHECK(got == expected);
  CHECK(cd.positive_roots().size() == 3);
}

TEST_CASE("root counts and conjugate pairing") {
  for (const char* g : {"A1", "A2", "A3", "B2", "C2", "D4", "A1+A1"}) {
    CAPTURE(g);
    auto spec = parse_group(g);
    LieAlgebra L = build_algebra(spec);
    CartanData cd = cartan_decomposition(L);
    int expected = 0;
    for (const auto& f : spec) expected += root_count(f);
    CHECK(static_cast<int>(cd.roots.size()) == expected);
    CHECK(static_cast<int>(cd.roots.size()) == L.dimension - L.rank);
    for (std::size_t a = 0; a < cd.roots.size(); ++a) {
      int b = cd.negative_of[a];
      for (int k = 0; k < L.dimension; ++k) CHECK(cd.root_vectors[b](k) == cd.root_vectors[a](k).conj());
      CHECK(cd.is_positive(static_cast<int>(a)) != cd.is_positive(b));
    }
  }
}

TEST_CASE("su(2)+su(2) roots live on one factor") {
  LieAlgebra L = build_algebra(parse_group("A1+A1"));
  CartanData cd = cartan_decomposition(L);
  REQUIRE(cd.roots.size() == 4);
  for (std::size_t a = 0; a < cd.roots.size(); ++a) {
    std::set<int> fs;
    for (int k = 0; k < L.dimension; ++k)
      if (!cd.root_vectors[a](k).is_zero()) fs.insert(L.factor_of(k));
    CHECK(fs.size() == 1);
    CHECK(((cd.roots[a][0] == 0) != (cd.roots[a][1] == 0)));
  }
}

TEST_CASE("bad torus choices") {
  LieAlgebra L = build_algebra(parse_group("A2"));
  CHECK_THROWS_WITH_AS(cartan_decomposition(L, {0}), doctest::Contains("not maximal abelian"), std::invalid_argument);
  // x12 and y12 do not commute
  CHECK_THROWS_WITH_AS(cartan_decomposition(L, {2, 3}), doctest::Contains("not abelian"), std::invalid_argument);
}

TEST_CASE("json round trip is lossless") {
  LieAlgebra L = build_algebra(parse_group("A2+T2"));
  auto j = to_json(L);
  LieAlgebra back = lie_algebra_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(back.dense_ == L.dense_);
  CartanData cd = cartan_decomposition(L);
  auto jc = to_json(cd);
  CHECK(to_json(cartan_data_from_json(jc)) == jc);
}

TEST_CASE("positive roots depend only on the sign pattern of h_reg") {
  LieAlgebra L = build_algebra(parse_group("A2"));
  CartanData cd = cartan_decomposition(L, {}, 0);
  auto pos = cd.positive_roots();
  CartanData scaled = cd;
  for (int& h : scaled.h_reg) h *= 7;
  CHECK(scaled.positive_roots() == pos);
}
