#include "doctest.h"
#include "samelson/exact_linalg.hpp"

#include <cmath>

using namespace samelson;

TEST_CASE("surd arithmetic") {
  Surd s3 = Surd::sqrt3();
  CHECK(s3 * s3 == Surd(3));
  Surd x(Rational(1, 2), Rational(-3, 4));
  CHECK((x / x) == Surd(1));
  CHECK(std::abs((x * x).to_double() - x.to_double() * x.to_double()) < 1e-12);
  CHECK(Surd(2, -1).sign() == 1);   // 2 - sqrt3 > 0
  CHECK(Surd(1, -1).sign() == -1);  // 1 - sqrt3 < 0
  CHECK((Surd(7) - Surd(7)).sign() == 0);
}

TEST_CASE("surd square roots") {
  CHECK(*Surd::sqrt_of(Rational(9, 4)) == Surd(Rational(3, 2)));
  CHECK(*Surd::sqrt_of(Rational(1, 3)) == Surd(0, Rational(1, 3)));
  CHECK(*Surd::sqrt_of(Rational(12)) == Surd(0, 2));
  CHECK_FALSE(Surd::sqrt_of(Rational(2)).has_value());
  CHECK_FALSE(Surd::sqrt_of(Rational(-1)).has_value());
}

TEST_CASE("surd text round trip") {
  for (const Surd& x : {Surd(0), Surd(Rational(-5, 3)), Surd(0, 1), Surd(0, -1), Surd(Rational(1, 2), Rational(-7, 9)),
                        Surd(2, 3)}) {
    CHECK(parse_surd(to_string(x)) == x);
  }
  CHECK(parse_surd("1/2*sqrt3") == Surd(0, Rational(1, 2)));
  CHECK(parse_surd("-2-sqrt3") == Surd(-2, -1));
  CHECK_THROWS(parse_surd("abc"));
}

TEST_CASE("gauss arithmetic") {
  Gauss i = Gauss::i();
  CHECK(i * i == Gauss(-1));
  Gauss z(Surd(1), Surd(2));
  CHECK(z / z == Gauss(1));
  CHECK(z * z.conj() == Gauss(5));
}

TEST_CASE("exact elimination") {
  MatG m = zeros<Gauss>(3, 4);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 3) = Gauss::i();
  m(1, 0) = 2; m(1, 1) = 4; m(1, 3) = Gauss(Surd(0), Surd(2));
  m(2, 2) = Surd::sqrt3();
  CHECK(rank(m) == 2);
  MatG k = kernel(m);
  CHECK(k.cols() == 2);
  CHECK(is_zero_matrix<Gauss>(mul(m, k)));

  MatR a = zeros<Surd>(2, 2);
  a(0, 0) = Surd::sqrt3(); a(0, 1) = 1; a(1, 0) = -1; a(1, 1) = Surd::sqrt3();
  MatR ai = inverse(a);
  CHECK(mul(a, ai) == identity<Surd>(2));

  MatR rhs = zeros<Surd>(2, 1);
  rhs(0, 0) = 1;
  MatR sing = zeros<Surd>(2, 2);
  sing(0, 0) = 1; sing(1, 0) = 1;
  CHECK(solve<Surd>(sing, MatR(sing.col(1))).has_value());
  MatR bad = zeros<Surd>(2, 1);
  bad(1, 0) = 1;
  sing(1, 0) = 0;
  sing(0, 1) = 0;
  CHECK_FALSE(solve<Surd>(sing, bad).has_value());
}

TEST_CASE("subspace helpers") {
  MatG u = zeros<Gauss>(3, 1);
  u(0, 0) = 1;
  MatG w = identity<Gauss>(3);
  MatG ext = extend_basis(u, w);
  CHECK(ext.cols() == 2);
  CHECK(rank<Gauss>(hcat(u, ext)) == 3);
  MatG v = zeros<Gauss>(3, 2);
  v(0, 0) = 1; v(1, 0) = 1; v(1, 1) = 1;
  CHECK(intersect(identity<Gauss>(3).leftCols(2).eval(), v).cols() == 2);
  CHECK(intersect(u, MatG(v.col(1))).cols() == 0);
}
