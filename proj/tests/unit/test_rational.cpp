#include "doctest.h"
#include "polyxray/linalg.hpp"
#include "polyxray/polynomial.hpp"
#include "polyxray/rational.hpp"

using namespace polyxray;

TEST_CASE("parse_rational accepts fractions and decimals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational("-2.5e-1") == Rational(-1, 4));
  CHECK(parse_rational("3e2") == Rational(300));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("1/-2"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational(""));
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("extended rationals") {
  auto inf = ExtRational::infinity();
  CHECK(inf.reciprocal() == 0);
  CHECK(ExtRational::reciprocal_of(Rational(0)).is_infinite());
  CHECK(ExtRational(Rational(3, 2)).conjugate() == ExtRational(Rational(3)));
  CHECK(ExtRational(Rational(1)).conjugate().is_infinite());
  CHECK(inf.conjugate() == ExtRational(Rational(1)));
}

TEST_CASE("polynomial arithmetic") {
  Polynomial t = Polynomial::identity();
  Polynomial p = t * t * t - t;
  CHECK(p.derivative(2) == Polynomial{0, 6});
  CHECK(Polynomial::constant(5).derivative().is_zero());
  CHECK((t * t).derivative() == Polynomial{0, 2});
  auto [q, r] = p.divmod(t - Polynomial::constant(1));
  CHECK(r.is_zero());
  CHECK(q == Polynomial{0, 1, 1});
  CHECK(p.compose_linear(2, 1) == (Polynomial{1, 2} * Polynomial{1, 2} * Polynomial{1, 2} - Polynomial{1, 2}));
  CHECK(gcd(p, t * t - Polynomial::constant(1)) == t * t - Polynomial::constant(1));
  CHECK(Polynomial{Rational(-1, 3), 0, 2}.to_string() == "2*t^2 - 1/3");
}

TEST_CASE("square-free factorization recovers multiplicities") {
  Polynomial t = Polynomial::identity();
  Polynomial a = t - Polynomial::constant(1), b = t + Polynomial::constant(2);
  Polynomial p = Polynomial::constant(3) * a * a * a * b * t * t;
  auto sf = square_free_factorization(p);
  CHECK(sf.content == 3);
  Polynomial rebuilt = Polynomial::constant(sf.content);
  for (auto& [f, m] : sf.factors)
    for (int i = 0; i < m; ++i) rebuilt *= f;
  CHECK(rebuilt == p);
  CHECK(square_free_part(p) == (a * b * t).monic());
}

TEST_CASE("rational determinant and inverse") {
  RationalMatrix m(3, 3);
  int vals[9] = {2, -1, 0, 1, 3, 4, 0, 5, -2};
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = vals[i];
  // cofactor expansion by hand: 2*(3*-2-4*5) - (-1)*(1*-2-0) = -52 - 2 = -54
  CHECK(determinant(m) == -54);
  auto inv = inverse(m);
  RationalMatrix prod(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) prod(i, j) += m(i, k) * inv(k, j);
  CHECK(prod == RationalMatrix::identity(3));
  RationalMatrix sing(2, 2);
  sing(0, 0) = 1; sing(0, 1) = 2; sing(1, 0) = 2; sing(1, 1) = 4;
  CHECK(determinant(sing) == 0);
  CHECK_THROWS_AS(inverse(sing), std::domain_error);
}
