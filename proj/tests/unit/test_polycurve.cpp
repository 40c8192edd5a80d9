#include <cmath>
#include <random>

#include "doctest.h"
#include "polyxray/polycurve.hpp"

using namespace polyxray;

namespace {
Polynomial T() { return Polynomial::identity(); }

PolyCurve random_curve(std::mt19937_64& rng, int d, int n) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Polynomial> comps;
  for (int i = 0; i < d - 1; ++i) {
    std::vector<Rational> c;
    for (int k = 0; k <= n; ++k) c.push_back(make_rational(num(rng), den(rng)));
    comps.emplace_back(c);
  }
  return PolyCurve(d, comps);
}

// Independent 2x2 / 3x3 oracle by explicit formula.
Polynomial torsion_oracle(const PolyCurve& c) {
  const int d = c.ambient_dim();
  auto D = [&](int i, int k) { return c.component(i).derivative(k); };
  if (d == 3) return D(0, 1) * D(1, 2) - D(0, 2) * D(1, 1);
  REQUIRE(d == 4);
  return D(0, 1) * (D(1, 2) * D(2, 3) - D(1, 3) * D(2, 2)) - D(0, 2) * (D(1, 1) * D(2, 3) - D(1, 3) * D(2, 1)) +
         D(0, 3) * (D(1, 1) * D(2, 2) - D(1, 2) * D(2, 1));
}
}  // namespace

TEST_CASE("torsion examples") {
  CHECK(torsion(PolyCurve::moment(3)) == Polynomial::constant(2));
  CHECK(torsion(PolyCurve(3, {T() * T(), T() * T() * T()})) == Polynomial::monomial(6, 2));
  CHECK(torsion(PolyCurve(3, {T() * T(), T() * T()})).is_zero());
  CHECK(torsion(PolyCurve::moment(4)) == Polynomial::constant(12));
  CHECK(torsion(PolyCurve::moment(5)) == Polynomial::constant(288));
}

TEST_CASE("torsion agrees with explicit cofactor formula and degree bound") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 3 + trial % 2, n = 1 + trial % 5;
    auto c = random_curve(rng, d, n);
    auto l = torsion(c);
    CHECK(l == torsion_oracle(c));
    CHECK(l.degree() <= std::max(-1, torsion_degree_bound(d, c.degree())));
  }
}

TEST_CASE("densities and weights") {
  auto m = PolyCurve::moment(3);
  CHECK(affine_arclength_density(m, 0.3) == doctest::Approx(std::cbrt(2.0)));
  auto cusp = PolyCurve(3, {T() * T(), T() * T() * T()});
  CHECK(affine_arclength_density(cusp, 0.0) == 0.0);
  CHECK(affine_arclength_density(cusp, Rational(1)) == doctest::Approx(std::cbrt(6.0)));
  CHECK(weight_theta(cusp, WeightSpec(0, 3), 0.0) == 1.0);
  CHECK(weight_theta(m, WeightSpec(1, 3), 0.7) == doctest::Approx(std::pow(2.0, 0.2)));
  CHECK(weight_theta(cusp, WeightSpec(1, 3), 0.0) == 0.0);
  CHECK(WeightSpec(1, 3).exponent() == Rational(1, 5));
  CHECK_THROWS(WeightSpec(Rational(3, 2), 3));
}

TEST_CASE("exponent algebra") {
  auto t0 = exponent_triple(0, 3);
  CHECK(t0.p == ExtRational(Rational(1)));
  CHECK(t0.q.is_infinite());
  CHECK(t0.r == ExtRational(Rational(1)));
  auto t1 = exponent_triple(1, 3);
  CHECK(t1.p == ExtRational(Rational(5, 3)));
  CHECK(t1.q == ExtRational(Rational(5, 3)));
  CHECK(t1.r == ExtRational(Rational(5, 2)));
  CHECK(theta_zero(3) == Rational(5, 6));
  CHECK(theta_zero(4) == Rational(9, 10));
  auto tz = exponent_triple(theta_zero(3), 3);
  CHECK(tz.p == ExtRational(Rational(3, 2)));
  CHECK(tz.q == ExtRational(Rational(2)));
  CHECK(tz.r == ExtRational(Rational(2)));
  for (int d = 3; d <= 6; ++d) {
    auto z = exponent_triple(theta_zero(d), d);
    CHECK(z.q == z.r);
  }
  CHECK_THROWS(exponent_triple(-1, 3));
}

TEST_CASE("scaling conditions") {
  for (int d = 3; d <= 5; ++d)
    for (int k = 0; k <= 12; ++k) {
      auto tr = exponent_triple(Rational(k, 12), d);
      auto sc = check_scaling_conditions(tr.p, tr.q, tr.r, d);
      CHECK(sc[0].equality);
      CHECK(sc[1].equality);
      CHECK(sc[2].holds);
    }
  auto bad = check_scaling_conditions(ExtRational(Rational(1)), ExtRational(Rational(1)), ExtRational::infinity(), 3);
  CHECK_FALSE(bad[2].holds);
}

TEST_CASE("transform laws") {
  auto m = PolyCurve::moment(3);
  RationalMatrix two = RationalMatrix::identity(2);
  two(0, 0) = 2; two(1, 1) = 2;
  CHECK(torsion(apply_affine(m, two, {0, 0})) == Polynomial::constant(8));
  CHECK(apply_affine(m, RationalMatrix::identity(2), {0, 0}) == m);
  CHECK(torsion(apply_affine(m, RationalMatrix::identity(2), {3, Rational(1, 7)})) == Polynomial::constant(2));
  CHECK_THROWS_AS(apply_affine(m, RationalMatrix(2, 2), {0, 0}), std::domain_error);
  CHECK(torsion(reparam_linear(m, -1, 0)) == Polynomial::constant(-2));
  CHECK(torsion(reparam_linear(m, 2, 0)) == Polynomial::constant(16));
  CHECK(reparam_linear(m, 1, 0) == m);
  CHECK_THROWS(reparam_linear(m, 0, 1));

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 3 + trial % 2;
    auto c = random_curve(rng, d, 4);
    RationalMatrix b(d - 1, d - 1);
    for (int i = 0; i < d - 1; ++i)
      for (int j = 0; j < d - 1; ++j) b(i, j) = make_rational(num(rng), den(rng));
    if (determinant(b) == 0) continue;
    std::vector<Rational> sh(d - 1, make_rational(num(rng), den(rng)));
    CHECK(torsion(apply_affine(c, b, sh)) == torsion(c) * determinant(b));
    Rational a = make_rational(num(rng), den(rng)), off = make_rational(num(rng), den(rng));
    if (a == 0) a = 1;
    CHECK(torsion(reparam_linear(c, a, off)) == torsion(c).compose_linear(a, off) * pow(a, d * (d - 1) / 2));
  }
}
