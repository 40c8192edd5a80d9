#include <cmath>
#include <random>

#include "doctest.h"
#include "polyxray/interval.hpp"
#include "polyxray/roots.hpp"

using namespace polyxray;

namespace {
Polynomial T() { return Polynomial::identity(); }
Polynomial C(const Rational& c) { return Polynomial::constant(c); }
}  // namespace

TEST_CASE("isolate_real_roots examples") {
  auto r = isolate_real_roots(Polynomial::monomial(6, 2));
  REQUIRE(r.size() == 1);
  CHECK(r[0].real.is_rational());
  CHECK(r[0].real.value() == 0);
  CHECK(r[0].multiplicity == 2);

  r = isolate_real_roots(T() * (T() - C(1)));
  REQUIRE(r.size() == 2);
  CHECK(r[0].real.value() == 0);
  CHECK(r[1].real.value() == 1);

  r = isolate_real_roots(T() * T() + C(1));
  REQUIRE(r.size() == 1);
  CHECK(r[0].kind == RootDatum::Kind::ComplexPair);
  CHECK(r[0].re_lo <= 0);
  CHECK(r[0].re_hi >= 0);
  CHECK(r[0].im_lo <= 1);
  CHECK(r[0].im_hi >= 1);
  CHECK(r[0].approx.imag() == doctest::Approx(1.0));
  CHECK_THROWS(isolate_real_roots(Polynomial()));
}

TEST_CASE("irrational roots are isolated and compared exactly") {
  // (t^2 - 2)^3 (t - 7/5)
  Polynomial q = T() * T() - C(2);
  auto r = isolate_real_roots(q * q * q * (T() - C(Rational(7, 5))));
  REQUIRE(r.size() == 3);
  CHECK(r[0].approx.real() == doctest::Approx(-std::sqrt(2.0)));
  CHECK(r[0].multiplicity == 3);
  CHECK(r[1].real.value() == Rational(7, 5));
  CHECK(r[2].approx.real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(r[1].real.hi() <= r[2].real.lo());
  RealAlgebraic a = r[2].real, b(q * C(5), 1, 2);
  CHECK(compare(a, b) == 0);
  CHECK(a.compare(Rational(141, 100)) == 1);
  CHECK(a.compare(Rational(142, 100)) == -1);
}

TEST_CASE("root isolation agrees with a constructed root list") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 6), mult(1, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<Rational, int>> roots;
    Polynomial p = C(make_rational(num(rng) == 0 ? 1 : 3, 2));
    for (int k = 0; k < 3; ++k) {
      Rational x = make_rational(num(rng), den(rng));
      bool dup = false;
      for (auto& [y, m] : roots) dup |= (y == x);
      if (dup) continue;
      int m = mult(rng);
      roots.emplace_back(x, m);
      for (int i = 0; i < m; ++i) p *= T() - C(x);
    }
    p *= T() * T() + C(1);  // one complex pair
    auto got = isolate_real_roots(p);
    std::sort(roots.begin(), roots.end());
    REQUIRE(got.size() == roots.size() + 1);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      CHECK(got[i].real.compare(roots[i].first) == 0);
      CHECK(got[i].multiplicity == roots[i].second);
    }
    CHECK(got.back().kind == RootDatum::Kind::ComplexPair);
  }
}

TEST_CASE("double real root finder") {
  // (t - 0.25)(t - 0.5)(t + 2)
  Polynomial p = (T() - C(Rational(1, 4))) * (T() - C(Rational(1, 2))) * (T() + C(2));
  auto r = real_roots_in(p.coefficients_double(), -3, 3);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(-2));
  CHECK(r[1] == doctest::Approx(0.25));
  CHECK(r[2] == doctest::Approx(0.5));
  CHECK(real_roots_in(p.coefficients_double(), 0, 0.4).size() == 1);
  CHECK(real_roots_in({1.0, 0.0, 1.0}, -5, 5).empty());
}

TEST_CASE("interval enclosure contains sampled values") {
  Polynomial p = T() * T() * T() - C(2) * T() + C(Rational(1, 3));
  auto e = enclose_range(p, Rational(-1, 2), Rational(3, 2));
  for (int i = 0; i <= 100; ++i) {
    double x = -0.5 + 2.0 * i / 100;
    double v = p.evaluate(x);
    CHECK(e.lo <= v);
    CHECK(v <= e.hi);
  }
  auto v = enclose_value(p, Rational(1, 3));
  CHECK(v.contains(p(Rational(1, 3)).get_d()));
}
