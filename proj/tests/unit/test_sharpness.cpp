#include <cmath>
#include <random>

#include "doctest.h"
#include "polyxray/sharpness.hpp"

using namespace polyxray;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }
Polynomial T() { return Polynomial::identity(); }

PolyCurve cusp() { return PolyCurve(3, {T() * T(), T() * T() * T()}); }

}  // namespace

TEST_CASE("nonnegativity on an interval is decided exactly") {
  const Polynomial sq = (T() - Polynomial::constant(q(1, 3))) * (T() - Polynomial::constant(q(1, 3)));
  CHECK(nonnegative_on(sq, q(0), q(1)));
  CHECK_FALSE(nonnegative_on(T() - Polynomial::constant(q(1, 3)), q(0), q(1)));
  CHECK(nonnegative_on(T() - Polynomial::constant(q(1, 3)), q(1, 3), q(1)));
  // 2 - t^2 >= 0 exactly up to sqrt 2
  const Polynomial two = Polynomial::constant(q(2)) - T() * T();
  CHECK(nonnegative_on(two, q(-1), q(141, 100)));
  CHECK_FALSE(nonnegative_on(two, q(-1), q(142, 100)));
  // (t^2 - 2)^2 touches zero at an irrational point
  CHECK(nonnegative_on(two * two, q(0), q(2)));
  CHECK_FALSE(nonnegative_on(-(two * two) + Polynomial::constant(q(1, 1000000)), q(0), q(2)));
}

TEST_CASE("optimality boxes contain every admissible line") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-1000, 1000);
  for (const auto& c : {PolyCurve::moment(3), PolyCurve::moment(4), cusp()}) {
    const int d = c.ambient_dim();
    const Rational t0 = q(1), delta = q(1, 8);
    const auto boxes = optimality_boxes(c, t0, delta);
    REQUIRE(boxes.contained);
    const Box& f = boxes.f.boxes.front();
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<Rational> uu;
      for (int k = 0; k < d; ++k) uu.push_back(make_rational(u(rng) + 1000, 2000));
      std::vector<Rational> pt = f.vertex();
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) pt[static_cast<std::size_t>(i)] += f.edges()(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * uu[static_cast<std::size_t>(j)];
      const Rational s = make_rational(u(rng), 1000);
      const auto p = c(pt[0]);
      std::vector<Rational> line{s};
      for (int k = 1; k < d; ++k) line.push_back(pt[static_cast<std::size_t>(k)] + s * p[static_cast<std::size_t>(k - 1)]);
      CHECK(boxes.e.contains(line));
    }
  }
}

TEST_CASE("optimality admissibility fails for large delta near a flat point") {
  // at t0 = 1/10 on the cusp the torsion is tiny relative to delta = 1
  CHECK_FALSE(optimality_admissible(cusp(), q(1, 10), q(1)));
  CHECK(optimality_admissible(cusp(), q(2), q(1)));
  CHECK_THROWS_AS(optimality_boxes(cusp(), q(0), q(1, 4)), std::domain_error);
}

TEST_CASE("sharp family ratio in closed form") {
  const auto c = PolyCurve::moment(3);
  const auto ds = dyadic_deltas(3, 6);
  for (double shift : {0.0, 0.1, -0.1}) {
    const auto scan = sharpness_scan(c, q(1), {q(1), false}, ds, shift);
    for (const auto& p : scan.points) CHECK(p.ratio == doctest::Approx(std::pow(2.0, -0.6 + shift)).epsilon(1e-10));
    CHECK(std::fabs(scan.fit.slope) < 1e-9);
    CHECK(scan.predicted_slope == doctest::Approx(0.0));
  }
  CHECK(sharp_base_slope(q(1), 3) == 0);
  CHECK(sharp_base_slope(q(5, 6), 4) == 0);
}

TEST_CASE("zoom family on the cusp picks up twice the weight shift") {
  const auto scan = sharpness_scan(cusp(), q(1), {q(2), true}, dyadic_deltas(3, 7), 0.1);
  CHECK(scan.fit.slope == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(scan.predicted_slope == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("theta0 covering: excess bound and containment") {
  const auto c = PolyCurve::moment(3);
  const auto boxes = theta0_boxes(c, q(1), q(1, 8), 0.1);
  CHECK(boxes.excess_bound <= 0.1);
  CHECK(boxes.e.disjoint_axis_aligned());
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> u(-1000, 1000);
  for (int rep = 0; rep < 300; ++rep) {
    const Rational t = q(1) + make_rational(u(rng), 8000), s = make_rational(u(rng), 1000);
    const auto p = c(t);
    std::vector<Rational> pt{s};
    for (int k = 0; k < 2; ++k) pt.push_back(make_rational(u(rng), 1000) + s * p[static_cast<std::size_t>(k)]);
    CHECK(boxes.e.contains(pt));
  }
  const auto scan = theta0_scan(c, q(1), dyadic_deltas(3, 6));
  for (const auto& p : scan.points) {
    CHECK(p.pairing == doctest::Approx(2 * 2 * p.delta.get_d() * 4).epsilon(1e-10));
    CHECK(p.ratio <= 1.0 + 1e-12);
    CHECK(p.ratio == doctest::Approx(8.0 / p.e_volume).epsilon(1e-10));
  }
}

TEST_CASE("flat family slopes from the exponent algebra") {
  const PolyCurve flat(3, {T(), Polynomial()});
  CHECK(flat_bound_exponent(q(1), 3) == q(1, 5));
  CHECK(flat_bound_exponent(q(0), 3) == 0);
  const auto s1 = flat_scan(flat, q(1), q(0), q(1), dyadic_deltas(3, 8));
  CHECK(s1.fit.slope == doctest::Approx(-0.2).epsilon(1e-9));
  CHECK(s1.points.front().ratio == doctest::Approx(1.0));
  const auto s0 = flat_scan(flat, q(0), q(0), q(1), dyadic_deltas(3, 8));
  CHECK(std::fabs(s0.fit.slope) < 1e-12);
  CHECK_THROWS(flat_boxes(PolyCurve::moment(3), q(0), q(1), q(1, 4)));
}

TEST_CASE("moment-curve dilations leave the ratio unchanged on the theta segment") {
  const auto c = PolyCurve::moment(3);
  BoxSet e{{Box::axis_aligned({q(-1), q(-1), q(-2)}, {q(1), q(2), q(1)})}};
  BoxSet f{{Box::axis_aligned({q(0), q(-1, 2), q(-1)}, {q(1), q(1), q(1, 2)})}};
  for (const Rational& theta : {theta_zero(3), q(1)}) {
    const double base = rwt_ratio(c, theta, e, f, 1e-12).ratio;
    for (const Rational& lam : {q(1, 2), q(3)})
      for (const Rational& mu : {q(1, 3), q(2)}) {
        const auto e2 = dilate(e, {mu, mu * lam, mu * lam * lam});
        const auto f2 = dilate(f, {lam, mu * lam, mu * lam * lam});
        CHECK(rwt_ratio(c, theta, e2, f2, 1e-12).ratio == doctest::Approx(base).epsilon(1e-8));
      }
  }
}

TEST_CASE("log-log fit and svg output") {
  const auto fit = fit_loglog({1, 2, 4, 8}, {3, 12, 48, 192});
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(std::exp(fit.intercept) == doctest::Approx(3.0));
  CHECK(fit.max_residual < 1e-12);
  const auto scan = sharpness_scan(PolyCurve::moment(3), q(1), {q(1), false}, dyadic_deltas(3, 5));
  const auto svg = scan_svg(scan);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("circle") != std::string::npos);
}
