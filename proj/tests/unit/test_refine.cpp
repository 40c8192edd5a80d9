#include <cmath>
#include <random>

#include "doctest.h"
#include "polyxray/refine.hpp"

using namespace polyxray;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

IntervalUnion random_union(std::mt19937_64& rng, const Rational& lo, const Rational& hi, int max_parts) {
  std::uniform_int_distribution<int> count(1, max_parts), pos(0, 10000);
  std::vector<std::pair<Rational, Rational>> parts;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Rational a = lo + (hi - lo) * make_rational(pos(rng), 10000), b = lo + (hi - lo) * make_rational(pos(rng), 10000);
    if (a > b) std::swap(a, b);
    if (a == b) b = std::min(Rational(hi), Rational(a + (hi - lo) / 10000));
    if (a == b) a = b - (hi - lo) / 10000;
    parts.emplace_back(a, b);
  }
  return IntervalUnion(parts);
}

}  // namespace

TEST_CASE("weighted measure closed forms") {
  CHECK(mu_measure({q(0)}, q(0), q(1)) == doctest::Approx(1.0));
  CHECK(mu_measure({q(1)}, q(0), q(1)) == doctest::Approx(0.5));
  CHECK(mu_measure({q(2, 5)}, q(1, 4), q(1)) == doctest::Approx((1 - std::pow(4.0, -1.4)) / 1.4).epsilon(1e-14));
  CHECK(WeightedMeasure::from_weight(1, q(1), 3).alpha == q(1, 5));
  CHECK(WeightedMeasure::from_weight(0, q(1), 3).alpha == 0);
  const IntervalUnion s({{q(1, 10), q(1, 5)}, {q(1, 2), q(3, 4)}});
  const WeightedMeasure m{q(2, 5)};
  CHECK(mu_measure(m, s) == doctest::Approx(mu_measure(m, q(1, 10), q(1, 5)) + mu_measure(m, q(1, 2), q(3, 4))));
  CHECK(mu_measure(m, s) < mu_measure(m, q(1, 10), q(3, 4)));
  CHECK(mu_measure_text(m, s).size() > 30);
}

TEST_CASE("interval unions merge and clip") {
  const IntervalUnion s({{q(1, 2), q(3, 4)}, {q(0), q(1, 4)}, {q(1, 5), q(1, 3)}});
  REQUIRE(s.parts().size() == 2);
  CHECK(s.parts()[0] == std::pair<Rational, Rational>{q(0), q(1, 3)});
  CHECK(s.within(q(0), q(3, 4)));
  CHECK_FALSE(s.within(q(1, 10), q(1)));
  const auto c = s.intersect(q(1, 4), q(5, 8));
  REQUIRE(c.parts().size() == 2);
  CHECK(c.parts()[1].second == q(5, 8));
  CHECK_THROWS_AS(IntervalUnion({{q(1, 2), q(1, 3)}}), std::invalid_argument);
  CHECK_THROWS_AS(IntervalUnion({{q(1, 2), q(3, 2)}}), std::invalid_argument);
}

TEST_CASE("quantiles invert the measure") {
  CHECK(mu_quantile({q(0)}, q(0), q(1), 0.5) == doctest::Approx(0.5));
  CHECK(mu_quantile({q(1)}, q(0), q(1), 0.5) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  const WeightedMeasure m{q(2, 5)};
  double prev = 0;
  for (double f = 0.05; f < 1; f += 0.05) {
    const double x = mu_quantile(m, q(1, 4), q(1), f);
    CHECK(x > prev);
    prev = x;
    const Rational xr = from_double(x);
    CHECK(mu_measure(m, q(1, 4), xr) == doctest::Approx(f * mu_measure(m, q(1, 4), q(1))).epsilon(1e-13));
  }
  CHECK_THROWS(mu_quantile(m, q(0), q(1), 1.0));
}

TEST_CASE("half-interval sweep on hand cases") {
  const WeightedMeasure flat{q(0)};
  const auto full = half_interval_sweep(flat, q(0), q(1), IntervalUnion({{q(0), q(1)}}));
  CHECK(full.minimum == doctest::Approx(0.5));
  const auto left = half_interval_sweep(flat, q(0), q(1), IntervalUnion({{q(0), q(1, 4)}}));
  CHECK(left.minimum == doctest::Approx(0.0));
  CHECK(left.arg_lo == doctest::Approx(0.0));
  CHECK(left.arg_hi == doctest::Approx(0.5));
  const IntervalUnion clumps({{q(0), q(1, 10)}, {q(9, 10), q(1)}});
  const auto sym = half_interval_sweep(flat, q(0), q(1), clumps);
  CHECK(sym.minimum == doctest::Approx(0.1));
  const WeightedMeasure w{q(2, 5)};
  const auto wfull = half_interval_sweep(w, q(1, 4), q(1), IntervalUnion({{q(1, 4), q(1)}}));
  CHECK(wfull.minimum == doctest::Approx(wfull.captured / 2));
}

TEST_CASE("sweep maximum matches a dense scan of half-measure windows") {
  std::mt19937_64 rng(11);
  for (const Rational& alpha : {q(0), q(2, 5), q(3)}) {
    const WeightedMeasure m{alpha};
    const double a1 = alpha.get_d() + 1;
    for (int rep = 0; rep < 20; ++rep) {
      const auto s = random_union(rng, q(0), q(1), 6);
      const auto sw = half_interval_sweep(m, q(0), q(1), s);
      // windows in u = t^{a+1}/(a+1); the true maximum is at least every sample
      const double total = 1 / a1;
      double best = 0;
      for (int i = 0; i <= 4000; ++i) {
        const double u0 = total / 2 * i / 4000.0;
        const double t0 = std::pow(u0 * a1, 1 / a1), t1 = std::pow((u0 + total / 2) * a1, 1 / a1);
        double g = 0;
        for (const auto& [lo, hi] : s.parts()) {
          const double l = std::max(lo.get_d(), t0), r = std::min(hi.get_d(), t1);
          if (r > l) g += (std::pow(r, a1) - std::pow(l, a1)) / a1;
        }
        best = std::max(best, g);
      }
      CHECK(sw.maximum >= best - 1e-12);
      CHECK(sw.maximum <= best + 1e-3 * total);
      CHECK(sw.minimum == doctest::Approx(sw.captured - sw.maximum));
      CHECK(mu_measure(m, s) == doctest::Approx(sw.captured));
      CHECK(mu_measure(m, from_double(sw.arg_lo), from_double(sw.arg_hi)) == doctest::Approx(total / 2).epsilon(1e-12));
    }
  }
}

TEST_CASE("stop constant certifies the product bound") {
  for (double eps : {0.1, 0.5, 1.0, 2.0}) {
    const auto k = stop_constant(eps);
    CHECK(k.c_eps == doctest::Approx(k.c / 2));
    double log_prod = 0;
    for (int i = 0; i < 200000; ++i) log_prod += std::log1p(-k.c * std::pow(2.0, eps) * std::pow(2.0, -eps * i));
    CHECK(log_prod >= std::log(0.5));
    CHECK(k.log_product <= log_prod + 1e-12);
  }
  const auto k = stop_constant(0.5);
  CHECK(k.halvings == 0);
  CHECK(k.c == doctest::Approx((1 - std::pow(2.0, -0.5)) * std::log(2.0) / 2));
}

TEST_CASE("stopping time on hand cases") {
  const WeightedMeasure flat{q(0)};
  const auto whole = stopping_time(flat, q(0), q(1), IntervalUnion({{q(0), q(1)}}), 0.5);
  CHECK(whole.stages == 0);
  CHECK(whole.verification.certificate == doctest::Approx(0.5));
  CHECK(whole.j_lo_d == 0.0);
  CHECK(whole.j_hi_d == 1.0);

  const IntervalUnion tiny({{q(1, 2), q(1, 2) + q(1, 1000)}});
  const auto t = stopping_time(flat, q(0), q(1), tiny, 0.1);
  CHECK(t.verification.first_holds);
  CHECK(t.verification.second_holds);
  CHECK(t.stage_bound_holds);
  CHECK(t.stages >= 8);
  CHECK(t.measure_j >= t.measure_s);
  CHECK(t.measure_j <= 4 * t.measure_s);
  CHECK(t.j_lo_d <= 0.5 + 1e-3);
  CHECK(t.j_hi_d >= 0.5);
  CHECK_THROWS_AS(stopping_time(flat, q(0), q(1, 2), tiny, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(stopping_time(flat, q(0), q(1), IntervalUnion({{q(1, 2), q(1, 2)}}), 0.1), std::invalid_argument);
}

TEST_CASE("stopping time conclusions hold on random unions") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pos(0, 1000);
  for (const Rational& alpha : {q(0), q(2, 5)})
    for (double eps : {0.1, 0.5})
      for (int rep = 0; rep < 25; ++rep) {
        Rational a = make_rational(pos(rng), 1000), b = make_rational(pos(rng), 1000);
        if (a > b) std::swap(a, b);
        if (b - a < q(1, 100)) b = a + q(1, 100);
        if (b > 1) {
          a -= b - 1;
          b = 1;
        }
        const auto s = random_union(rng, a, b, 5);
        const WeightedMeasure m{alpha};
        const auto r = stopping_time(m, a, b, s, eps);
        CHECK(r.verification.first_holds);
        CHECK(r.verification.second_holds);
        CHECK(r.stage_bound_holds);
        const auto again = verify_stopping_time(m, s, eps, r.constant.c_eps, r.j_lo, r.j_hi);
        CHECK(again.certificate == r.verification.certificate);
        CHECK(r.j_lo_d >= a.get_d() - 1e-15);
        CHECK(r.j_hi_d <= b.get_d() + 1e-15);
      }
}

TEST_CASE("i_beta examples") {
  const auto k0 = i_beta(0.25, 0, q(1), 3, 0.5);
  CHECK(k0.delta == 1);
  CHECK(k0.lo == doctest::Approx(0.125));
  const auto k1 = i_beta(0.25, 1, q(1), 3, 0.5);
  CHECK(k1.delta == q(5, 6));
  CHECK(k1.lo == doctest::Approx(0.5 * std::pow(0.25, 5.0 / 6)));
  CHECK(k1.excluded_ratio == doctest::Approx(std::pow(0.5, 1.2) / 1.2).epsilon(1e-12));
  CHECK(i_beta(1e-6, 1, q(1), 3, 0.01).excluded_ratio == doctest::Approx(std::pow(0.01, 1.2) / 1.2).epsilon(1e-10));
  CHECK_THROWS(i_beta(0, 1, q(1), 3, 0.5));
}
