// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "polyxray/decompose.hpp"
#include "polyxray/grid.hpp"
#include "polyxray/itermaps.hpp"
#include "polyxray/polycurve.hpp"
#include "polyxray/refine.hpp"
#include "polyxray/samplers.hpp"
#include "polyxray/sharpness.hpp"
#include "polyxray/xrayop.hpp"

using namespace polyxray;

namespace {

// pinned tolerances and budgets
constexpr double kTorsionSeconds = 1.0;
constexpr int kIdentitySamples = 1000;
constexpr double kIdentitySeconds = 60.0;
constexpr double kHalfDigits = 5e-13;       // 12 significant digits of 1/2
constexpr double kStability = 0.10;
constexpr int kTransformTrials = 100;
constexpr int kAdjointCells = 64;
constexpr double kAdjointTol = 1e-4;
constexpr double kAdjointSeconds = 300.0;
constexpr double kSlopeTol = 0.05;
constexpr int kStopInstances = 100;
constexpr int kMixedSets = 100;
constexpr double kMixedRel = 1e-12;
constexpr double kMaxSpread = 4.0;
constexpr int kRandomPairs = 50;
constexpr std::uint64_t kSeed = 20240611;

Rational q(long n, long d = 1) { return make_rational(n, d); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// 1
Outcome torsion_constants() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string vals;
  for (int d = 3; d <= 5; ++d) {
    Rational expected = 1, fact = 1;
    for (int j = 1; j < d; ++j) {
      fact *= j;
      expected *= fact;
    }
    const Polynomial l = torsion(PolyCurve::moment(d));
    ok = ok && l == Polynomial::constant(expected);
    vals += (d > 3 ? "," : "") + l.to_string();
  }
  const double s = seconds_since(t0);
  return {ok && s < kTorsionSeconds, "torsions " + vals + fmt(", %.3f s", s)};
}

// 2
Outcome jacobian_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  Sampler sampler(kSeed);
  int failures = 0, total = 0;
  for (int d : {3, 4})
    for (Family fam : {Family::Phi, Family::Psi})
      for (int i = 0; i < kIdentitySamples; ++i) {
        const PolyCurve c = sampler.curve(d, d + 1);
        BasePoint<Rational> base{fam, sampler.rational(12, 7), {}};
        for (int k = 0; k < d - 1; ++k) base.point.push_back(sampler.rational(12, 7));
        ChainArgs<Rational> args;
        for (int k = 0; k < d; ++k) args.push_back(sampler.rational(12, 7));
        const auto chk = jacobian_identity_check(c, base, args);
        // |det D map| against the differentiated-determinant side, zero tolerance
        failures += abs(chk.lhs) == abs(chk.rhs) && abs(jacobian_det(c, base, args)) == abs(chk.lhs) ? 0 : 1;
        ++total;
      }
  const double s = seconds_since(t0);
  return {failures == 0 && s < kIdentitySeconds,
          std::to_string(total) + " tuples, " + std::to_string(failures) + " mismatches" + fmt(", %.1f s", s)};
}

// 3
Outcome jacobian_constants() {
  Sampler sampler(kSeed + 3);
  const PolyCurve moment = PolyCurve::moment(3);
  const Polynomial lm = torsion(moment);
  double worst = 0;
  for (int i = 0; i < 2000; ++i) {
    BasePoint<Rational> base{Family::Psi, sampler.rational(20, 9), {sampler.rational(5, 3), sampler.rational(5, 3)}};
    ChainArgs<Rational> args{sampler.rational(20, 9), sampler.rational(20, 9), sampler.rational(20, 9)};
    if (args[0] == args[2] || args[1] == base.param) continue;
    BasePoint<double> bd{Family::Psi, base.param.get_d(), {base.point[0].get_d(), base.point[1].get_d()}};
    const double rhs = jacobian_lowerbound_rhs(moment, lm, bd, {args[0].get_d(), args[1].get_d(), args[2].get_d()});
    const double ratio = std::fabs(jacobian_det(moment, base, args).get_d()) / rhs;
    worst = std::max(worst, std::fabs(ratio / 0.5 - 1));
  }
  bool ok = worst <= kHalfDigits;
  std::string detail = "moment psi max |ratio/(1/2) - 1| = " + fmt("%.2e", worst);

  const PolyCurve cusp(3, {Polynomial::monomial(1, 2), Polynomial::monomial(1, 3)});
  const auto dec = decompose_torsion(cusp, Domain::bounded(q(-1), q(1)));
  double min_seen = INFINITY, worst_drift = 0;
  for (std::size_t p = 0; p < dec.pieces.size(); ++p)
    for (Family fam : {Family::Psi, Family::Phi}) {
      const double small = jacobian_lowerbound_ratio(cusp, dec.pieces[p], fam, 1000, kSeed + p).min_ratio;
      const double large = jacobian_lowerbound_ratio(cusp, dec.pieces[p], fam, 10000, kSeed + 100 + p).min_ratio;
      min_seen = std::min({min_seen, small, large});
      const double drift = std::fabs(small - large) / std::max(small, large);
      worst_drift = std::max(worst_drift, drift);
      ok = ok && small > 0 && large > 0 && drift <= kStability;
    }
  detail += "; cusp " + std::to_string(dec.pieces.size()) + " pieces, min ratio " + fmt("%.4g", min_seen) +
            ", drift 1e3->1e4 " + fmt("%.3f", worst_drift);
  return {ok, detail};
}

// 4
Outcome transform_laws() {
  Sampler sampler(kSeed + 4);
  int failures = 0;
  for (int d : {3, 4}) {
    const int n = d * (d - 1) / 2;
    for (int i = 0; i < kTransformTrials; ++i) {
      const PolyCurve p = sampler.curve(d, sampler.integer(d - 1, d + 2));
      const AffineChange ch = sampler.affine_change(d);
      const Polynomial l = torsion(p);
      failures += torsion(apply_affine(p, ch.b, ch.c)) == determinant(ch.b) * l ? 0 : 1;
      failures += torsion(reparam_linear(p, ch.a, ch.shift)) == pow(ch.a, n) * l.compose_linear(ch.a, ch.shift) ? 0 : 1;
    }
  }
  return {failures == 0, std::to_string(4 * kTransformTrials) + " exact identities, " + std::to_string(failures) + " failures"};
}

// 5
Outcome adjoint_consistency() {
  const auto t0 = std::chrono::steady_clock::now();
  const PolyCurve c = PolyCurve::moment(3);
  const std::vector<double> lo(3, -1.0), hi(3, 1.0);
  const std::vector<int> cells(3, kAdjointCells);
  const GridFunction f = bump_grid(lo, hi, cells, {0, 0, 0}, 0.8);
  const GridFunction g = bump_grid(lo, hi, cells, {0.3, 0.1, -0.1}, 0.6);
  double worst = 0;
  bool ok = true;
  for (const Rational& th : {q(0), q(5, 6), q(1)}) {
    const auto r = adjoint_check(c, LineWeight::torsion_power(c, th), f, g);
    worst = std::max(worst, r.rel_diff);
    ok = ok && r.lhs > 0 && r.rel_diff < kAdjointTol;
  }
  const double s = seconds_since(t0);
  return {ok && s < kAdjointSeconds, "max rel diff " + fmt("%.2e", worst) + fmt(", %.1f s", s)};
}

// exponent reciprocals straight from the convex parametrization
struct Recip {
  Rational p, q, r;
};
Recip reciprocals(const Rational& th, int d) {
  return {1 - th + th * d / (d + 2), th * d / (d + 2), 1 - th + th * Rational(d * d - d - 2) / (d * d + d - 2)};
}

// 6
Outcome sharp_scaling() {
  const PolyCurve moment = PolyCurve::moment(3);
  const auto deltas = dyadic_deltas(3, 10);
  const Recip e = reciprocals(q(1), 3);
  const int n = 3;
  const double base = Rational(n * e.r - n * e.p + e.q).get_d();
  // log |L(t0)| against log delta: constant torsion, so the weight exponent does not move the slope
  const double kappa_moment = torsion(moment).degree() == 0 ? 0.0 : NAN;
  bool ok = true;
  std::string detail;
  for (double shift : {0.0, 0.1, -0.1}) {
    const auto s = sharpness_scan(moment, q(1), {q(1), false}, deltas, shift);
    const double predicted = base + kappa_moment * shift;
    bool contained = true;
    for (const auto& p : s.points) contained = contained && p.contained;
    ok = ok && contained && std::fabs(s.fit.slope - predicted) <= kSlopeTol && std::fabs(s.predicted_slope - predicted) < 1e-12;
    detail += fmt("D=%+.1f: ", shift) + fmt("slope %.4f ", s.fit.slope) + fmt("(pred %.2f); ", predicted);
  }
  // cusp with t0 = 2 delta: |L(t0)| = 24 delta^2, so the slope moves by 2 D
  const PolyCurve cusp(3, {Polynomial::monomial(1, 2), Polynomial::monomial(1, 3)});
  for (double shift : {0.1, -0.1}) {
    const auto s = sharpness_scan(cusp, q(1), {q(2), true}, deltas, shift);
    ok = ok && std::fabs(s.fit.slope - (base + 2 * shift)) <= kSlopeTol;
    detail += fmt("zoom D=%+.1f: ", shift) + fmt("slope %.4f ", s.fit.slope) + fmt("(pred %.2f); ", base + 2 * shift);
  }
  return {ok, detail};
}

// 7
Outcome flat_decay() {
  const PolyCurve flat(3, {Polynomial::identity(), Polynomial()});
  bool ok = true;
  std::string detail;
  for (const Rational& th : {q(1), q(0)}) {
    const auto trip = exponent_triple(th, 3);
    const Rational expected = trip.inv_p() + (1 - trip.inv_r()) - 1;
    const auto s = flat_scan(flat, th, q(0), q(1), dyadic_deltas(3, 10));
    // growth of R as delta shrinks: slope of log R against log(1/delta)
    const double growth = -s.fit.slope;
    ok = ok && std::fabs(growth - expected.get_d()) <= kSlopeTol;
    if (th == 0) ok = ok && std::fabs(growth) <= kSlopeTol;
    detail += "theta=" + to_string(th) + fmt(": growth %.4f", growth) + " (expected " + to_string(expected) + "); ";
  }
  return {ok, detail};
}

// 8
Outcome stopping_time_check() {
  Sampler sampler(kSeed + 8);
  int runs = 0, failures = 0, max_excess_stage = -1000;
  for (int i = 0; i < kStopInstances; ++i) {
    Rational a = sampler.grid_point(q(0), q(1), 1000), b = sampler.grid_point(q(0), q(1), 1000);
    if (a > b) std::swap(a, b);
    if (b - a < q(1, 100)) {
      b = a + q(1, 100);
      if (b > 1) {
        a -= b - 1;
        b = 1;
      }
    }
    const IntervalUnion s = sampler.interval_union(a, b, 5);
    for (const Rational& alpha : {q(0), q(2, 5)})
      for (double eps : {0.1, 0.5}) {
        const WeightedMeasure m{alpha};
        const auto r = stopping_time(m, a, b, s, eps);
        const auto v = verify_stopping_time(m, s, eps, r.constant.c_eps, r.j_lo, r.j_hi);
        // first conclusion once more in plain double arithmetic from the printed endpoints
        const double a1 = alpha.get_d() + 1, jl = std::stod(r.j_lo), jh = std::stod(r.j_hi);
        double cap = 0, tot = 0;
        for (const auto& [lo, hi] : s.parts()) {
          tot += (std::pow(hi.get_d(), a1) - std::pow(lo.get_d(), a1)) / a1;
          const double l = std::max(lo.get_d(), jl), h = std::min(hi.get_d(), jh);
          if (h > l) cap += (std::pow(h, a1) - std::pow(l, a1)) / a1;
        }
        const bool ok = v.first_holds && v.second_holds && r.stage_bound_holds && cap >= tot / 2 * (1 - 1e-12);
        failures += ok ? 0 : 1;
        max_excess_stage = std::max(max_excess_stage, static_cast<int>(std::ceil(r.stages - r.m0 - 2)));
        ++runs;
      }
  }
  return {failures == 0, std::to_string(runs) + " runs, " + std::to_string(failures) + " failures, max(stages - m0 - 2) rounded up " +
                             std::to_string(max_excess_stage)};
}

// 9
Outcome mixed_lower_bound() {
  Sampler sampler(kSeed + 9);
  int failures = 0, equalities = 0, checks = 0;
  for (int i = 0; i < kMixedSets; ++i) {
    const BoxSet f = sampler.disjoint_boxes(3, 4);
    // slice measure on each elementary t-interval, exact
    std::set<Rational> cuts;
    for (const auto& b : f.boxes) {
      cuts.insert(b.lo()[0]);
      cuts.insert(b.hi()[0]);
    }
    std::vector<Rational> pts(cuts.begin(), cuts.end());
    std::vector<std::pair<Rational, Rational>> slices;  // (length, slice measure)
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const Rational mid = (pts[k] + pts[k + 1]) / 2;
      Rational m = 0;
      for (const auto& b : f.boxes)
        if (b.lo()[0] < mid && mid < b.hi()[0]) m += (b.hi()[1] - b.lo()[1]) * (b.hi()[2] - b.lo()[2]);
      if (m > 0) slices.emplace_back(pts[k + 1] - pts[k], m);
    }
    std::set<Rational> distinct;
    for (const auto& sl : slices) distinct.insert(sl.second);
    for (const Rational& th : {q(5, 6), q(9, 10), q(1)}) {
      const Recip e = reciprocals(th, 3);
      const Rational inv_qc = 1 - e.q, inv_rc = 1 - e.r;
      long double sum = 0, vol = 0, proj = 0;
      for (const auto& [len, m] : slices) {
        sum += static_cast<long double>(len.get_d()) * std::pow(static_cast<long double>(m.get_d()), static_cast<long double>(Rational(inv_rc / inv_qc).get_d()));
        vol += static_cast<long double>(Rational(len * m).get_d());
        proj += static_cast<long double>(len.get_d());
      }
      const long double lhs = std::pow(sum, static_cast<long double>(inv_qc.get_d()));
      const long double rhs = std::pow(vol, static_cast<long double>(inv_rc.get_d())) *
                              std::pow(proj, static_cast<long double>(Rational(inv_qc - inv_rc).get_d()));
      const bool equality_expected = distinct.size() <= 1 || inv_qc == inv_rc;
      const auto r = mixed_lb_check(f, th, 3);
      const bool ok = r.exact && r.holds && r.equality_observed == equality_expected &&
                      std::fabs(r.lhs - static_cast<double>(lhs)) <= kMixedRel * static_cast<double>(lhs) &&
                      std::fabs(r.rhs - static_cast<double>(rhs)) <= kMixedRel * static_cast<double>(rhs);
      failures += ok ? 0 : 1;
      equalities += r.equality_observed ? 1 : 0;
      ++checks;
    }
  }
  return {failures == 0, std::to_string(checks) + " checks, " + std::to_string(equalities) + " equalities, " +
                             std::to_string(failures) + " failures"};
}

// 10
Outcome bounded_ratio() {
  double worst = 1;
  for (double shift : {0.0, 0.1, -0.1}) {
    const auto s = sharpness_scan(PolyCurve::moment(3), q(1), {q(1), false}, dyadic_deltas(3, 10), shift);
    worst = std::max(worst, s.spread);
  }
  const double scan_worst = worst;
  Sampler sampler(kSeed + 10);
  const PolyCurve moment = PolyCurve::moment(3);
  const std::vector<std::pair<Rational, Rational>> dil{{1, 1}, {2, 1}, {1, 2}, {q(1, 2), 1}, {1, q(1, 2)}, {4, q(1, 2)}, {q(1, 4), 3}};
  double family_worst = 1;
  int skipped = 0;
  for (int i = 0; i < kRandomPairs; ++i) {
    BoxSet e, f;
    for (int attempt = 0;; ++attempt) {
      e = sampler.disjoint_boxes(3, 2);
      f = sampler.disjoint_boxes(3, 2);
      if (pairing(moment, LineWeight::unit(), e, f, 1e-8).value > 1e-3) break;
      if (attempt > 100) {
        ++skipped;
        break;
      }
    }
    for (const Rational& th : {theta_zero(3), q(1)}) {
      double lo = INFINITY, hi = 0;
      for (const auto& [lambda, mu] : dil) {
        const auto r = rwt_ratio(moment, th, dilate(e, {mu, mu * lambda, mu * lambda * lambda}),
                                 dilate(f, {lambda, mu * lambda, mu * lambda * lambda}), 1e-10);
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
      }
      family_worst = std::max(family_worst, lo > 0 ? hi / lo : INFINITY);
    }
  }
  worst = std::max(worst, family_worst);
  return {worst <= kMaxSpread && skipped == 0,
          fmt("delta-family max/min %.6f", scan_worst) + fmt(", box-pair families max/min %.6f", family_worst)};
}

// 11
Outcome exponent_algebra() {
  bool ok = true;
  for (int d = 3; d <= 8; ++d) {
    const auto t0 = exponent_triple(q(0), d);
    ok = ok && t0.p == ExtRational(Rational(1)) && t0.q.is_infinite() && t0.r == ExtRational(Rational(1));
    const auto t1 = exponent_triple(q(1), d);
    ok = ok && t1.p == ExtRational(q(d + 2, d)) && t1.q == ExtRational(q(d + 2, d)) &&
         t1.r == ExtRational(q(d * d + d - 2, d * d - d - 2));
    const Rational th0 = q((d + 2) * (d - 1), d * d + d);
    ok = ok && theta_zero(d) == th0;
    const auto tz = exponent_triple(th0, d);
    ok = ok && tz.p == ExtRational(q(d * (d + 1), d * d - d + 2)) && tz.q == ExtRational(q(d + 1, d - 1)) &&
         tz.r == ExtRational(q(d + 1, d - 1));
    for (int k = 0; k <= 24; ++k) {
      const auto t = exponent_triple(q(k, 24), d);
      const auto sc = check_scaling_conditions(t.p, t.q, t.r, d);
      ok = ok && sc[0].holds && sc[0].equality && sc[1].holds && sc[1].equality && sc[2].holds;
    }
  }
  return {ok, "closed-form triples at theta = 0, theta0, 1 for d = 3..8; equality in the first two conditions on 25 thetas"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact moment-curve torsion", torsion_constants},
      {"Jacobian identities", jacobian_identities},
      {"Jacobian lower-bound constants", jacobian_constants},
      {"torsion transform laws", transform_laws},
      {"adjoint consistency", adjoint_consistency},
      {"weight-sharpness scaling", sharp_scaling},
      {"flat-case decay", flat_decay},
      {"stopping time", stopping_time_check},
      {"mixed-norm lower bound", mixed_lower_bound},
      {"bounded ratio across scaling families", bounded_ratio},
      {"exponent algebra", exponent_algebra},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
