#include "polyxray/refine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/mpfr.hpp>

namespace polyxray {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<80>,
                                           boost::multiprecision::et_off>;

// relative slack for comparisons carried out at 80 digits
const Real kSlack("1e-40");

Real to_real(const Rational& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

std::string text(const Real& x) { return x.str(50, std::ios_base::fmtflags(0)); }

// Coordinates in which mu is Lebesgue measure.
struct UMap {
  Real power;  // alpha + 1

  explicit UMap(const WeightedMeasure& m) : power(to_real(Rational(m.alpha + 1))) {}
  Real forward(const Real& t) const { return t <= 0 ? Real(0) : Real(pow(t, power) / power); }
  Real backward(const Real& u) const { return u <= 0 ? Real(0) : Real(pow(u * power, 1 / power)); }
};

using Pieces = std::vector<std::pair<Real, Real>>;

Pieces to_u(const UMap& map, const IntervalUnion& s) {
  Pieces out;
  for (const auto& [a, b] : s.parts()) out.emplace_back(map.forward(to_real(a)), map.forward(to_real(b)));
  return out;
}

Real overlap(const Pieces& s, const Real& lo, const Real& hi) {
  Real sum = 0;
  for (const auto& [a, b] : s) {
    const Real l = std::max(a, lo), r = std::min(b, hi);
    if (r > l) sum += r - l;
  }
  return sum;
}

struct USweep {
  Real captured, best, arg;
  int events = 0;
};

// I' = [x, x + h] with h half of |J|; g(x) = |S cap I'| is piecewise linear with kinks where
// x or x + h meets an endpoint of S, so its maximum sits on one of those events.
USweep sweep_u(const Real& lo, const Real& hi, const Pieces& s) {
  const Real h = (hi - lo) / 2, last = hi - h;
  std::vector<Real> xs{lo, last};
  for (const auto& [a, b] : s)
    for (const Real& e : {a, b, Real(a - h), Real(b - h)})
      if (e > lo && e < last) xs.push_back(e);
  std::sort(xs.begin(), xs.end());
  USweep out;
  out.captured = overlap(s, lo, hi);
  out.best = -1;
  for (const Real& x : xs) {
    const Real g = overlap(s, x, x + h);
    if (g > out.best) {
      out.best = g;
      out.arg = x;
    }
  }
  out.events = static_cast<int>(xs.size());
  return out;
}

SweepResult to_result(const UMap& map, const USweep& sw, const Real& lo, const Real& hi) {
  SweepResult r;
  r.captured = sw.captured.convert_to<double>();
  r.maximum = sw.best.convert_to<double>();
  r.minimum = Real(sw.captured - sw.best).convert_to<double>();
  r.arg_lo = map.backward(sw.arg).convert_to<double>();
  r.arg_hi = map.backward(Real(sw.arg + (hi - lo) / 2)).convert_to<double>();
  r.events = sw.events;
  return r;
}

SweepResult sweep_t(const WeightedMeasure& m, const Real& t_lo, const Real& t_hi, const IntervalUnion& s) {
  if (!(t_hi > t_lo)) throw std::invalid_argument("half_interval_sweep: J must have positive length");
  const UMap map(m);
  const Real lo = map.forward(t_lo), hi = map.forward(t_hi);
  if (!(hi > lo)) throw std::invalid_argument("half_interval_sweep: mu(J) must be positive");
  return to_result(map, sweep_u(lo, hi, to_u(map, s)), lo, hi);
}

void check_alpha(const WeightedMeasure& m) {
  if (m.alpha < 0) throw std::invalid_argument("weighted measure: alpha must be nonnegative");
}

}  // namespace

WeightedMeasure WeightedMeasure::from_weight(int k, const Rational& theta, int d) {
  if (k < 0 || d < 2) throw std::invalid_argument("from_weight: need k >= 0 and d >= 2");
  return {Rational(2 * k * theta / ((d + 2) * (d - 1)))};
}

IntervalUnion::IntervalUnion(std::vector<std::pair<Rational, Rational>> parts) {
  for (const auto& [a, b] : parts)
    if (a > b || a < 0 || b > 1) throw std::invalid_argument("IntervalUnion: intervals must be ordered and inside [0,1]");
  std::sort(parts.begin(), parts.end());
  for (auto& p : parts) {
    if (!parts_.empty() && p.first <= parts_.back().second)
      parts_.back().second = std::max(parts_.back().second, p.second);
    else
      parts_.push_back(std::move(p));
  }
}

bool IntervalUnion::within(const Rational& lo, const Rational& hi) const {
  return parts_.empty() || (parts_.front().first >= lo && parts_.back().second <= hi);
}

IntervalUnion IntervalUnion::intersect(const Rational& lo, const Rational& hi) const {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& [a, b] : parts_) {
    const Rational l = std::max(a, lo), r = std::min(b, hi);
    if (l <= r) out.emplace_back(l, r);
  }
  return IntervalUnion(std::move(out));
}

double mu_measure(const WeightedMeasure& m, const Rational& a, const Rational& b) {
  return mu_measure(m, IntervalUnion({{a, b}}));
}

double mu_measure(const WeightedMeasure& m, const IntervalUnion& s) {
  check_alpha(m);
  const UMap map(m);
  Real sum = 0;
  for (const auto& [a, b] : to_u(map, s)) sum += b - a;
  return sum.convert_to<double>();
}

std::string mu_measure_text(const WeightedMeasure& m, const IntervalUnion& s) {
  check_alpha(m);
  const UMap map(m);
  Real sum = 0;
  for (const auto& [a, b] : to_u(map, s)) sum += b - a;
  return sum.str(40, std::ios_base::fmtflags(0));
}

double mu_quantile(const WeightedMeasure& m, const Rational& lo, const Rational& hi, double f) {
  check_alpha(m);
  if (!(f > 0 && f < 1)) throw std::invalid_argument("mu_quantile: fraction must lie in (0,1)");
  if (!(lo < hi)) throw std::invalid_argument("mu_quantile: need lo < hi");
  const UMap map(m);
  const Real a = map.forward(to_real(lo)), b = map.forward(to_real(hi));
  return map.backward(Real(a + Real(f) * (b - a))).convert_to<double>();
}

SweepResult half_interval_sweep(const WeightedMeasure& m, const std::string& j_lo, const std::string& j_hi,
                                const IntervalUnion& s) {
  check_alpha(m);
  return sweep_t(m, Real(j_lo), Real(j_hi), s);
}

SweepResult half_interval_sweep(const WeightedMeasure& m, const Rational& j_lo, const Rational& j_hi,
                                const IntervalUnion& s) {
  check_alpha(m);
  return sweep_t(m, to_real(j_lo), to_real(j_hi), s);
}

StopConstant stop_constant(double eps) {
  if (!(eps > 0)) throw std::invalid_argument("stop_constant: eps must be positive");
  const Real e(eps), ratio = pow(Real(2), -e), half_log = log(Real(0.5));
  Real c = (1 - ratio) * log(Real(2)) / 2;
  for (int halvings = 0; halvings < 64; ++halvings, c /= 2) {
    Real x = c * pow(Real(2), e);
    if (x >= 1) continue;
    Real sum = 0;
    for (int i = 0; i < 4000; ++i, x *= ratio) sum += log(1 - x);
    // log(1 - y) >= -y / (1 - y) >= -y / (1 - x) for the remaining y <= x
    sum -= x / (1 - ratio) / (1 - x);
    if (sum >= half_log)
      return {c.convert_to<double>(), Real(c / 2).convert_to<double>(), sum.convert_to<double>(), halvings};
  }
  throw std::runtime_error("stop_constant: product bound did not certify");
}

StopVerification verify_stopping_time(const WeightedMeasure& m, const IntervalUnion& s, double eps, double c_eps,
                                      const std::string& j_lo, const std::string& j_hi) {
  check_alpha(m);
  const UMap map(m);
  const Real lo = map.forward(Real(j_lo)), hi = map.forward(Real(j_hi));
  if (!(hi > lo)) throw std::invalid_argument("verify_stopping_time: mu(J) must be positive");
  const Pieces su = to_u(map, s);
  Real ms = 0;
  for (const auto& [a, b] : su) ms += b - a;
  const USweep sw = sweep_u(lo, hi, su);
  const Real half = ms / 2, cert = sw.captured - sw.best;
  const Real required = Real(c_eps) * pow(ms / (hi - lo), Real(eps)) * ms;
  StopVerification v;
  v.captured = sw.captured.convert_to<double>();
  v.half_mass = half.convert_to<double>();
  v.certificate = cert.convert_to<double>();
  v.required = required.convert_to<double>();
  v.first_holds = sw.captured >= half * (1 - kSlack);
  v.second_holds = cert >= required * (1 - kSlack);
  return v;
}

StopTimeResult stopping_time(const WeightedMeasure& m, const Rational& i0_lo, const Rational& i0_hi,
                             const IntervalUnion& s, double eps) {
  check_alpha(m);
  if (!(i0_lo >= 0 && i0_lo < i0_hi && i0_hi <= 1)) throw std::invalid_argument("stopping_time: I0 must be inside [0,1]");
  if (!s.within(i0_lo, i0_hi)) throw std::invalid_argument("stopping_time: S must lie inside I0");
  const UMap map(m);
  const Pieces su = to_u(map, s);
  Real ms = 0;
  for (const auto& [a, b] : su) ms += b - a;
  if (!(ms > 0)) throw std::invalid_argument("stopping_time: mu(S) must be positive");

  StopTimeResult out;
  out.constant = stop_constant(eps);
  Real lo = map.forward(to_real(i0_lo)), hi = map.forward(to_real(i0_hi));
  const Real m0 = log2((hi - lo) / ms), c(out.constant.c), e(eps);
  int j = 0;
  for (;; ++j) {
    if (j > 100000) throw std::runtime_error("stopping_time: no termination");
    const USweep sw = sweep_u(lo, hi, su);
    const Real threshold = (1 - c * pow(Real(2), e * (j - m0))) * sw.captured;
    if (sw.best < threshold) break;
    const Real h = (hi - lo) / 2;
    lo = sw.arg;
    hi = sw.arg + h;
  }
  out.stages = j;
  out.m0 = m0.convert_to<double>();
  out.stage_bound_holds = Real(j) <= m0 + 2;
  out.j_lo = text(map.backward(lo));
  out.j_hi = text(map.backward(hi));
  out.j_lo_d = Real(out.j_lo).convert_to<double>();
  out.j_hi_d = Real(out.j_hi).convert_to<double>();
  out.measure_s = ms.convert_to<double>();
  out.measure_j = Real(hi - lo).convert_to<double>();
  out.verification = verify_stopping_time(m, s, eps, out.constant.c_eps, out.j_lo, out.j_hi);
  return out;
}

IBeta i_beta(double beta, int k, const Rational& theta, int d, double c) {
  if (!(beta > 0 && beta <= 1) || !(c > 0 && c <= 1)) throw std::invalid_argument("i_beta: need beta, c in (0,1]");
  const WeightedMeasure m = WeightedMeasure::from_weight(k, theta, d);
  IBeta out;
  out.delta = Rational(1 / (1 + m.alpha));
  const Real delta = to_real(out.delta), power = to_real(Rational(m.alpha + 1));
  const Real lo = Real(c) * pow(Real(beta), delta);
  out.lo = lo.convert_to<double>();
  out.excluded_ratio = Real(pow(lo, power) / power / Real(beta)).convert_to<double>();
  return out;
}

}  // namespace polyxray
