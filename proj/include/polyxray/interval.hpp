#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyxray/polynomial.hpp"
#include "polyxray/rational.hpp"

namespace polyxray {

/// Closed double interval with outward rounding (one ulp per operation).
struct Interval {
  double lo = 0.0, hi = 0.0;

  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}  // NOLINT: exact doubles convert implicitly
  Interval(double l, double h) : lo(l), hi(h) {}

  static double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
  static double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

  /// Rigorous enclosure of an exact rational.
  static Interval enclose(const Rational& q) {
    double d = q.get_d();
    if (from_double(d) == q) return Interval(d);
    return Interval(down(d), up(d));
  }

  static double add_err(double a, double b) {
    double s = a + b, bb = s - a;
    return (a - (s - bb)) + (b - bb);
  }
  // Sign of (a/b - q), from the exact residual q*b - a.
  static double div_err(double q, double a, double b) { return -std::fma(q, b, -a) * (b < 0 ? -1.0 : 1.0); }
  static double adjust(double v, double err, int dir) {
    if (!std::isfinite(v) || std::isnan(err)) return dir < 0 ? down(v) : up(v);
    if (err == 0.0) return v;
    if (dir < 0) return err < 0 ? down(v) : v;
    return err > 0 ? up(v) : v;
  }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  /// max |x|
  double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  /// min |x|
  double mig() const { return (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::fabs(lo), std::fabs(hi)); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return contains(0.0); }

  // Directed rounding from the exact error term: widen only on the side the error points to.
  static double add_down(double a, double b) { return adjust(a + b, add_err(a, b), -1); }
  static double add_up(double a, double b) { return adjust(a + b, add_err(a, b), 1); }
  static double mul_down(double a, double b) { double p = a * b; return adjust(p, std::fma(a, b, -p), -1); }
  static double mul_up(double a, double b) { double p = a * b; return adjust(p, std::fma(a, b, -p), 1); }
  static double div_down(double a, double b) { double q = a / b; return adjust(q, div_err(q, a, b), -1); }
  static double div_up(double a, double b) { double q = a / b; return adjust(q, div_err(q, a, b), 1); }

  friend Interval operator+(const Interval& a, const Interval& b) { return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {add_down(a.lo, -b.hi), add_up(a.hi, -b.lo)}; }
  Interval operator-() const { return {-hi, -lo}; }
  friend Interval operator*(const Interval& a, const Interval& b) {
    double x[4] = {a.lo, a.lo, a.hi, a.hi}, y[4] = {b.lo, b.hi, b.lo, b.hi};
    Interval r(std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity());
    for (int i = 0; i < 4; ++i) {
      r.lo = std::min(r.lo, mul_down(x[i], y[i]));
      r.hi = std::max(r.hi, mul_up(x[i], y[i]));
    }
    return r;
  }
  /// Requires 0 not in b.
  friend Interval operator/(const Interval& a, const Interval& b) {
    double x[4] = {a.lo, a.lo, a.hi, a.hi}, y[4] = {b.lo, b.hi, b.lo, b.hi};
    Interval r(std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity());
    for (int i = 0; i < 4; ++i) {
      r.lo = std::min(r.lo, div_down(x[i], y[i]));
      r.hi = std::max(r.hi, div_up(x[i], y[i]));
    }
    return r;
  }
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
};

inline Interval abs(const Interval& x) { return {x.mig(), x.mag()}; }

inline Interval pow(const Interval& x, int k) {
  Interval acc(1.0);
  for (int i = 0; i < k; ++i) acc = acc * x;
  if (k % 2 == 0) acc.lo = std::max(acc.lo, 0.0);
  return acc;
}

inline Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

/// Enclosure of p over [lo, hi] by the centered form around the midpoint (exact Taylor shift).
Interval enclose_range(const Polynomial& p, const Rational& lo, const Rational& hi);

/// Rigorous point enclosure of p(x) for rational x.
Interval enclose_value(const Polynomial& p, const Rational& x);

}  // namespace polyxray
