#pragma once

#include <complex>
#include <vector>

#include "polyxray/polynomial.hpp"
#include "polyxray/rational.hpp"

namespace polyxray {

/// Sturm sequence of a square-free polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& squarefree);
  /// Sign variations at x.
  int variations(const Rational& x) const;
  /// Number of distinct roots in the open interval (a, b), a < b.
  int count_open(const Rational& a, const Rational& b) const;
  const Polynomial& base() const { return seq_.front(); }

 private:
  std::vector<Polynomial> seq_;
};

/// A real root of a square-free polynomial, given by a rational isolating interval.
/// Either lo == hi (the root is that rational) or the polynomial changes sign strictly
/// across (lo, hi) and has exactly one root there.
class RealAlgebraic {
 public:
  RealAlgebraic(Polynomial squarefree, Rational lo, Rational hi);
  static RealAlgebraic rational(const Rational& x);

  const Polynomial& polynomial() const { return poly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_rational() const { return lo_ == hi_; }
  /// Valid only when is_rational().
  const Rational& value() const { return lo_; }
  Rational width() const { return hi_ - lo_; }
  double approx() const;

  /// Bisect until the width is at most w (or the root turns out rational).
  void refine_to(const Rational& w);
  /// Decides exactly whether the root is rational; collapses the interval if so.
  void settle_rationality();
  /// -1, 0, +1 for root < x, root == x, root > x. Exact.
  int compare(const Rational& x);

 private:
  void bisect();
  Polynomial poly_;
  Rational lo_, hi_;
  int sign_lo_ = 0;
};

/// Rational with the smallest denominator in [a, b].
Rational simplest_rational_between(const Rational& a, const Rational& b);

/// Total order on real algebraic numbers (refines both as needed). Exact.
int compare(RealAlgebraic& a, RealAlgebraic& b);

struct RootDatum {
  enum class Kind { Real, ComplexPair };
  Kind kind = Kind::Real;
  /// For Real roots.
  RealAlgebraic real = RealAlgebraic::rational(0);
  /// For complex pairs: rational box around (Re, |Im|) containing exactly this conjugate pair's root.
  Rational re_lo, re_hi, im_lo, im_hi;
  std::complex<double> approx;
  int multiplicity = 1;
};

/// All roots of p: real roots sorted ascending (exact isolation), then complex pairs.
/// Throws std::invalid_argument on the zero polynomial.
std::vector<RootDatum> isolate_real_roots(const Polynomial& p);

/// Distinct real roots of a square-free polynomial, sorted, isolating intervals disjoint.
std::vector<RealAlgebraic> real_roots_squarefree(const Polynomial& sqfree);

/// 1 + max |a_k / a_n|.
Rational cauchy_bound(const Polynomial& p);

/// Durand-Kerner approximations of all complex roots.
std::vector<std::complex<double>> complex_roots_approx(const Polynomial& p);

/// Real roots of a double-coefficient polynomial inside [lo, hi], sorted, found by
/// recursive splitting at derivative roots and safeguarded bisection on monotone pieces.
std::vector<double> real_roots_in(const std::vector<double>& coeffs, double lo, double hi);

}  // namespace polyxray
