#pragma once

#include <vector>

#include "polyxray/boxes.hpp"
#include "polyxray/grid.hpp"
#include "polyxray/linalg.hpp"
#include "polyxray/polycurve.hpp"
#include "polyxray/quadrature.hpp"
#include "polyxray/rational.hpp"

namespace polyxray {

/// Weight on the t-line: 1, |L_P|^e, or |t|^alpha restricted to an interval.
class LineWeight {
 public:
  enum class Kind { Unit, TorsionPower, Monomial };

  static LineWeight unit();
  /// |L_P(t)|^e with e = 2 theta / ((d+2)(d-1)); theta = 0 gives the unit weight.
  static LineWeight torsion_power(const PolyCurve& curve, const Rational& theta);
  /// |L_P(t)|^exponent for an arbitrary exponent >= 0.
  static LineWeight torsion_exponent(const PolyCurve& curve, double exponent);
  /// |t|^alpha on [lo, hi], zero elsewhere.
  static LineWeight monomial(double alpha, double lo, double hi);

  Kind kind() const { return kind_; }
  double operator()(double t) const;
  /// Integral of the weight over [a, b].
  QuadEstimate measure(double a, double b, double tol = 1e-12) const;
  /// Points where the weight may fail to be smooth (roots of L_P, 0, interval ends).
  const std::vector<double>& singular_points() const { return singular_; }
  bool is_constant() const { return constant_; }

 private:
  Kind kind_ = Kind::Unit;
  bool constant_ = true;
  double constant_value_ = 1;
  double exponent_ = 0;
  double lo_ = 0, hi_ = 0;
  std::vector<double> torsion_coeffs_;
  std::vector<double> singular_;
};

/// X f(t, y) = w(t) * integral of chi_E(s, y + s P(t)) ds; exact s-measure.
double xray_indicator(const PolyCurve& curve, const LineWeight& w, const BoxSet& e, double t,
                      const std::vector<double>& y);

/// X* chi_F(s, x) = integral of w(t) chi_F(t, x - s P(t)) dt, split at polynomial crossing roots.
QuadEstimate adjoint_indicator(const PolyCurve& curve, const LineWeight& w, const BoxSet& f, double s,
                               const std::vector<double>& x, double tol = 1e-12);

double xray_grid(const PolyCurve& curve, const LineWeight& w, const GridFunction& f, double t, const double* y);
double adjoint_grid(const PolyCurve& curve, const LineWeight& w, const GridFunction& g, double s, const double* x);

/// <X chi_E, chi_F>. Sheared parallelepipeds sharing a frame are reduced to axis-aligned boxes.
QuadEstimate pairing(const PolyCurve& curve, const LineWeight& w, const BoxSet& e, const BoxSet& f, double tol);
/// <chi_E, X* chi_F> computed with s outermost; an independent route to the same number.
QuadEstimate adjoint_pairing(const PolyCurve& curve, const LineWeight& w, const BoxSet& e, const BoxSet& f,
                             double tol);

/// ||chi_F||_{L^q_t(L^r_y)}; q or r may be infinite.
double mixed_norm(const BoxSet& f, const ExtRational& q, const ExtRational& r);

struct MixedLowerBound {
  double lhs = 0;  // ||chi_F||_{L^{q'}(L^{r'})}
  double rhs = 0;  // |F|^{1/r'} |pi(F)|^{1/q' - 1/r'}
  bool holds = false;
  bool equality_predicted = false;  // constant slice measure on the projection, or q' = r'
  bool equality_observed = false;
  bool exact = false;  // slices piecewise constant, evaluated with 256-bit arithmetic
};
/// Lower bound for mixed norms of indicators at the exponents of theta (theta >= theta_0).
MixedLowerBound mixed_lb_check(const BoxSet& f, const Rational& theta, int dim);

struct RatioResult {
  double ratio = 0;
  double rel_error = 0;
  double pairing = 0;
  double e_volume = 0;
  double f_norm = 0;
  long evaluations = 0;
};
/// <X chi_E, chi_F> / (|E|^{1/p} ||chi_F||_{L^{q'}(L^{r'})}).
RatioResult rwt_ratio(const PolyCurve& curve, const LineWeight& w, const ExponentTriple& exps, const BoxSet& e,
                      const BoxSet& f, double tol);
RatioResult rwt_ratio(const PolyCurve& curve, const Rational& theta, const BoxSet& e, const BoxSet& f, double tol);

struct AdjointCheck {
  double lhs = 0;  // <X f, g>
  double rhs = 0;  // <f, X* g>
  double rel_diff = 0;
};
/// Both sides by tensor Gauss (order points per axis) over the supports of g and f respectively.
AdjointCheck adjoint_check(const PolyCurve& curve, const LineWeight& w, const GridFunction& f, const GridFunction& g,
                           int order = 2);

struct L1LinftyResult {
  double f_l1 = 0;
  std::vector<double> t_samples, values;  // integral over y of |X f(t, y)|
  double sup_ratio = 0;
  bool holds = false;
};
/// sup_t ||X f(t, .)||_{L^1} <= ||f||_{L^1} up to relative tol, at the sampled t.
L1LinftyResult l1_linfty_check(const PolyCurve& curve, const GridFunction& f, const std::vector<double>& t_samples,
                               int y_cells, double tol);

/// P~(t) = B P(a t + shift) + c.
struct AffineChange {
  RationalMatrix b;
  std::vector<Rational> c;
  Rational a{1}, shift{0};
};

struct InvarianceResult {
  double lhs = 0, lhs_error = 0;  // ||X_P f||_{L^q(L^r)(I)} / ||f||_p
  double rhs = 0, rhs_error = 0;  // same for P~ and the sheared f~ over the pulled-back interval
  double discrepancy = 0;         // |lhs - rhs| / max(lhs, rhs)
};
/// Two quadrature levels (cells and 2 cells per axis); the error is their difference.
InvarianceResult invariance_check(const PolyCurve& curve, const Rational& theta, const GridFunction& f,
                                  const AffineChange& change, double t_lo, double t_hi, int cells);

}  // namespace polyxray
