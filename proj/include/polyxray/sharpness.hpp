#pragma once

#include <string>
#include <vector>

#include "polyxray/boxes.hpp"
#include "polyxray/polycurve.hpp"
#include "polyxray/xrayop.hpp"

namespace polyxray {

/// True when p >= 0 on [a, b]; exact (sign tests at rational points between isolated roots).
bool nonnegative_on(const Polynomial& p, const Rational& a, const Rational& b);

/// Sets realising the lower bound at (t0, delta) for theta > 0:
///   E = {(s, s P(t0) + sum v_j P^{(j)}(t0)) : |s| < 1, |v_j| < 2 delta^j},
///   F = {(t, sum v_j P^{(j)}(t0)) : |t - t0| < delta, |v_j| < delta^j}.
struct OptimalityBoxes {
  BoxSet e, f;
  Rational t0, delta;
  /// Exact certificate that (s, y + s P(t)) lies in E for all (t, y) in F and |s| <= 1.
  bool contained = false;
};
/// Throws std::domain_error when L_P(t0) = 0.
OptimalityBoxes optimality_boxes(const PolyCurve& curve, const Rational& t0, const Rational& delta);

/// Exact check of |c_j(t)| <= delta^j on [t0 - delta, t0 + delta], c = M^{-1}(P(t) - P(t0)).
bool optimality_admissible(const PolyCurve& curve, const Rational& t0, const Rational& delta);

/// theta = 0: F = [t0 - delta, t0 + delta] x [-1, 1]^{d-1} and a strip covering of
/// E = {(s, y + s P(t)) : |s| <= 1, (t, y) in F}.
struct Theta0Boxes {
  BoxSet e, f;
  int strips = 0;
  /// Rigorous upper bound on |covering| / |E| - 1.
  double excess_bound = 0;
};
Theta0Boxes theta0_boxes(const PolyCurve& curve, const Rational& t0, const Rational& delta, double max_excess = 0.1,
                         int max_strips = 4096);

/// Curve in R^{d-2} x {0}: F = I x [-1,1]^{d-2} x [-delta, delta],
/// E = [-1,1] x [-(1+S), 1+S]^{d-2} x [-delta, delta] with S >= sup_I |P| (rational bound).
struct FlatBoxes {
  BoxSet e, f;
  Rational sup_bound;
};
FlatBoxes flat_boxes(const PolyCurve& curve, const Rational& a, const Rational& b, const Rational& delta);

struct ScanPoint {
  Rational delta;
  Rational t0;
  double ratio = 0;
  double rel_error = 0;
  double pairing = 0;
  double e_volume = 0;
  double f_norm = 0;
  bool contained = false;
};

struct LineFit {
  double slope = 0, intercept = 0, max_residual = 0;
};
/// Ordinary least squares of log y against log x; residuals in log y.
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

enum class ScanKind { Sharp, Theta0, Flat };

struct ScanResult {
  ScanKind kind = ScanKind::Sharp;
  int dim = 0;
  Rational theta;
  double weight_shift = 0;
  std::vector<ScanPoint> points;
  LineFit fit;
  /// Predicted d log R / d log delta.
  double predicted_slope = 0;
  /// ratio max / min over the family.
  double spread = 0;
};

/// t0 = base_point (fixed) or t0 = base_point * delta (proportional).
struct BasePointRule {
  Rational base_point{1};
  bool proportional = false;
  Rational at(const Rational& delta) const { return proportional ? base_point * delta : base_point; }
};

/// R(delta) on optimality boxes with weight |L_P|^{e + weight_shift}; delta is halved until containment holds.
ScanResult sharpness_scan(const PolyCurve& curve, const Rational& theta, const BasePointRule& base,
                          const std::vector<Rational>& deltas, double weight_shift = 0, double tol = 1e-11);
/// Exact part of the predicted slope: n/r - n/p + 1/q with n = d(d-1)/2.
Rational sharp_base_slope(const Rational& theta, int dim);

/// theta = 0 family with (p, q, r) = (1, inf, 1) and unit weight; predicted slope 0.
ScanResult theta0_scan(const PolyCurve& curve, const Rational& t0, const std::vector<Rational>& deltas,
                       double max_excess = 0.05, double tol = 1e-11);

/// Flat family with unit weight at the exponents of theta. The predicted slope of R is
/// 1 - 1/p - 1/r', i.e. the bound / pairing grows like delta^{1/p + 1/r' - 1}.
ScanResult flat_scan(const PolyCurve& curve, const Rational& theta, const Rational& a, const Rational& b,
                     const std::vector<Rational>& deltas, double tol = 1e-11);
Rational flat_bound_exponent(const Rational& theta, int dim);

/// Image of every box under the diagonal map diag(scale).
BoxSet dilate(const BoxSet& set, const std::vector<Rational>& scale);

/// delta = 2^{-lo}, ..., 2^{-hi}.
std::vector<Rational> dyadic_deltas(int lo, int hi);

/// Log-log plot of a scan with its fit and predicted slope.
std::string scan_svg(const ScanResult& scan);

std::string to_string(ScanKind kind);

}  // namespace polyxray
