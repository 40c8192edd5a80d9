#pragma once

#include <array>
#include <string>
#include <vector>

#include "polyxray/linalg.hpp"
#include "polyxray/polynomial.hpp"
#include "polyxray/rational.hpp"

namespace polyxray {

/// Polynomial curve P: R -> R^{d-1}, the direction field of the restricted X-ray transform on R^d.
class PolyCurve {
 public:
  PolyCurve(int ambient_dim, std::vector<Polynomial> components);

  /// (t, t^2, ..., t^{d-1}).
  static PolyCurve moment(int ambient_dim);

  int ambient_dim() const { return dim_; }
  int degree() const;
  const std::vector<Polynomial>& components() const { return comps_; }
  const Polynomial& component(int k) const { return comps_.at(static_cast<std::size_t>(k)); }

  std::vector<Rational> operator()(const Rational& t) const;
  std::vector<double> evaluate(double t) const;
  /// k-th derivative of every component at t.
  std::vector<Rational> derivative_at(int k, const Rational& t) const;
  std::vector<double> derivative_at(int k, double t) const;
  PolyCurve derivative(int k = 1) const;

  /// True when the last component vanishes identically (image in R^{d-2} x {0}).
  bool lies_in_last_coordinate_hyperplane() const;

  friend bool operator==(const PolyCurve& a, const PolyCurve& b) { return a.dim_ == b.dim_ && a.comps_ == b.comps_; }

 private:
  int dim_;
  std::vector<Polynomial> comps_;
};

Polynomial poly_derivative(const Polynomial& p, int k);

/// L_P = det(P', P'', ..., P^{(d-1)}) as an exact polynomial.
Polynomial torsion(const PolyCurve& curve);

/// Upper bound (d-1)N - d(d-1)/2 on deg L_P (may be negative: then L_P = 0).
int torsion_degree_bound(int ambient_dim, int degree);

/// |L_P(t)|^{2/(d(d-1))}.
double affine_arclength_density(const PolyCurve& curve, double t);
double affine_arclength_density(const PolyCurve& curve, const Rational& t);

/// Weight exponent e = 2 theta / ((d+2)(d-1)) of |L_P|^e.
struct WeightSpec {
  Rational theta;
  int dim;

  WeightSpec(Rational theta, int dim);
  Rational exponent() const;
};

/// |L_P(t)|^e with 0^0 = 1 when theta = 0.
double weight_theta(const PolyCurve& curve, const WeightSpec& spec, double t);
double weight_theta(const PolyCurve& curve, const WeightSpec& spec, const Rational& t);

struct ExponentTriple {
  ExtRational p, q, r;
  Rational theta;

  Rational inv_p() const { return p.reciprocal(); }
  Rational inv_q() const { return q.reciprocal(); }
  Rational inv_r() const { return r.reciprocal(); }
};

/// (1/p, 1/q, 1/r) = (1 - th + th d/(d+2), th d/(d+2), 1 - th + th (d^2-d-2)/(d^2+d-2)).
ExponentTriple exponent_triple(const Rational& theta, int dim);

/// (d+2)(d-1)/(d^2+d), the parameter at which q = r.
Rational theta_zero(int dim);

struct ScalingCondition {
  bool holds = false;
  bool equality = false;
};

/// d/p <= (d-1)/r + 1,  d(d-1)/p <= 2/q + d(d-1)/r,  (d-2)(d+1)/p <= d(d-1)/r; exact.
std::array<ScalingCondition, 3> check_scaling_conditions(const ExtRational& p, const ExtRational& q,
                                                         const ExtRational& r, int dim);

/// B P + c. Throws std::domain_error on singular B.
PolyCurve apply_affine(const PolyCurve& curve, const RationalMatrix& b, const std::vector<Rational>& c);

/// P(a t + b). Throws std::invalid_argument on a = 0.
PolyCurve reparam_linear(const PolyCurve& curve, const Rational& a, const Rational& b);

}  // namespace polyxray
