#include "polyxray/polycurve.hpp"

#include <cmath>
#include <stdexcept>

namespace polyxray {

PolyCurve::PolyCurve(int ambient_dim, std::vector<Polynomial> components) : dim_(ambient_dim), comps_(std::move(components)) {
  if (dim_ < 3) throw std::invalid_argument("ambient dimension must be at least 3");
  if (static_cast<int>(comps_.size()) != dim_ - 1)
    throw std::invalid_argument("curve needs exactly d-1 components");
}

PolyCurve PolyCurve::moment(int ambient_dim) {
  std::vector<Polynomial> comps;
  for (int k = 1; k < ambient_dim; ++k) comps.push_back(Polynomial::monomial(1, k));
  return PolyCurve(ambient_dim, std::move(comps));
}

int PolyCurve::degree() const {
  int n = 0;
  for (const auto& c : comps_) n = std::max(n, c.degree());
  return n;
}

std::vector<Rational> PolyCurve::operator()(const Rational& t) const {
  std::vector<Rational> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c(t));
  return out;
}

std::vector<double> PolyCurve::evaluate(double t) const {
  std::vector<double> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.evaluate(t));
  return out;
}

std::vector<Rational> PolyCurve::derivative_at(int k, const Rational& t) const {
  std::vector<Rational> out;
  for (const auto& c : comps_) out.push_back(c.derivative(k)(t));
  return out;
}

std::vector<double> PolyCurve::derivative_at(int k, double t) const {
  std::vector<double> out;
  for (const auto& c : comps_) out.push_back(c.derivative(k).evaluate(t));
  return out;
}

PolyCurve PolyCurve::derivative(int k) const {
  std::vector<Polynomial> out;
  for (const auto& c : comps_) out.push_back(c.derivative(k));
  return PolyCurve(dim_, std::move(out));
}

bool PolyCurve::lies_in_last_coordinate_hyperplane() const { return comps_.back().is_zero(); }

Polynomial poly_derivative(const Polynomial& p, int k) { return p.derivative(k); }

Polynomial torsion(const PolyCurve& curve) {
  const std::size_t n = static_cast<std::size_t>(curve.ambient_dim() - 1);
  Matrix<Polynomial> m(n, n, Polynomial());
  // Column j holds P^{(j+1)}.
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = curve.component(static_cast<int>(i)).derivative(static_cast<int>(j) + 1);
  return determinant(m);
}

int torsion_degree_bound(int ambient_dim, int degree) {
  return (ambient_dim - 1) * degree - ambient_dim * (ambient_dim - 1) / 2;
}

double affine_arclength_density(const PolyCurve& curve, double t) {
  const int d = curve.ambient_dim();
  double l = std::fabs(torsion(curve).evaluate(t));
  return std::pow(l, 2.0 / (d * (d - 1)));
}

double affine_arclength_density(const PolyCurve& curve, const Rational& t) {
  const int d = curve.ambient_dim();
  double l = std::fabs(torsion(curve)(t).get_d());
  return std::pow(l, 2.0 / (d * (d - 1)));
}

WeightSpec::WeightSpec(Rational th, int d) : theta(std::move(th)), dim(d) {
  if (theta < 0 || theta > 1) throw std::invalid_argument("theta must lie in [0,1]");
  if (dim < 3) throw std::invalid_argument("ambient dimension must be at least 3");
}

Rational WeightSpec::exponent() const { return Rational(2) * theta / Rational((dim + 2) * (dim - 1)); }

namespace {
double weight_from_torsion_value(double l, const WeightSpec& spec) {
  if (spec.theta == 0) return 1.0;
  return std::pow(std::fabs(l), spec.exponent().get_d());
}
}  // namespace

double weight_theta(const PolyCurve& curve, const WeightSpec& spec, double t) {
  return weight_from_torsion_value(torsion(curve).evaluate(t), spec);
}

double weight_theta(const PolyCurve& curve, const WeightSpec& spec, const Rational& t) {
  return weight_from_torsion_value(torsion(curve)(t).get_d(), spec);
}

ExponentTriple exponent_triple(const Rational& theta, int d) {
  if (theta < 0 || theta > 1) throw std::invalid_argument("theta must lie in [0,1]");
  if (d < 3) throw std::invalid_argument("ambient dimension must be at least 3");
  const Rational one(1);
  Rational inv_p = one - theta + theta * Rational(d, d + 2);
  Rational inv_q = theta * Rational(d, d + 2);
  Rational inv_r = one - theta + theta * Rational(d * d - d - 2, d * d + d - 2);
  inv_p.canonicalize();
  inv_q.canonicalize();
  inv_r.canonicalize();
  return ExponentTriple{ExtRational::reciprocal_of(inv_p), ExtRational::reciprocal_of(inv_q),
                        ExtRational::reciprocal_of(inv_r), theta};
}

Rational theta_zero(int d) {
  if (d < 3) throw std::invalid_argument("ambient dimension must be at least 3");
  Rational r((d + 2) * (d - 1), d * d + d);
  r.canonicalize();
  return r;
}

std::array<ScalingCondition, 3> check_scaling_conditions(const ExtRational& p, const ExtRational& q,
                                                         const ExtRational& r, int d) {
  const Rational ip = p.reciprocal(), iq = q.reciprocal(), ir = r.reciprocal();
  auto cmp = [](const Rational& lhs, const Rational& rhs) { return ScalingCondition{lhs <= rhs, lhs == rhs}; };
  return {cmp(Rational(d) * ip, Rational(d - 1) * ir + 1),
          cmp(Rational(d * (d - 1)) * ip, Rational(2) * iq + Rational(d * (d - 1)) * ir),
          cmp(Rational((d - 2) * (d + 1)) * ip, Rational(d * (d - 1)) * ir)};
}

PolyCurve apply_affine(const PolyCurve& curve, const RationalMatrix& b, const std::vector<Rational>& c) {
  const std::size_t n = static_cast<std::size_t>(curve.ambient_dim() - 1);
  if (b.rows() != n || b.cols() != n || c.size() != n) throw std::invalid_argument("affine map has wrong shape");
  if (determinant(b) == 0) throw std::domain_error("affine map is singular");
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial acc = Polynomial::constant(c[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (b(i, j) != 0) acc += curve.component(static_cast<int>(j)) * b(i, j);
    out.push_back(std::move(acc));
  }
  return PolyCurve(curve.ambient_dim(), std::move(out));
}

PolyCurve reparam_linear(const PolyCurve& curve, const Rational& a, const Rational& b) {
  if (a == 0) throw std::invalid_argument("reparametrization slope must be nonzero");
  std::vector<Polynomial> out;
  for (const auto& c : curve.components()) out.push_back(c.compose_linear(a, b));
  return PolyCurve(curve.ambient_dim(), std::move(out));
}

}  // namespace polyxray
