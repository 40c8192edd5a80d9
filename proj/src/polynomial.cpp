#include "polyxray/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace polyxray {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

Polynomial::Polynomial(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) {
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  coeffs_d_.resize(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_d_[i] = coeffs_[i].get_d();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::identity() { return monomial(1, 1); }

Rational Polynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational Polynomial::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational Polynomial::operator()(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

double Polynomial::evaluate(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_d_.rbegin(); it != coeffs_d_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative(int k) const {
  if (k < 0) throw std::invalid_argument("negative derivative order");
  if (k == 0) return *this;
  if (degree() < k) return Polynomial();
  std::vector<Rational> out(coeffs_.size() - static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < out.size(); ++i) {
    Rational factor(1);
    for (int j = 1; j <= k; ++j) factor *= static_cast<long>(i) + j;
    out[i] = coeffs_[i + static_cast<std::size_t>(k)] * factor;
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::antiderivative() const {
  if (is_zero()) return Polynomial();
  std::vector<Rational> out(coeffs_.size() + 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i + 1] = coeffs_[i] / Rational(static_cast<long>(i) + 1);
  return Polynomial(std::move(out));
}

Polynomial Polynomial::compose_linear(const Rational& a, const Rational& b) const {
  return compose(Polynomial{b, a});
}

Polynomial Polynomial::compose(const Polynomial& q) const {
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= q;
    acc += constant(*it);
  }
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    normalize();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  r *= Rational(-1);
  return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {Polynomial(), *this};
  std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd) + 1, Rational(0));
  const Rational& lead = divisor.coeffs_.back();
  for (int k = degree() - dd; k >= 0; --k) {
    Rational c = rem[static_cast<std::size_t>(k + dd)] / lead;
    quot[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::exact_div(const Polynomial& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial r = *this;
  r *= Rational(1) / leading();
  return r;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    Rational c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    Rational a = polyxray::abs(c);
    if (k == 0) {
      out << polyxray::to_string(a);
    } else {
      if (a != 1) out << polyxray::to_string(a) << "*";
      out << var;
      if (k > 1) out << "^" << k;
    }
    first = false;
  }
  return out.str();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

SquareFreeFactorization square_free_factorization(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("square-free factorization of zero");
  SquareFreeFactorization out;
  out.content = p.leading();
  Polynomial f = p.monic();
  if (f.degree() == 0) return out;
  Polynomial fp = f.derivative();
  Polynomial a = gcd(f, fp);
  Polynomial b = f.exact_div(a);
  Polynomial c = fp.exact_div(a);
  Polynomial dpoly = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Polynomial g = gcd(b, dpoly);
    if (g.degree() > 0) out.factors.emplace_back(g, i);
    b = b.exact_div(g);
    c = dpoly.exact_div(g);
    dpoly = c - b.derivative();
    ++i;
  }
  return out;
}

Polynomial square_free_part(const Polynomial& p) {
  if (p.is_zero()) return p;
  if (p.degree() == 0) return Polynomial::constant(1);
  return p.monic().exact_div(gcd(p, p.derivative()));
}

}  // namespace polyxray
