#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polyxray/rational.hpp"

namespace polyxray {

/// Univariate polynomial with exact rational coefficients, ascending by degree.
/// The coefficient list never ends in a zero; the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  Polynomial(std::initializer_list<Rational> coefficients);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, int degree);
  /// The identity polynomial t.
  static Polynomial identity();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of t^k; zero beyond the degree.
  Rational coefficient(int k) const;
  Rational leading() const;

  Rational operator()(const Rational& t) const;

  /// Horner evaluation in any ring that can be built from a double (double, Interval, ...).
  template <class T>
  T evaluate_as(const T& t) const {
    T acc(0.0);
    for (auto it = coeffs_d_.rbegin(); it != coeffs_d_.rend(); ++it) acc = acc * t + T(*it);
    return acc;
  }
  double evaluate(double t) const;
  const std::vector<double>& coefficients_double() const { return coeffs_d_; }

  Polynomial derivative(int k = 1) const;
  Polynomial antiderivative() const;
  /// p(a t + b).
  Polynomial compose_linear(const Rational& a, const Rational& b) const;
  /// p(q(t)).
  Polynomial compose(const Polynomial& q) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division: *this = q * divisor + r with deg r < deg divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  /// Exact division; throws if the remainder is nonzero.
  Polynomial exact_div(const Polynomial& divisor) const;
  Polynomial monic() const;

  /// "2*t^2 - 1/3*t + 5"
  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();

  std::vector<Rational> coeffs_;
  std::vector<double> coeffs_d_;
};

/// Monic gcd (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Yun's square-free factorization: p = c * prod_i factors[i].first^factors[i].second,
/// with square-free, pairwise coprime, monic factors of positive degree.
struct SquareFreeFactorization {
  Rational content;
  std::vector<std::pair<Polynomial, int>> factors;
};
SquareFreeFactorization square_free_factorization(const Polynomial& p);

/// Square-free part (monic).
Polynomial square_free_part(const Polynomial& p);

}  // namespace polyxray
