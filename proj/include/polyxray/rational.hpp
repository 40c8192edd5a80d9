#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace polyxray {

/// Exact rational number. GMP keeps it canonical (positive denominator, reduced).
using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical n/d (mpq_class(n, d) alone does not reduce).
Rational make_rational(long num, long den);

/// Parses "p", "p/q" or a decimal literal such as "-1.25e-3". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Exact: every finite double is a dyadic rational.
Rational from_double(double value);

Rational pow(const Rational& base, int exponent);

Rational abs(const Rational& value);

int sign(const Rational& value);

/// A rational that may also be +infinity (used for q = inf in exponent triples).
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational value) : value_(std::move(value)) {}  // NOLINT: implicit by design of use

  static ExtRational infinity();
  /// 1/x, with 1/0 = inf and 1/inf = 0.
  static ExtRational reciprocal_of(const Rational& x);

  bool is_infinite() const { return infinite_; }
  const Rational& value() const;
  /// 1/this, with 1/inf = 0. Throws on 1/0.
  Rational reciprocal() const;
  /// Hoelder conjugate p' with 1/p + 1/p' = 1.
  ExtRational conjugate() const;
  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);

 private:
  Rational value_{0};
  bool infinite_ = false;
};

}  // namespace polyxray
