#include "polyxray/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polyxray {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed integer");
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    Integer ez = parse_integer(exp_part);
    if (!ez.fits_slong_p() || std::labs(ez.get_si()) > 100000) throw std::invalid_argument("exponent out of range");
    exponent = ez.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  std::size_t dot = s.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(s);
  } else {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    exponent -= static_cast<long>(s.size() - dot - 1);
    if (s.substr(0, dot).find('.') != std::string_view::npos) throw std::invalid_argument("malformed decimal");
  }
  if (!all_digits(digits)) throw std::invalid_argument("malformed decimal");
  Rational r{Integer(digits, 10)};
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0)
    r *= ten_pow;
  else
    r /= ten_pow;
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '+' || den_text.front() == '-'))
      throw std::invalid_argument("signed denominator");
    Integer den = parse_integer(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("0 to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational result(1);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  result = Rational(num, den);
  result.canonicalize();
  return result;
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

int sign(const Rational& value) { return sgn(value); }

ExtRational ExtRational::infinity() {
  ExtRational r;
  r.infinite_ = true;
  return r;
}

ExtRational ExtRational::reciprocal_of(const Rational& x) {
  if (x == 0) return infinity();
  return ExtRational(Rational(1) / x);
}

const Rational& ExtRational::value() const {
  if (infinite_) throw std::logic_error("value() of infinite ExtRational");
  return value_;
}

Rational ExtRational::reciprocal() const {
  if (infinite_) return Rational(0);
  if (value_ == 0) throw std::domain_error("reciprocal of zero");
  return Rational(1) / value_;
}

ExtRational ExtRational::conjugate() const {
  Rational inv = reciprocal();
  return reciprocal_of(Rational(1) - inv);
}

double ExtRational::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.get_d();
}

std::string ExtRational::to_string() const { return infinite_ ? "inf" : polyxray::to_string(value_); }

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

}  // namespace polyxray
