#include "polyxray/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyxray {

namespace {
int sgn(const Rational& x) { return sign(x); }
}  // namespace

SturmSequence::SturmSequence(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
  seq_.push_back(p);
  if (p.degree() == 0) return;
  seq_.push_back(p.derivative());
  while (seq_.back().degree() > 0) {
    auto rem = seq_[seq_.size() - 2].divmod(seq_.back()).second;
    if (rem.is_zero()) break;
    // Positive rescaling keeps signs and tames coefficient growth.
    Rational lead = abs(rem.leading());
    seq_.push_back(-rem * (Rational(1) / lead));
  }
}

int SturmSequence::variations(const Rational& x) const {
  int count = 0, prev = 0;
  for (const auto& q : seq_) {
    int s = sgn(q(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

int SturmSequence::count_open(const Rational& a, const Rational& b) const {
  int n = variations(a) - variations(b);
  if (base()(b) == 0) --n;
  return n;
}

RealAlgebraic::RealAlgebraic(Polynomial sq, Rational lo, Rational hi) : poly_(std::move(sq)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw std::invalid_argument("isolating interval reversed");
  if (lo_ != hi_) {
    sign_lo_ = sgn(poly_(lo_));
    const int sign_hi = sgn(poly_(hi_));
    if (sign_lo_ == 0 || sign_hi == 0 || sign_lo_ == sign_hi)
      throw std::invalid_argument("isolating interval needs a strict sign change");
  } else if (poly_(lo_) != 0) {
    throw std::invalid_argument("degenerate isolating interval is not a root");
  }
}

RealAlgebraic RealAlgebraic::rational(const Rational& x) {
  return RealAlgebraic(Polynomial{-x, Rational(1)}, x, x);
}

double RealAlgebraic::approx() const {
  if (is_rational()) return lo_.get_d();
  RealAlgebraic tmp = *this;
  Rational scale(1, 1L << 55);
  tmp.refine_to((abs(tmp.lo_) + abs(tmp.hi_) + 1) * scale);
  Rational m = (tmp.lo_ + tmp.hi_) / 2;
  return m.get_d();
}

void RealAlgebraic::bisect() {
  if (is_rational()) return;
  Rational m = (lo_ + hi_) / 2;
  int s = sgn(poly_(m));
  if (s == 0) {
    lo_ = hi_ = m;
  } else if (s == sign_lo_) {
    lo_ = m;
  } else {
    hi_ = m;
  }
}

void RealAlgebraic::refine_to(const Rational& w) {
  while (!is_rational() && hi_ - lo_ > w) bisect();
}

Rational simplest_rational_between(const Rational& a, const Rational& b) {
  if (a > b) return simplest_rational_between(b, a);
  if (a <= 0 && b >= 0) return Rational(0);
  if (b < 0) return Rational(-simplest_rational_between(-b, -a));
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  if (Rational(fl) == a) return a;
  Rational ce(fl + 1);
  if (ce <= b) return ce;
  Rational lo = Rational(1) / (b - fl), hi = Rational(1) / (a - fl);
  Rational inner = simplest_rational_between(lo, hi);
  return Rational(Rational(fl) + Rational(1) / inner);
}

void RealAlgebraic::settle_rationality() {
  if (is_rational()) return;
  // A rational root p/q of an integer polynomial has q | lead; an interval narrower than
  // 1/lead^2 then contains no other fraction with denominator <= lead.
  Integer den_lcm(1);
  for (const auto& c : poly_.coefficients()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer content(0);
  for (const auto& c : poly_.coefficients()) {
    Integer v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  Rational lead = abs(poly_.leading()) * Rational(den_lcm) / Rational(content);
  refine_to(Rational(1) / (lead * lead * 2));
  if (is_rational()) return;
  Rational cand = simplest_rational_between(lo_, hi_);
  if (poly_(cand) == 0) lo_ = hi_ = cand;
}

int RealAlgebraic::compare(const Rational& x) {
  if (is_rational()) return sgn(lo_ - x);
  for (;;) {
    if (x <= lo_) return 1;
    if (x >= hi_) return -1;
    // x strictly inside the isolating interval.
    int s = sgn(poly_(x));
    if (s == 0) {
      lo_ = hi_ = x;
      return 0;
    }
    if (s == sign_lo_) {
      lo_ = x;
      return 1;
    }
    hi_ = x;
    return -1;
  }
}

int compare(RealAlgebraic& a, RealAlgebraic& b) {
  if (a.is_rational()) return -b.compare(a.value());
  if (b.is_rational()) return a.compare(b.value());
  Polynomial g = gcd(a.polynomial(), b.polynomial());
  if (g.degree() > 0) {
    // Each open isolating interval holds exactly one root of its polynomial, so a common
    // root of g inside the overlap is both numbers.
    Rational lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
    if (lo < hi && SturmSequence(square_free_part(g)).count_open(lo, hi) > 0) return 0;
  }
  for (int guard = 0; guard < 100000; ++guard) {
    if (a.hi() < b.lo() || (a.hi() == b.lo() && !(a.is_rational() && b.is_rational()))) return -1;
    if (b.hi() < a.lo() || (b.hi() == a.lo() && !(a.is_rational() && b.is_rational()))) return 1;
    if (a.is_rational() && b.is_rational()) return sgn(a.value() - b.value());
    if (a.is_rational()) return -b.compare(a.value());
    if (b.is_rational()) return a.compare(b.value());
    a.refine_to(a.width() / 2);
    b.refine_to(b.width() / 2);
  }
  throw std::runtime_error("real algebraic comparison did not separate");
}

Rational cauchy_bound(const Polynomial& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational m(0);
  const Rational lead = abs(p.leading());
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coefficient(k)) / lead));
  return m + 1;
}

namespace {

void isolate_rec(const SturmSequence& s, const Rational& a, const Rational& b, int n, std::vector<RealAlgebraic>& out) {
  if (n <= 0) return;
  if (n == 1 && s.base()(a) != 0 && s.base()(b) != 0) {
    out.emplace_back(s.base(), a, b);
    return;
  }
  Rational m = (a + b) / 2;
  const bool root_at_m = s.base()(m) == 0;
  int left = s.count_open(a, m);
  isolate_rec(s, a, m, left, out);
  if (root_at_m) out.push_back(RealAlgebraic(s.base(), m, m));
  isolate_rec(s, m, b, n - left - (root_at_m ? 1 : 0), out);
}

}  // namespace

std::vector<RealAlgebraic> real_roots_squarefree(const Polynomial& sq) {
  std::vector<RealAlgebraic> out;
  if (sq.degree() <= 0) return out;
  SturmSequence s(sq);
  Rational m = cauchy_bound(sq);
  isolate_rec(s, -m, m, s.count_open(-m, m), out);
  return out;
}

std::vector<std::complex<double>> complex_roots_approx(const Polynomial& p) {
  const int n = p.degree();
  std::vector<std::complex<double>> z;
  if (n <= 0) return z;
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n) + 1);
  const double lead = p.leading().get_d();
  for (int k = 0; k <= n; ++k) c[k] = p.coefficient(k).get_d() / lead;
  auto eval = [&](std::complex<double> x) {
    std::complex<double> acc = 0;
    for (int k = n; k >= 0; --k) acc = acc * x + c[k];
    return acc;
  };
  double radius = cauchy_bound(p).get_d();
  const std::complex<double> seed(0.4, 0.9);
  for (int k = 0; k < n; ++k) z.push_back(std::pow(seed, k) * (radius > 1 ? radius * 0.5 : 0.5));
  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> denom = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      if (std::abs(denom) == 0) denom = 1e-300;
      std::complex<double> delta = eval(z[i]) / denom;
      z[i] -= delta;
      change = std::max(change, std::abs(delta) / std::max(1.0, std::abs(z[i])));
    }
    if (change < 1e-15) break;
  }
  return z;
}

std::vector<RootDatum> isolate_real_roots(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("root isolation of the zero polynomial");
  std::vector<RootDatum> real, pairs;
  auto sf = square_free_factorization(p);
  for (const auto& [f, mult] : sf.factors) {
    auto rr = real_roots_squarefree(f);
    for (auto& r : rr) {
      r.settle_rationality();
      RootDatum d;
      d.kind = RootDatum::Kind::Real;
      d.real = r;
      d.approx = r.approx();
      d.multiplicity = mult;
      real.push_back(std::move(d));
    }
    const int ncomplex = f.degree() - static_cast<int>(rr.size());
    if (ncomplex <= 0) continue;
    auto z = complex_roots_approx(f);
    std::sort(z.begin(), z.end(), [](auto x, auto y) { return std::fabs(x.imag()) > std::fabs(y.imag()); });
    z.resize(static_cast<std::size_t>(ncomplex));
    Polynomial df = f.derivative();
    for (const auto& w : z) {
      if (w.imag() < 0) continue;
      // A disk of radius n|f/f'| around w contains a root of f.
      std::complex<double> fv = 0, dv = 0;
      for (int k = f.degree(); k >= 0; --k) fv = fv * w + f.coefficient(k).get_d();
      for (int k = df.degree(); k >= 0; --k) dv = dv * w + df.coefficient(k).get_d();
      double rad = std::abs(dv) > 0 ? f.degree() * std::abs(fv) / std::abs(dv) : 1e-8;
      rad = std::max(rad, 1e-14 * std::max(1.0, std::abs(w))) * 2;
      RootDatum d;
      d.kind = RootDatum::Kind::ComplexPair;
      d.approx = w;
      d.multiplicity = mult;
      d.re_lo = from_double(w.real() - rad);
      d.re_hi = from_double(w.real() + rad);
      d.im_lo = from_double(std::max(0.0, w.imag() - rad));
      d.im_hi = from_double(w.imag() + rad);
      pairs.push_back(std::move(d));
    }
  }
  // Distinct factors are coprime, so roots are distinct; sort exactly.
  std::sort(real.begin(), real.end(), [](RootDatum& a, RootDatum& b) { return compare(a.real, b.real) < 0; });
  for (std::size_t i = 0; i + 1 < real.size(); ++i) {
    auto& a = real[i].real;
    auto& b = real[i + 1].real;
    while (!(a.hi() <= b.lo())) {
      a.refine_to(a.width() / 2);
      b.refine_to(b.width() / 2);
    }
  }
  for (auto& d : pairs) real.push_back(std::move(d));
  return real;
}

namespace {

double horner(const std::vector<double>& c, double x) {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> deriv(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

double bisect_root(const std::vector<double>& c, double a, double b, double fa) {
  for (int i = 0; i < 200; ++i) {
    double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    double fm = horner(c, m);
    if (fm == 0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> real_roots_in(const std::vector<double>& coeffs, double lo, double hi) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  std::vector<double> out;
  if (c.size() <= 1 || !(lo < hi)) return out;
  if (c.size() == 2) {
    double r = -c[0] / c[1];
    if (r >= lo && r <= hi) out.push_back(r);
    return out;
  }
  std::vector<double> cuts{lo};
  for (double r : real_roots_in(deriv(c), lo, hi))
    if (r > cuts.back() && r < hi) cuts.push_back(r);
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    double fa = horner(c, a), fb = horner(c, b);
    double r;
    if (fa == 0) {
      r = a;
    } else if (fb == 0) {
      r = b;
    } else if ((fa < 0) != (fb < 0)) {
      r = bisect_root(c, a, b, fa);
    } else {
      continue;
    }
    if (out.empty() || r > out.back()) out.push_back(r);
  }
  return out;
}

}  // namespace polyxray
