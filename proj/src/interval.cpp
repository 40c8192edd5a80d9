#include "polyxray/interval.hpp"

namespace polyxray {

Interval enclose_range(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) return Interval(0.0);
  Rational m = (lo + hi) / 2;
  Polynomial shifted = p.compose_linear(1, m);
  Interval r = Interval::enclose((hi - lo) / 2);
  r.lo = 0.0;
  const auto& c = shifted.coefficients();
  Interval spread(0.0);
  Interval rk(1.0);
  for (std::size_t k = 1; k < c.size(); ++k) {
    rk = rk * r;
    spread += abs(Interval::enclose(c[k])) * rk;
  }
  Interval c0 = Interval::enclose(c[0]);
  return {Interval::add_down(c0.lo, -spread.hi), Interval::add_up(c0.hi, spread.hi)};
}

Interval enclose_value(const Polynomial& p, const Rational& x) { return Interval::enclose(p(x)); }

}  // namespace polyxray
