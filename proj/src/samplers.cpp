#include "polyxray/samplers.hpp"

#include <algorithm>

namespace polyxray {

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

Rational Sampler::rational(int num_bound, int den_bound) {
  const int n = integer(-num_bound, num_bound);
  return make_rational(n, integer(1, den_bound));
}

Rational Sampler::nonzero_rational(int num_bound, int den_bound) {
  for (;;) {
    Rational r = rational(num_bound, den_bound);
    if (r != 0) return r;
  }
}

Rational Sampler::grid_point(const Rational& lo, const Rational& hi, int den) {
  return lo + (hi - lo) * make_rational(integer(0, den), den);
}

PolyCurve Sampler::curve(int dim, int degree) {
  std::vector<Polynomial> comps;
  for (int i = 0; i < dim - 1; ++i) {
    std::vector<Rational> c;
    for (int k = 0; k <= degree; ++k) c.push_back(rational(12, 7));
    comps.emplace_back(c);
  }
  return PolyCurve(dim, comps);
}

RationalMatrix Sampler::invertible_matrix(int n) {
  const auto un = static_cast<std::size_t>(n);
  for (;;) {
    RationalMatrix m(un, un);
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j) m(i, j) = rational(5, 4);
    if (determinant(m) != 0) return m;
  }
}

AffineChange Sampler::affine_change(int dim) {
  AffineChange ch;
  ch.b = invertible_matrix(dim - 1);
  for (int i = 0; i < dim - 1; ++i) ch.c.push_back(rational(6, 5));
  ch.a = nonzero_rational(5, 3);
  ch.shift = rational(6, 5);
  return ch;
}

BoxSet Sampler::disjoint_boxes(int dim, int max_boxes) {
  const int target = integer(1, max_boxes);
  BoxSet out;
  for (int attempt = 0; attempt < 200 && static_cast<int>(out.boxes.size()) < target; ++attempt) {
    std::vector<Rational> lo, hi;
    for (int k = 0; k < dim; ++k) {
      int a = integer(-8, 8), b = integer(-8, 8);
      if (a == b) b = a + 1;
      if (a > b) std::swap(a, b);
      lo.push_back(make_rational(a, 8));
      hi.push_back(make_rational(b, 8));
    }
    BoxSet trial = out;
    trial.boxes.push_back(Box::axis_aligned(lo, hi));
    if (trial.disjoint_axis_aligned()) out = std::move(trial);
  }
  return out;
}

IntervalUnion Sampler::interval_union(const Rational& lo, const Rational& hi, int max_parts) {
  const int n = integer(1, max_parts);
  std::vector<std::pair<Rational, Rational>> parts;
  for (int i = 0; i < n; ++i) {
    Rational a = grid_point(lo, hi, 10000), b = grid_point(lo, hi, 10000);
    if (a > b) std::swap(a, b);
    if (a == b) {
      if (b < hi)
        b = std::min(Rational(hi), Rational(b + (hi - lo) / 10000));
      else
        a = b - (hi - lo) / 10000;
    }
    parts.emplace_back(a, b);
  }
  return IntervalUnion(std::move(parts));
}

}  // namespace polyxray
