#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "polyxray/boxes.hpp"
#include "polyxray/polycurve.hpp"
#include "polyxray/refine.hpp"
#include "polyxray/xrayop.hpp"

namespace polyxray {

/// Seeded generators for the randomized checks; identical seeds give identical instances.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }
  int integer(int lo, int hi);
  double uniform(double lo, double hi);
  /// n / m with |n| <= num_bound, 1 <= m <= den_bound.
  Rational rational(int num_bound, int den_bound);
  Rational nonzero_rational(int num_bound, int den_bound);
  /// k / den with k uniform in [0, den].
  Rational grid_point(const Rational& lo, const Rational& hi, int den);

  PolyCurve curve(int dim, int degree);
  RationalMatrix invertible_matrix(int n);
  AffineChange affine_change(int dim);

  /// 1 to max_boxes pairwise disjoint boxes with dyadic corners in [-1, 1]^dim.
  BoxSet disjoint_boxes(int dim, int max_boxes);
  /// Closed intervals in [lo, hi] with positive total length.
  IntervalUnion interval_union(const Rational& lo, const Rational& hi, int max_parts);

 private:
  std::mt19937_64 rng_;
};

}  // namespace polyxray
