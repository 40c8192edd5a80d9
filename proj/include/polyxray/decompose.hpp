#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyxray/interval.hpp"
#include "polyxray/polycurve.hpp"
#include "polyxray/roots.hpp"

namespace polyxray {

/// Torsion vanishes identically: the curve lies in an affine hyperplane.
class FlatCurveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Certification did not succeed within the piece budget.
class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interval endpoint: a real algebraic number or +-infinity.
struct PieceBound {
  int infinite = 0;  // -1, 0, +1
  RealAlgebraic point = RealAlgebraic::rational(0);

  static PieceBound finite(RealAlgebraic x) { return PieceBound{0, std::move(x)}; }
  static PieceBound at(const Rational& x) { return PieceBound{0, RealAlgebraic::rational(x)}; }
  bool is_finite() const { return infinite == 0; }
  double approx() const;
  std::string to_string() const;
};

struct Domain {
  std::optional<Rational> lo, hi;  // nullopt = unbounded on that side

  static Domain bounded(const Rational& a, const Rational& b) { return Domain{a, b}; }
  static Domain real_line() { return Domain{}; }
};

/// On [lo, hi], |L(t)| / (A |t - b|^K) lies in [1/C, C].
struct MonomialPiece {
  PieceBound lo, hi;
  double A = 1.0;
  int K = 0;
  RealAlgebraic b = RealAlgebraic::rational(0);
  double C = 1.0;
  bool far_field = false;
};

struct Decomposition {
  Polynomial torsion;
  Domain domain;
  double C_target = 4.0;
  std::vector<MonomialPiece> pieces;
};

struct DecomposeOptions {
  double C_target = 4.0;
  std::size_t max_pieces = 4096;
};

Decomposition decompose_torsion(const PolyCurve& curve, const Domain& domain, const DecomposeOptions& options = {});
Decomposition decompose_polynomial(const Polynomial& torsion, const Domain& domain, const DecomposeOptions& options = {});

/// Re-derives a rigorous enclosure of |L(t)| / (A |t - b|^K) over a bounded piece.
Interval certify_piece(const Polynomial& torsion, const MonomialPiece& piece);

/// Far-field ratio bound max((1 + M/R)^n, (1 - M/R)^-n) for |t| >= R.
double far_field_constant(const Polynomial& torsion, const Rational& radius);

struct NormalizedPiece {
  PolyCurve curve;
  Rational lo, hi;  // subset of [0, 1]
  int K = 0;
  /// new curve = diag(scale, 1, ..., 1) * old curve(shift + slope * t)
  Rational slope, shift, scale;
};

/// Moves b to 0, the piece into [0, 1], and A to 1. Requires a bounded piece with rational b.
NormalizedPiece normalize_piece(const PolyCurve& curve, const MonomialPiece& piece);

}  // namespace polyxray
