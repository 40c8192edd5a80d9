#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyxray/decompose.hpp"
#include "polyxray/linalg.hpp"
#include "polyxray/polycurve.hpp"

namespace polyxray {

enum class Family { Phi, Psi };

std::string to_string(Family f);
Family parse_family(const std::string& name);

/// Phi: (s0, x0); Psi: (t0, y0).
template <class T>
struct BasePoint {
  Family family = Family::Psi;
  T param{};
  std::vector<T> point;
};

/// Alternating arguments: Psi takes (s1, t1, s2, t2, ...), Phi takes (t1, s1, t2, s2, ...).
template <class T>
using ChainArgs = std::vector<T>;

/// Phi^k / Psi^k evaluated from the defining sums; k = args.size() in [1, d].
template <class T>
std::vector<T> iterated_map(const PolyCurve& curve, const BasePoint<T>& base, const ChainArgs<T>& args);

template <class T>
std::vector<T> psi_k(const PolyCurve& curve, const BasePoint<T>& base, const ChainArgs<T>& args);
template <class T>
std::vector<T> phi_k(const PolyCurve& curve, const BasePoint<T>& base, const ChainArgs<T>& args);

/// d x d matrix of partial derivatives (column m = derivative in args[m]); args.size() == d.
RationalMatrix jacobian_matrix(const PolyCurve& curve, const BasePoint<Rational>& base, const ChainArgs<Rational>& args);

/// Exact det of the Jacobian of the full-length map.
Rational jacobian_det(const PolyCurve& curve, const BasePoint<Rational>& base, const ChainArgs<Rational>& args);

/// Q(t) = (t, antiderivative of P), so Q' = (1, P).
std::vector<Polynomial> antiderivative_curve(const PolyCurve& curve);

/// s-increment product times the differentiated determinant of Q' columns, exact.
Rational jacobian_identity_rhs(const PolyCurve& curve, const BasePoint<Rational>& base, const ChainArgs<Rational>& args);

struct IdentityCheck {
  Rational lhs, rhs;
  bool holds = false;  // |lhs| == |rhs|
};
IdentityCheck jacobian_identity_check(const PolyCurve& curve, const BasePoint<Rational>& base, const ChainArgs<Rational>& args);

/// det(Q'(t0), ..., Q'(t_{d-1})) / prod_{i<j} (t_j - t_i), computed through divided differences
/// (valid for coincident points).
Rational vandermonde_factor_J(const PolyCurve& curve, const std::vector<Rational>& points);

/// The lower-bound product for |det| (s-increments, |L|^{2/d}, squared t-gaps, boundary factors).
double jacobian_lowerbound_rhs(const PolyCurve& curve, const Polynomial& torsion, const BasePoint<double>& base,
                               const ChainArgs<double>& args);

struct LowerBoundSample {
  double ratio = 0.0;
  double base_param = 0.0;
  ChainArgs<double> args;
};

struct LowerBoundResult {
  double min_ratio = 0.0;
  LowerBoundSample argmin;
  std::size_t n_samples = 0;
  std::size_t n_used = 0;  // samples with nonzero right-hand side
  std::uint64_t seed = 0;
  Family family = Family::Psi;
};

struct SamplingBox {
  double s_lo = -1.0, s_hi = 1.0;
  double min_increment = 1e-6;
};

/// min over samples of |det D(map)| / RHS; t-coordinates (including t0 for Psi) uniform in the
/// piece, s-coordinates (including s0 for Phi) uniform in the box. Determinants are exact.
LowerBoundResult jacobian_lowerbound_ratio(const PolyCurve& curve, const MonomialPiece& piece, Family family,
                                           std::size_t n_samples, std::uint64_t seed, const SamplingBox& box = {});

struct JBoundResult {
  double min_ratio = 0.0;
  std::vector<double> argmin;
  std::size_t n_samples = 0;
};

/// min over samples of |J(t)| / prod |L(t_j)|^{1/d} with t_j uniform in the piece.
JBoundResult vandermonde_lowerbound(const PolyCurve& curve, const MonomialPiece& piece, std::size_t n_samples,
                                    std::uint64_t seed);

}  // namespace polyxray
