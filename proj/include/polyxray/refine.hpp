#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polyxray/rational.hpp"

namespace polyxray {

/// Density t^alpha on [0,1].
struct WeightedMeasure {
  Rational alpha;

  /// alpha = 2 K theta / ((d+2)(d-1)).
  static WeightedMeasure from_weight(int k, const Rational& theta, int d);
};

/// Sorted, disjoint closed intervals inside [0,1].
class IntervalUnion {
 public:
  IntervalUnion() = default;
  /// Merges overlaps; throws if an interval is reversed or leaves [0,1].
  explicit IntervalUnion(std::vector<std::pair<Rational, Rational>> parts);

  const std::vector<std::pair<Rational, Rational>>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool within(const Rational& lo, const Rational& hi) const;
  IntervalUnion intersect(const Rational& lo, const Rational& hi) const;

 private:
  std::vector<std::pair<Rational, Rational>> parts_;
};

double mu_measure(const WeightedMeasure& m, const Rational& a, const Rational& b);
double mu_measure(const WeightedMeasure& m, const IntervalUnion& s);
/// 40 significant digits.
std::string mu_measure_text(const WeightedMeasure& m, const IntervalUnion& s);

/// x with mu([lo, x]) = f mu([lo, hi]).
double mu_quantile(const WeightedMeasure& m, const Rational& lo, const Rational& hi, double f);

/// Both extremes are attained by the same half-measure I' = [arg_lo, arg_hi].
struct SweepResult {
  double captured = 0;  // mu(S cap J)
  double minimum = 0;   // min over I' of mu(S cap (J \ I'))
  double maximum = 0;   // max over I' of mu(S cap I')
  double arg_lo = 0, arg_hi = 0;
  int events = 0;
};

/// J given by decimal endpoints so that irrational stopping intervals round-trip.
SweepResult half_interval_sweep(const WeightedMeasure& m, const std::string& j_lo, const std::string& j_hi,
                                const IntervalUnion& s);
SweepResult half_interval_sweep(const WeightedMeasure& m, const Rational& j_lo, const Rational& j_hi,
                                const IntervalUnion& s);

struct StopConstant {
  double c;        // procedure constant
  double c_eps;    // constant in the conclusion, c / 2
  double log_product;  // lower bound on sum_i log(1 - c 2^eps 2^{-eps i})
  int halvings;
};

/// Starts from (1 - 2^-eps) ln2 / 2 and halves until the product bound certifies.
StopConstant stop_constant(double eps);

struct StopVerification {
  double captured, half_mass;  // mu(J cap S) against mu(S)/2
  double certificate, required;  // sweep minimum against c_eps (mu(S)/mu(J))^eps mu(S)
  bool first_holds = false;
  bool second_holds = false;
};

struct StopTimeResult {
  std::string j_lo, j_hi;  // 50 significant digits
  double j_lo_d = 0, j_hi_d = 0;
  int stages = 0;
  double m0 = 0;
  StopConstant constant;
  double measure_s = 0, measure_j = 0;
  StopVerification verification;
  bool stage_bound_holds = false;  // stages <= m0 + 2
};

StopTimeResult stopping_time(const WeightedMeasure& m, const Rational& i0_lo, const Rational& i0_hi,
                             const IntervalUnion& s, double eps);

/// Independent re-check of both conclusions from the printed endpoints.
StopVerification verify_stopping_time(const WeightedMeasure& m, const IntervalUnion& s, double eps, double c_eps,
                                      const std::string& j_lo, const std::string& j_hi);

struct IBeta {
  double lo;            // c beta^delta
  Rational delta;       // (1 + alpha)^{-1}
  double excluded_ratio;  // mu([0, lo]) / beta
};

IBeta i_beta(double beta, int k, const Rational& theta, int d, double c);

}  // namespace polyxray
