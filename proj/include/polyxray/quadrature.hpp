#pragma once

#include <functional>
#include <vector>

namespace polyxray {

struct QuadEstimate {
  double value = 0;
  double error = 0;
  long evaluations = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes, weights;
};
const GaussRule& gauss_rule(int n);

/// Fixed Gauss-Legendre on [a, b].
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n);

/// Adaptive Gauss-Kronrod (15 points) on [a, b], split at the given interior breakpoints.
/// `tol` is relative to the L1 norm of the integrand.
QuadEstimate adaptive_integrate(const std::function<double(double)>& f, double a, double b, double tol,
                                const std::vector<double>& breakpoints = {}, unsigned max_depth = 15);

/// Double-exponential rule; tolerates integrable endpoint singularities.
QuadEstimate endpoint_singular_integrate(const std::function<double(double)>& f, double a, double b, double tol);

/// Sorted unique breakpoints from `points` that lie strictly inside (a, b), bracketed by a and b.
std::vector<double> partition(double a, double b, std::vector<double> points);

}  // namespace polyxray
