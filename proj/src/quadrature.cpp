#include "polyxray/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/legendre.hpp>

namespace polyxray {

const GaussRule& gauss_rule(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("gauss_rule: 1 <= n <= 64");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  for (double z : boost::math::legendre_p_zeros<double>(n)) {
    double dp = boost::math::legendre_p_prime(n, z);
    double w = 2.0 / ((1 - z * z) * dp * dp);
    rule.nodes.push_back(z);
    rule.weights.push_back(w);
    if (z != 0) {
      rule.nodes.push_back(-z);
      rule.weights.push_back(w);
    }
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussRule& r = gauss_rule(n);
  const double h = 0.5 * (b - a), m = 0.5 * (a + b);
  double acc = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * f(m + h * r.nodes[i]);
  return acc * h;
}

std::vector<double> partition(double a, double b, std::vector<double> points) {
  std::vector<double> out{a};
  std::sort(points.begin(), points.end());
  for (double p : points)
    if (p > a && p < b && p > out.back()) out.push_back(p);
  out.push_back(b);
  return out;
}

QuadEstimate adaptive_integrate(const std::function<double(double)>& f, double a, double b, double tol,
                                const std::vector<double>& breakpoints, unsigned max_depth) {
  QuadEstimate est;
  if (!(b > a)) return est;
  auto counted = [&](double t) {
    ++est.evaluations;
    return f(t);
  };
  const auto pts = partition(a, b, breakpoints);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0, l1 = 0;
    est.value += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(counted, pts[i], pts[i + 1], max_depth,
                                                                              tol, &err, &l1);
    est.error += err * 0.5 * (pts[i + 1] - pts[i]);
  }
  return est;
}

QuadEstimate endpoint_singular_integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  QuadEstimate est;
  if (!(b > a)) return est;
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  auto counted = [&](double t) {
    ++est.evaluations;
    return f(t);
  };
  double err = 0, l1 = 0;
  est.value = rule.integrate(counted, a, b, tol, &err, &l1);
  est.error = err;
  return est;
}

}  // namespace polyxray
