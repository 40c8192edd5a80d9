#include "polyxray/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyxray {

Box::Box(std::vector<Rational> vertex, RationalMatrix edges) : vertex_(std::move(vertex)), edges_(std::move(edges)) {
  const std::size_t d = vertex_.size();
  if (edges_.rows() != d || edges_.cols() != d) throw std::invalid_argument("edge matrix must be d x d");
  volume_ = abs(determinant(edges_));
  if (volume_ == 0) throw std::invalid_argument("degenerate box");
  inverse_ = polyxray::inverse(edges_);
  vertex_d_.resize(static_cast<Eigen::Index>(d));
  edges_d_.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  inverse_d_.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    vertex_d_(static_cast<Eigen::Index>(i)) = vertex_[i].get_d();
    for (std::size_t j = 0; j < d; ++j) {
      edges_d_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = edges_(i, j).get_d();
      inverse_d_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = inverse_(i, j).get_d();
    }
  }
  // Axis-aligned: each column has exactly one nonzero, in distinct rows.
  std::vector<int> row_of(d, -1);
  bool aligned = true;
  for (std::size_t j = 0; j < d && aligned; ++j) {
    int nz = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (edges_(i, j) != 0) {
        ++nz;
        row_of[j] = static_cast<int>(i);
      }
    aligned = nz == 1;
  }
  if (aligned) {
    lo_ = vertex_;
    hi_ = vertex_;
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t i = static_cast<std::size_t>(row_of[j]);
      const Rational& e = edges_(i, j);
      if (e > 0)
        hi_[i] += e;
      else
        lo_[i] += e;
    }
  }
  axis_aligned_ = aligned;
}

Box Box::axis_aligned(const std::vector<Rational>& lo, const std::vector<Rational>& hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("corner dimension mismatch");
  RationalMatrix e(lo.size(), lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw std::invalid_argument("box corners must satisfy lo < hi");
    e(i, i) = hi[i] - lo[i];
  }
  return Box(lo, e);
}

std::vector<double> Box::lo_d() const {
  std::vector<double> v;
  for (const auto& x : lo_) v.push_back(x.get_d());
  return v;
}

std::vector<double> Box::hi_d() const {
  std::vector<double> v;
  for (const auto& x : hi_) v.push_back(x.get_d());
  return v;
}

std::vector<Rational> Box::local(const std::vector<Rational>& p) const {
  std::vector<Rational> diff(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) diff[i] = p[i] - vertex_[i];
  return multiply(inverse_, diff);
}

bool Box::contains(const std::vector<Rational>& p, bool closed) const {
  if (static_cast<int>(p.size()) != dim()) throw std::invalid_argument("point dimension mismatch");
  for (const auto& u : local(p)) {
    if (closed ? (u < 0 || u > 1) : (u <= 0 || u >= 1)) return false;
  }
  return true;
}

std::pair<double, double> Box::first_range() const {
  double lo = vertex_d_(0), hi = vertex_d_(0);
  for (Eigen::Index j = 0; j < edges_d_.cols(); ++j) {
    double e = edges_d_(0, j);
    if (e > 0)
      hi += e;
    else
      lo += e;
  }
  return {lo, hi};
}

bool BoxSet::all_axis_aligned() const {
  return std::all_of(boxes.begin(), boxes.end(), [](const Box& b) { return b.is_axis_aligned(); });
}

Rational BoxSet::volume() const {
  Rational v(0);
  for (const auto& b : boxes) v += b.volume();
  return v;
}

bool BoxSet::contains(const std::vector<Rational>& p, bool closed) const {
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(p, closed); });
}

bool BoxSet::disjoint_axis_aligned() const {
  if (!all_axis_aligned()) throw std::invalid_argument("disjointness is only checked for axis-aligned sets");
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      bool overlap = true;
      for (int k = 0; k < boxes[i].dim() && overlap; ++k)
        overlap = boxes[i].lo()[k] < boxes[j].hi()[k] && boxes[j].lo()[k] < boxes[i].hi()[k];
      if (overlap) return false;
    }
  return true;
}

bool is_t_cylindrical(const Box& box) {
  const auto& e = box.edges();
  int t_cols = 0;
  for (std::size_t j = 0; j < e.cols(); ++j) {
    if (e(0, j) == 0) continue;
    ++t_cols;
    for (std::size_t i = 1; i < e.rows(); ++i)
      if (e(i, j) != 0) return false;
  }
  return t_cols == 1;
}

namespace {

// Nonzero first-row edge components, made positive, and the resulting shift of the start.
std::pair<std::vector<double>, double> first_row_profile(const Box& box) {
  std::vector<double> a;
  double start = box.vertex_d()(0);
  for (Eigen::Index j = 0; j < box.edges_d().cols(); ++j) {
    double e = box.edges_d()(0, j);
    if (e == 0) continue;
    if (e < 0) start += e;
    a.push_back(std::fabs(e));
  }
  return {a, start};
}

}  // namespace

double slice_measure(const Box& box, double t) {
  const auto [a, start] = first_row_profile(box);
  const double x = t - start;
  const std::size_t k = a.size();
  double total = 0;
  for (double v : a) total += v;
  if (x <= 0 || x >= total) return 0.0;
  const double vol = box.volume().get_d();
  if (k == 1) return vol / a[0];
  // Density of sum a_i U_i: sum_S (-1)^{|S|} (x - sum_S a)_+^{k-1} / ((k-1)! prod a).
  double prod = 1, fact = 1;
  for (std::size_t i = 0; i < k; ++i) prod *= a[i];
  for (std::size_t i = 2; i < k; ++i) fact *= static_cast<double>(i);
  double acc = 0;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    double shift = 0;
    int bits = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) {
        shift += a[i];
        ++bits;
      }
    double y = x - shift;
    if (y > 0) acc += (bits % 2 ? -1.0 : 1.0) * std::pow(y, static_cast<double>(k - 1));
  }
  return vol * acc / (fact * prod);
}

std::vector<double> slice_breakpoints(const Box& box) {
  const auto [a, start] = first_row_profile(box);
  std::vector<double> pts;
  for (unsigned mask = 0; mask < (1u << a.size()); ++mask) {
    double shift = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (mask & (1u << i)) shift += a[i];
    pts.push_back(start + shift);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Box shear_image(const Box& box, const RationalMatrix& m, const std::vector<Rational>& c) {
  const std::size_t d = static_cast<std::size_t>(box.dim());
  // full map G = [[1, 0], [c, m]]
  RationalMatrix g(d, d);
  g(0, 0) = 1;
  for (std::size_t i = 1; i < d; ++i) {
    g(i, 0) = c[i - 1];
    for (std::size_t j = 1; j < d; ++j) g(i, j) = m(i - 1, j - 1);
  }
  RationalMatrix e(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) e(i, j) += g(i, k) * box.edges()(k, j);
  return Box(multiply(g, box.vertex()), e);
}

}  // namespace polyxray
