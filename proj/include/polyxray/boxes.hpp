#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "polyxray/linalg.hpp"
#include "polyxray/rational.hpp"

namespace polyxray {

/// Parallelepiped {vertex + edges * u : u in [0,1]^d}. Exact rational data with double caches.
class Box {
 public:
  Box(std::vector<Rational> vertex, RationalMatrix edges);
  static Box axis_aligned(const std::vector<Rational>& lo, const std::vector<Rational>& hi);

  int dim() const { return static_cast<int>(vertex_.size()); }
  const std::vector<Rational>& vertex() const { return vertex_; }
  const RationalMatrix& edges() const { return edges_; }
  const Eigen::VectorXd& vertex_d() const { return vertex_d_; }
  const Eigen::MatrixXd& edges_d() const { return edges_d_; }
  const Eigen::MatrixXd& inverse_d() const { return inverse_d_; }
  const RationalMatrix& inverse() const { return inverse_; }

  Rational volume() const { return volume_; }
  /// Edge matrix diagonal (after the canonical reordering done at construction).
  bool is_axis_aligned() const { return axis_aligned_; }
  /// Lower / upper corner; valid when axis-aligned.
  const std::vector<Rational>& lo() const { return lo_; }
  const std::vector<Rational>& hi() const { return hi_; }
  std::vector<double> lo_d() const;
  std::vector<double> hi_d() const;

  /// Exact membership; `closed` selects [0,1]^d versus (0,1)^d in edge coordinates.
  bool contains(const std::vector<Rational>& p, bool closed = true) const;
  /// Edge coordinates u = edges^{-1} (p - vertex).
  std::vector<Rational> local(const std::vector<Rational>& p) const;

  /// Range of the first coordinate over the box.
  std::pair<double, double> first_range() const;

 private:
  std::vector<Rational> vertex_;
  RationalMatrix edges_, inverse_;
  Eigen::VectorXd vertex_d_;
  Eigen::MatrixXd edges_d_, inverse_d_;
  Rational volume_;
  bool axis_aligned_ = false;
  std::vector<Rational> lo_, hi_;
};

/// Finite union of boxes with pairwise disjoint interiors.
struct BoxSet {
  std::vector<Box> boxes;

  int dim() const { return boxes.empty() ? 0 : boxes.front().dim(); }
  bool empty() const { return boxes.empty(); }
  bool all_axis_aligned() const;
  Rational volume() const;
  bool contains(const std::vector<Rational>& p, bool closed = true) const;
  /// Exact pairwise interior-disjointness check for axis-aligned sets; throws otherwise.
  bool disjoint_axis_aligned() const;
};

/// |{ (t, y) : t fixed }| slice measure of one box (box-spline formula, exact in doubles up to rounding).
double slice_measure(const Box& box, double t);
/// Breakpoints of the slice measure in t (sorted, unique).
std::vector<double> slice_breakpoints(const Box& box);
/// True when the first edge component is carried by one column with zero y-part.
bool is_t_cylindrical(const Box& box);

/// Image of a box under (s, x) -> (s, m x + s c) (linear in x, shear in s).
Box shear_image(const Box& box, const RationalMatrix& m, const std::vector<Rational>& c);

}  // namespace polyxray
