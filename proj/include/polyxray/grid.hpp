#pragma once

#include <functional>
#include <vector>

namespace polyxray {

enum class GridMode { Constant, Multilinear };

/// Function on a box in R^d given by cell values (Constant) or node values (Multilinear); zero outside.
/// Values are row-major with axis 0 slowest.
class GridFunction {
 public:
  GridFunction(std::vector<double> lo, std::vector<double> hi, std::vector<int> cells, GridMode mode,
               std::vector<double> values);

  static GridFunction sample(std::vector<double> lo, std::vector<double> hi, std::vector<int> cells, GridMode mode,
                             const std::function<double(const std::vector<double>&)>& fn);

  int dim() const { return static_cast<int>(lo_.size()); }
  GridMode mode() const { return mode_; }
  const std::vector<double>& lo() const { return lo_; }
  const std::vector<double>& hi() const { return hi_; }
  const std::vector<int>& cells() const { return cells_; }
  const std::vector<double>& values() const { return values_; }
  double cell_width(int axis) const { return h_[static_cast<std::size_t>(axis)]; }

  double operator()(const double* p) const;
  double operator()(const std::vector<double>& p) const { return (*this)(p.data()); }

  /// Integral of f(o + tau v) d tau over the real line; exact up to rounding.
  double line_integral(const double* origin, const double* direction) const;

  /// L^p norm (p = inf gives the sup); exact for Constant, tensor Gauss per cell otherwise.
  double lp_norm(double p) const;

  /// Linear indices of cells on which f is not identically zero.
  const std::vector<long>& support_cells() const { return support_; }
  /// Lower corner of cell `index`.
  std::vector<double> cell_lo(long index) const;

 private:
  std::vector<double> lo_, hi_, h_;
  std::vector<int> cells_;
  GridMode mode_;
  std::vector<double> values_;
  std::vector<long> stride_;  // node strides for Multilinear, cell strides for Constant
  std::vector<long> support_;
};

/// (1 - |x - center|^2 / radius^2)^3 inside the ball, zero outside; C^2 across the boundary.
double smooth_bump(const std::vector<double>& x, const std::vector<double>& center, double radius);

/// Multilinear interpolant of smooth_bump on a uniform grid.
GridFunction bump_grid(std::vector<double> lo, std::vector<double> hi, std::vector<int> cells,
                       const std::vector<double>& center, double radius);

}  // namespace polyxray
