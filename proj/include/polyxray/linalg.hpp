#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "polyxray/polynomial.hpp"
#include "polyxray/rational.hpp"

namespace polyxray {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

/// Exact determinant by fraction-free (Bareiss) elimination.
Rational determinant(const RationalMatrix& m);

/// Determinant of a matrix of polynomials (cofactor expansion memoized over column subsets).
Polynomial determinant(const Matrix<Polynomial>& m);

/// Exact inverse; throws std::domain_error when singular.
RationalMatrix inverse(const RationalMatrix& m);

std::vector<Rational> multiply(const RationalMatrix& m, const std::vector<Rational>& v);

}  // namespace polyxray
