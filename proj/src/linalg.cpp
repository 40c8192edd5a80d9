#include "polyxray/linalg.hpp"

#include <unordered_map>

namespace polyxray {

Rational determinant(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return Rational(1);
  // Clear denominators row by row, then Bareiss over the integers.
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  Rational scale(1);
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    scale /= Rational(l);
  }
  int sign_flips = 0;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return Rational(0);
      std::swap(a[k], a[p]);
      ++sign_flips;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rational det(a[n - 1][n - 1]);
  if (sign_flips % 2) det = -det;
  det *= scale;
  det.canonicalize();
  return det;
}

Polynomial determinant(const Matrix<Polynomial>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return Polynomial::constant(1);
  if (n > 20) throw std::invalid_argument("polynomial determinant too large");
  // memo[mask] = det of rows [n-popcount(mask), n) restricted to the columns in mask.
  std::unordered_map<unsigned, Polynomial> memo;
  auto rec = [&](auto&& self, std::size_t row, unsigned mask) -> Polynomial {
    if (row == n) return Polynomial::constant(1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    Polynomial acc;
    int sgn = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      if (!m(row, c).is_zero()) {
        Polynomial term = m(row, c) * self(self, row + 1, mask & ~(1u << c));
        if (sgn > 0)
          acc += term;
        else
          acc -= term;
      }
      sgn = -sgn;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(rec, 0, (n == 32 ? ~0u : ((1u << n) - 1u)));
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    Rational piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

std::vector<Rational> multiply(const RationalMatrix& m, const std::vector<Rational>& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("dimension mismatch");
  std::vector<Rational> out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace polyxray
