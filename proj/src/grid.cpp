#include "polyxray/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polyxray/quadrature.hpp"

namespace polyxray {

namespace {

std::vector<long> cell_strides(const std::vector<int>& cells) {
  std::vector<long> cs(cells.size());
  long acc = 1;
  for (std::size_t i = cells.size(); i-- > 0;) {
    cs[i] = acc;
    acc *= cells[i];
  }
  return cs;
}

}  // namespace

GridFunction::GridFunction(std::vector<double> lo, std::vector<double> hi, std::vector<int> cells, GridMode mode,
                           std::vector<double> values)
    : lo_(std::move(lo)), hi_(std::move(hi)), cells_(std::move(cells)), mode_(mode), values_(std::move(values)) {
  const std::size_t d = lo_.size();
  if (d == 0 || hi_.size() != d || cells_.size() != d) throw std::invalid_argument("grid: dimension mismatch");
  std::size_t expected = 1;
  stride_.assign(d, 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (cells_[i] < 2) throw std::invalid_argument("grid: resolution must be at least 2 per axis");
    if (!(hi_[i] > lo_[i])) throw std::invalid_argument("grid: empty box");
    h_.push_back((hi_[i] - lo_[i]) / cells_[i]);
    expected *= static_cast<std::size_t>(cells_[i] + (mode_ == GridMode::Multilinear ? 1 : 0));
  }
  if (values_.size() != expected) throw std::invalid_argument("grid: wrong number of values");
  long acc = 1;
  for (std::size_t i = d; i-- > 0;) {
    stride_[i] = acc;
    acc *= cells_[i] + (mode_ == GridMode::Multilinear ? 1 : 0);
  }
  const auto cs = cell_strides(cells_);
  const long ncell = cs[0] * cells_[0];
  for (long c = 0; c < ncell; ++c) {
    if (mode_ == GridMode::Constant) {
      if (values_[static_cast<std::size_t>(c)] != 0) support_.push_back(c);
      continue;
    }
    long base = 0, rem = c;
    for (std::size_t i = 0; i < d; ++i) {
      base += (rem / cs[i]) * stride_[i];
      rem %= cs[i];
    }
    bool nz = false;
    for (unsigned m = 0; m < (1u << d) && !nz; ++m) {
      long off = base;
      for (std::size_t i = 0; i < d; ++i)
        if (m & (1u << i)) off += stride_[i];
      nz = values_[static_cast<std::size_t>(off)] != 0;
    }
    if (nz) support_.push_back(c);
  }
}

GridFunction GridFunction::sample(std::vector<double> lo, std::vector<double> hi, std::vector<int> cells,
                                  GridMode mode, const std::function<double(const std::vector<double>&)>& fn) {
  const std::size_t d = lo.size();
  std::vector<int> counts(d);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    counts[i] = cells.at(i) + (mode == GridMode::Multilinear ? 1 : 0);
    total *= static_cast<std::size_t>(counts[i]);
  }
  std::vector<double> vals(total), p(d);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t i = d; i-- > 0;) {
      const std::size_t k = rem % static_cast<std::size_t>(counts[i]);
      rem /= static_cast<std::size_t>(counts[i]);
      const double h = (hi[i] - lo[i]) / cells[i];
      p[i] = lo[i] + h * (static_cast<double>(k) + (mode == GridMode::Constant ? 0.5 : 0.0));
    }
    vals[idx] = fn(p);
  }
  return GridFunction(std::move(lo), std::move(hi), std::move(cells), mode, std::move(vals));
}

double GridFunction::operator()(const double* p) const {
  const std::size_t d = lo_.size();
  long base = 0;
  double frac[16];
  for (std::size_t i = 0; i < d; ++i) {
    if (p[i] < lo_[i] || p[i] > hi_[i]) return 0.0;
    double u = (p[i] - lo_[i]) / h_[i];
    long k = std::min(static_cast<long>(u), static_cast<long>(cells_[i] - 1));
    frac[i] = u - static_cast<double>(k);
    base += k * stride_[i];
  }
  if (mode_ == GridMode::Constant) return values_[static_cast<std::size_t>(base)];
  double acc = 0;
  for (unsigned m = 0; m < (1u << d); ++m) {
    double w = 1;
    long off = base;
    for (std::size_t i = 0; i < d; ++i) {
      if (m & (1u << i)) {
        w *= frac[i];
        off += stride_[i];
      } else {
        w *= 1 - frac[i];
      }
    }
    if (w != 0) acc += w * values_[static_cast<std::size_t>(off)];
  }
  return acc;
}

double GridFunction::line_integral(const double* o, const double* v) const {
  const std::size_t d = lo_.size();
  double a = -std::numeric_limits<double>::infinity(), b = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d; ++i) {
    if (v[i] == 0) {
      if (o[i] < lo_[i] || o[i] > hi_[i]) return 0.0;
      continue;
    }
    double s1 = (lo_[i] - o[i]) / v[i], s2 = (hi_[i] - o[i]) / v[i];
    if (s1 > s2) std::swap(s1, s2);
    a = std::max(a, s1);
    b = std::min(b, s2);
  }
  if (!(b > a)) return 0.0;
  thread_local std::vector<double> cuts;
  cuts.clear();
  cuts.push_back(a);
  cuts.push_back(b);
  for (std::size_t i = 0; i < d; ++i) {
    if (v[i] == 0) continue;
    double c1 = o[i] + a * v[i], c2 = o[i] + b * v[i];
    if (c1 > c2) std::swap(c1, c2);
    long k1 = static_cast<long>(std::ceil((c1 - lo_[i]) / h_[i]));
    long k2 = static_cast<long>(std::floor((c2 - lo_[i]) / h_[i]));
    k1 = std::max(k1, 1L);
    k2 = std::min(k2, static_cast<long>(cells_[i] - 1));
    for (long k = k1; k <= k2; ++k) {
      double s = (lo_[i] + static_cast<double>(k) * h_[i] - o[i]) / v[i];
      if (s > a && s < b) cuts.push_back(s);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double acc = 0;
  double p[16];
  const GaussRule& rule = gauss_rule(static_cast<int>(d) / 2 + 1);
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double s0 = cuts[j], s1 = cuts[j + 1];
    if (!(s1 > s0)) continue;
    const double m = 0.5 * (s0 + s1), h = 0.5 * (s1 - s0);
    if (mode_ == GridMode::Constant) {
      for (std::size_t i = 0; i < d; ++i) p[i] = o[i] + m * v[i];
      acc += (s1 - s0) * (*this)(p);
      continue;
    }
    double seg = 0;
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
      const double s = m + h * rule.nodes[g];
      for (std::size_t i = 0; i < d; ++i) p[i] = o[i] + s * v[i];
      seg += rule.weights[g] * (*this)(p);
    }
    acc += h * seg;
  }
  return acc;
}

std::vector<double> GridFunction::cell_lo(long index) const {
  const auto cs = cell_strides(cells_);
  std::vector<double> out(lo_.size());
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    out[i] = lo_[i] + h_[i] * static_cast<double>(index / cs[i]);
    index %= cs[i];
  }
  return out;
}

double GridFunction::lp_norm(double p) const {
  const std::size_t d = lo_.size();
  if (std::isinf(p)) {
    double m = 0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
  }
  if (!(p > 0)) throw std::invalid_argument("lp_norm: p must be positive");
  double vol = 1;
  for (double h : h_) vol *= h;
  double acc = 0;
  if (mode_ == GridMode::Constant) {
    for (double v : values_) acc += std::pow(std::fabs(v), p);
    return std::pow(acc * vol, 1 / p);
  }
  const GaussRule& rule = gauss_rule(3);
  const std::size_t nq = rule.nodes.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= nq;
  std::vector<double> pt(d);
  for (long c : support_) {
    const auto base = cell_lo(c);
    for (std::size_t q = 0; q < total; ++q) {
      std::size_t rem = q;
      double w = vol;
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t g = rem % nq;
        rem /= nq;
        pt[i] = base[i] + h_[i] * 0.5 * (1 + rule.nodes[g]);
        w *= 0.5 * rule.weights[g];
      }
      acc += w * std::pow(std::fabs((*this)(pt.data())), p);
    }
  }
  return std::pow(acc, 1 / p);
}

}  // namespace polyxray

namespace polyxray {

double smooth_bump(const std::vector<double>& x, const std::vector<double>& center, double radius) {
  double r2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) r2 += (x[i] - center[i]) * (x[i] - center[i]);
  r2 /= radius * radius;
  return r2 < 1 ? (1 - r2) * (1 - r2) * (1 - r2) : 0.0;
}

GridFunction bump_grid(std::vector<double> lo, std::vector<double> hi, std::vector<int> cells,
                       const std::vector<double>& center, double radius) {
  if (center.size() != lo.size() || !(radius > 0)) throw std::invalid_argument("bump_grid: bad center or radius");
  return GridFunction::sample(std::move(lo), std::move(hi), std::move(cells), GridMode::Multilinear,
                              [&](const std::vector<double>& x) { return smooth_bump(x, center, radius); });
}

}  // namespace polyxray
