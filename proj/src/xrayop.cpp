#include "polyxray/xrayop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <mpfr.h>

#include "polyxray/parallel.hpp"
#include "polyxray/roots.hpp"

namespace polyxray {

namespace {

double horner(const std::vector<double>& c, double t) {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<double> deriv(const std::vector<double>& c) {
  std::vector<double> out;
  for (std::size_t k = 1; k < c.size(); ++k) out.push_back(c[k] * static_cast<double>(k));
  return out;
}

struct CurveD {
  std::vector<std::vector<double>> comps;
  int degree = 0;

  explicit CurveD(const PolyCurve& curve) {
    for (const auto& p : curve.components()) {
      comps.push_back(p.coefficients_double());
      degree = std::max(degree, p.degree());
    }
  }
  void eval(double t, double* out) const {
    for (std::size_t k = 0; k < comps.size(); ++k) out[k] = horner(comps[k], t);
  }
  /// Range of component k over [a, b].
  std::pair<double, double> range(std::size_t k, double a, double b) const {
    double lo = std::min(horner(comps[k], a), horner(comps[k], b));
    double hi = std::max(horner(comps[k], a), horner(comps[k], b));
    for (double r : real_roots_in(deriv(comps[k]), a, b)) {
      double v = horner(comps[k], r);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return {lo, hi};
  }
};

void check_dims(const PolyCurve& curve, const BoxSet& set) {
  for (const auto& b : set.boxes)
    if (b.dim() != curve.ambient_dim()) throw std::invalid_argument("box dimension does not match the curve");
}

std::vector<double> uniform_breaks(double a, double b, int pieces) {
  std::vector<double> out;
  for (int i = 1; i < pieces; ++i) out.push_back(a + (b - a) * i / pieces);
  return out;
}

struct AlignedBox {
  std::vector<double> lo, hi;
};

std::vector<AlignedBox> aligned(const BoxSet& set) {
  std::vector<AlignedBox> out;
  for (const auto& b : set.boxes) out.push_back({b.lo_d(), b.hi_d()});
  return out;
}

// Measure of {s in E_s : y + s p in E_y, y in F_y} integrated over y, for fixed t (p = P(t)).
double inner_s(const AlignedBox& e, const AlignedBox& f, const double* p, int d) {
  double lo = e.lo[0], hi = e.hi[0];
  double cuts[64];
  int nc = 0;
  for (int k = 1; k < d; ++k) {
    const double pk = p[k - 1];
    const double a = e.lo[k], b = e.hi[k], c = f.lo[k], dd = f.hi[k];
    if (pk == 0) {
      if (!(a < dd && b > c)) return 0.0;
      continue;
    }
    double s1 = (a - dd) / pk, s2 = (b - c) / pk;
    if (s1 > s2) std::swap(s1, s2);
    lo = std::max(lo, s1);
    hi = std::min(hi, s2);
    cuts[nc++] = (b - dd) / pk;
    cuts[nc++] = (a - c) / pk;
  }
  if (!(hi > lo)) return 0.0;
  std::vector<double> pts{cuts, cuts + nc};
  const auto part = partition(lo, hi, pts);
  const GaussRule& rule = gauss_rule(d / 2 + 1);
  double acc = 0;
  for (std::size_t j = 0; j + 1 < part.size(); ++j) {
    const double m = 0.5 * (part[j] + part[j + 1]), h = 0.5 * (part[j + 1] - part[j]);
    double seg = 0;
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
      const double s = m + h * rule.nodes[g];
      double prod = 1;
      for (int k = 1; k < d && prod > 0; ++k) {
        const double sp = s * p[k - 1];
        prod *= std::max(0.0, std::min(f.hi[k], e.hi[k] - sp) - std::max(f.lo[k], e.lo[k] - sp));
      }
      seg += rule.weights[g] * prod;
    }
    acc += h * seg;
  }
  return acc;
}

QuadEstimate pairing_aligned(const CurveD& geo, const LineWeight& w, const std::vector<AlignedBox>& es,
                             const std::vector<AlignedBox>& fs, double tol, double scale) {
  const int d = static_cast<int>(geo.comps.size()) + 1;
  QuadEstimate total;
  for (const auto& f : fs) {
    auto g = [&](double t) {
      const double wt = w(t);
      if (wt == 0) return 0.0;
      double p[16];
      geo.eval(t, p);
      double acc = 0;
      for (const auto& e : es) acc += inner_s(e, f, p, d);
      return wt * acc;
    };
    auto breaks = uniform_breaks(f.lo[0], f.hi[0], 8);
    breaks.insert(breaks.end(), w.singular_points().begin(), w.singular_points().end());
    auto q = adaptive_integrate(g, f.lo[0], f.hi[0], tol, breaks);
    total.value += q.value;
    total.error += q.error;
    total.evaluations += q.evaluations;
  }
  total.value *= scale;
  total.error *= scale;
  return total;
}

// Integral over t in F_t of w(t) * prod_k overlap_k(s, t) for fixed s.
double inner_t(const CurveD& geo, const LineWeight& w, const AlignedBox& e, const AlignedBox& f, double s, double tol) {
  const int d = static_cast<int>(geo.comps.size()) + 1;
  std::vector<double> breaks = w.singular_points();
  if (s != 0) {
    for (int k = 1; k < d; ++k) {
      for (double cst : {e.hi[k] - f.hi[k], e.hi[k] - f.lo[k], e.lo[k] - f.lo[k], e.lo[k] - f.hi[k]}) {
        std::vector<double> c = geo.comps[static_cast<std::size_t>(k - 1)];
        for (double& x : c) x *= s;
        if (c.empty()) c.push_back(0.0);
        c[0] -= cst;
        for (double r : real_roots_in(c, f.lo[0], f.hi[0])) breaks.push_back(r);
      }
    }
  }
  auto integrand = [&](double t) {
    double p[16];
    geo.eval(t, p);
    double prod = 1;
    for (int k = 1; k < d && prod > 0; ++k) {
      const double sp = s * p[k - 1];
      prod *= std::max(0.0, std::min(f.hi[k], e.hi[k] - sp) - std::max(f.lo[k], e.lo[k] - sp));
    }
    return prod;
  };
  const auto part = partition(f.lo[0], f.hi[0], breaks);
  const int n = ((d - 1) * geo.degree) / 2 + 1;
  double acc = 0;
  for (std::size_t j = 0; j + 1 < part.size(); ++j) {
    const double a = part[j], b = part[j + 1];
    if (integrand(0.5 * (a + b)) <= 0) continue;
    if (w.is_constant()) {
      acc += w(0.5 * (a + b)) * gauss_integrate(integrand, a, b, n);
    } else {
      acc += adaptive_integrate([&](double t) { return w(t) * integrand(t); }, a, b, tol).value;
    }
  }
  return acc;
}

QuadEstimate adjoint_aligned(const CurveD& geo, const LineWeight& w, const std::vector<AlignedBox>& es,
                             const std::vector<AlignedBox>& fs, double tol, double scale) {
  QuadEstimate total;
  for (const auto& e : es) {
    auto h = [&](double s) {
      double acc = 0;
      for (const auto& f : fs) acc += inner_t(geo, w, e, f, s, tol);
      return acc;
    };
    auto q = adaptive_integrate(h, e.lo[0], e.hi[0], tol, uniform_breaks(e.lo[0], e.hi[0], 8));
    total.value += q.value;
    total.error += q.error;
    total.evaluations += q.evaluations;
  }
  total.value *= scale;
  total.error *= scale;
  return total;
}

struct Frame {
  RationalMatrix m_inv;
  std::vector<Rational> shift;  // -m^{-1} c
  Rational det;
  BoxSet e, f;
};

// Common frame (t-cylindrical F; E sheared along (1, c)) in which every box is axis-aligned.
std::optional<Frame> find_frame(const BoxSet& e, const BoxSet& f) {
  const Box& f0 = f.boxes.front();
  if (!is_t_cylindrical(f0)) return std::nullopt;
  const std::size_t d = static_cast<std::size_t>(f0.dim());
  RationalMatrix m(d - 1, d - 1);
  std::size_t col = 0;
  for (std::size_t j = 0; j < d; ++j) {
    if (f0.edges()(0, j) != 0) continue;
    for (std::size_t i = 1; i < d; ++i) m(i - 1, col) = f0.edges()(i, j);
    ++col;
  }
  const Box& e0 = e.boxes.front();
  std::vector<Rational> c(d - 1);
  for (std::size_t j = 0; j < d; ++j) {
    if (e0.edges()(0, j) == 0) continue;
    for (std::size_t i = 1; i < d; ++i) c[i - 1] = e0.edges()(i, j) / e0.edges()(0, j);
    break;
  }
  Frame fr;
  fr.det = abs(determinant(m));
  if (fr.det == 0) return std::nullopt;
  fr.m_inv = inverse(m);
  fr.shift = multiply(fr.m_inv, c);
  for (auto& x : fr.shift) x = -x;
  std::vector<Rational> zero(d - 1);
  for (const auto& b : e.boxes) {
    Box img = shear_image(b, fr.m_inv, fr.shift);
    if (!img.is_axis_aligned()) return std::nullopt;
    fr.e.boxes.push_back(std::move(img));
  }
  for (const auto& b : f.boxes) {
    Box img = shear_image(b, fr.m_inv, zero);
    if (!img.is_axis_aligned()) return std::nullopt;
    fr.f.boxes.push_back(std::move(img));
  }
  return fr;
}

// Nested adaptive integration over [0,1]^dim.
QuadEstimate integrate_cube(int dim, const std::function<double(const std::vector<double>&)>& fn, double tol) {
  std::vector<double> u(static_cast<std::size_t>(dim));
  QuadEstimate est;
  std::function<double(int)> level = [&](int k) -> double {
    if (k == dim) {
      ++est.evaluations;
      return fn(u);
    }
    auto q = adaptive_integrate(
        [&](double x) {
          u[static_cast<std::size_t>(k)] = x;
          return level(k + 1);
        },
        0.0, 1.0, tol, {}, 6);
    if (k == 0) est.error = q.error;
    return q.value;
  };
  est.value = level(0);
  return est;
}

class AdjointGridEvaluator {
 public:
  AdjointGridEvaluator(const PolyCurve& curve, const LineWeight& w, const GridFunction& g)
      : geo_(curve), w_(w), g_(g) {
    ta_ = g.lo()[0];
    tb_ = g.hi()[0];
    for (const auto& c : geo_.comps) {
      crit_.push_back(partition(ta_, tb_, real_roots_in(deriv(c), ta_, tb_)));
    }
    int deg = 1;
    for (const auto& c : geo_.comps) deg += std::max(0, static_cast<int>(c.size()) - 1);
    n_gauss_ = deg / 2 + 1 + (w.is_constant() ? 0 : 3);
    for (int k = 1; k < g.cells()[0]; ++k) base_cuts_.push_back(ta_ + k * g.cell_width(0));
    for (double sp : w.singular_points())
      if (sp > ta_ && sp < tb_) base_cuts_.push_back(sp);
  }

  double operator()(double s, const double* x) const {
    const int d = g_.dim();
    thread_local std::vector<double> cuts;
    cuts = base_cuts_;
    for (int k = 1; k < d; ++k) {
      const auto& c = geo_.comps[static_cast<std::size_t>(k - 1)];
      const double lo_k = g_.lo()[static_cast<std::size_t>(k)], h_k = g_.cell_width(k);
      const int n_k = g_.cells()[static_cast<std::size_t>(k)];
      if (s == 0) {
        if (x[k] < lo_k || x[k] > g_.hi()[static_cast<std::size_t>(k)]) return 0.0;
        continue;
      }
      const auto& pieces = crit_[static_cast<std::size_t>(k - 1)];
      for (std::size_t j = 0; j + 1 < pieces.size(); ++j) {
        const double u = pieces[j], v = pieces[j + 1];
        const double zu = x[k] - s * horner(c, u), zv = x[k] - s * horner(c, v);
        const double zlo = std::min(zu, zv), zhi = std::max(zu, zv);
        long j1 = static_cast<long>(std::ceil((zlo - lo_k) / h_k));
        long j2 = static_cast<long>(std::floor((zhi - lo_k) / h_k));
        j1 = std::max(j1, 0L);
        j2 = std::min(j2, static_cast<long>(n_k));
        for (long jj = j1; jj <= j2; ++jj) {
          const double plane = lo_k + static_cast<double>(jj) * h_k;
          if (plane <= zlo || plane >= zhi) continue;
          cuts.push_back(solve(c, s, x[k] - plane, u, v, zu - plane));
        }
      }
    }
    std::sort(cuts.begin(), cuts.end());
    const GaussRule& rule = gauss_rule(n_gauss_);
    double pt[16];
    double acc = 0;
    double prev = ta_;
    auto segment = [&](double a, double b) {
      if (!(b > a)) return;
      const double m = 0.5 * (a + b), h = 0.5 * (b - a);
      pt[0] = m;
      for (int k = 1; k < d; ++k) pt[k] = x[k] - s * horner(geo_.comps[static_cast<std::size_t>(k - 1)], m);
      const double mid_value = g_(pt);
      if (g_.mode() == GridMode::Constant) {
        if (mid_value != 0) acc += mid_value * w_.measure(a, b).value;
        return;
      }
      double seg = 0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = m + h * rule.nodes[q];
        pt[0] = t;
        for (int k = 1; k < d; ++k) pt[k] = x[k] - s * horner(geo_.comps[static_cast<std::size_t>(k - 1)], t);
        seg += rule.weights[q] * w_(t) * g_(pt);
      }
      acc += h * seg;
    };
    for (double c : cuts) {
      if (c <= prev || c >= tb_) continue;
      segment(prev, c);
      prev = c;
    }
    segment(prev, tb_);
    return acc;
  }

 private:
  // Root of r(t) = rhs - s P_k(t) on [u, v], where r is monotone and r(u) = ru.
  static double solve(const std::vector<double>& c, double s, double rhs, double u, double v, double ru) {
    auto r = [&](double t) { return rhs - s * horner(c, t); };
    double a = u, b = v;
    const bool increasing = ru < 0;
    double t = 0.5 * (a + b);
    const auto dc = deriv(c);
    for (int it = 0; it < 100; ++it) {
      const double val = r(t);
      if (val == 0) return t;
      if ((val < 0) == increasing)
        a = t;
      else
        b = t;
      const double slope = -s * horner(dc, t);
      double next = slope != 0 ? t - val / slope : 0.5 * (a + b);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      if (std::fabs(next - t) <= 1e-15 * std::max(1.0, std::fabs(t)) || b - a <= 1e-15 * std::max(1.0, std::fabs(t)))
        return next;
      t = next;
    }
    return t;
  }

  CurveD geo_;
  const LineWeight& w_;
  const GridFunction& g_;
  double ta_, tb_;
  std::vector<std::vector<double>> crit_;
  std::vector<double> base_cuts_;
  int n_gauss_ = 2;
};

// Tensor Gauss over the support cells of a grid function.
template <class Fn>
double support_quadrature(const GridFunction& grid, int order, Fn&& fn) {
  const int d = grid.dim();
  const GaussRule& rule = gauss_rule(order);
  const std::size_t nq = rule.nodes.size();
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= nq;
  double vol = 1;
  for (int i = 0; i < d; ++i) vol *= grid.cell_width(i);
  const auto& cells = grid.support_cells();
  std::vector<double> partial(cells.size());
  parallel_for(cells.size(), [&](std::size_t ci) {
    const auto base = grid.cell_lo(cells[ci]);
    double pt[16];
    double acc = 0;
    for (std::size_t q = 0; q < total; ++q) {
      std::size_t rem = q;
      double wq = vol;
      for (int i = 0; i < d; ++i) {
        const std::size_t g = rem % nq;
        rem /= nq;
        pt[i] = base[static_cast<std::size_t>(i)] + grid.cell_width(i) * 0.5 * (1 + rule.nodes[g]);
        wq *= 0.5 * rule.weights[g];
      }
      acc += wq * fn(pt);
    }
    partial[ci] = acc;
  });
  double sum = 0;
  for (double v : partial) sum += v;
  return sum;
}

struct Mpfr {
  mpfr_t v;
  Mpfr() { mpfr_init2(v, 256); }
  explicit Mpfr(const Rational& q) : Mpfr() { mpfr_set_q(v, q.get_mpq_t(), MPFR_RNDN); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

// Exact slice profile of a union of t-cylindrical boxes: (length, slice measure) per piece.
std::vector<std::pair<Rational, Rational>> exact_slices(const BoxSet& f) {
  struct Span {
    Rational lo, hi, value;
  };
  std::vector<Span> spans;
  std::vector<Rational> pts;
  for (const auto& b : f.boxes) {
    for (std::size_t j = 0; j < b.edges().cols(); ++j) {
      const Rational& e = b.edges()(0, j);
      if (e == 0) continue;
      Rational lo = b.vertex()[0] + (e < 0 ? e : Rational(0));
      Rational hi = b.vertex()[0] + (e > 0 ? e : Rational(0));
      spans.push_back({lo, hi, b.volume() / abs(e)});
      pts.push_back(lo);
      pts.push_back(hi);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Rational m(0);
    for (const auto& s : spans)
      if (s.lo <= pts[i] && pts[i + 1] <= s.hi) m += s.value;
    if (m > 0) out.emplace_back(Rational(pts[i + 1] - pts[i]), m);
  }
  return out;
}

double weighted_pow(double base, double r) { return base == 0 ? 0.0 : std::pow(base, r); }

// Integral over the y-box of |wt * L(t, y)|^r, tensor Gauss with `cells` cells per axis.
double y_power_integral(const std::function<double(double, const double*)>& line, double t, double wt,
                        const std::vector<std::pair<double, double>>& ybox, double r, int cells) {
  const std::size_t dy = ybox.size();
  const GaussRule& rule = gauss_rule(2);
  const std::size_t nq = rule.nodes.size();
  const std::size_t per = static_cast<std::size_t>(cells) * nq;
  std::vector<double> hy(dy);
  double yvol = 1;
  for (std::size_t k = 0; k < dy; ++k) {
    hy[k] = (ybox[k].second - ybox[k].first) / cells;
    yvol *= hy[k];
  }
  std::size_t ny = 1;
  for (std::size_t k = 0; k < dy; ++k) ny *= per;
  double y[16];
  double acc = 0;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    std::size_t rem = iy;
    double wy = yvol;
    for (std::size_t k = 0; k < dy; ++k) {
      const std::size_t idx = rem % per;
      rem /= per;
      y[k] = ybox[k].first + hy[k] * (static_cast<double>(idx / nq) + 0.5 * (1 + rule.nodes[idx % nq]));
      wy *= 0.5 * rule.weights[idx % nq];
    }
    acc += wy * weighted_pow(std::fabs(wt * line(t, y)), r);
  }
  return acc;
}

// Mixed norm of w(t) * L(t, y) over a (t, y) box with tensor Gauss on `cells` cells per axis.
double xray_mixed_norm(const std::function<double(double, const double*)>& line, const LineWeight& w, double ta,
                       double tb, const std::vector<std::pair<double, double>>& ybox, double q, double r, int cells) {
  const GaussRule& rule = gauss_rule(2);
  const std::size_t nq = rule.nodes.size();
  const double ht = (tb - ta) / cells;
  const std::size_t nt = static_cast<std::size_t>(cells) * nq;
  std::vector<double> inner(nt), tw(nt);
  parallel_for(nt, [&](std::size_t it) {
    const double t = ta + ht * (static_cast<double>(it / nq) + 0.5 * (1 + rule.nodes[it % nq]));
    tw[it] = 0.5 * ht * rule.weights[it % nq];
    inner[it] = y_power_integral(line, t, w(t), ybox, r, cells);
  });
  if (std::isinf(q)) {
    double m = 0;
    for (double v : inner) m = std::max(m, weighted_pow(v, 1 / r));
    return m;
  }
  double acc = 0;
  for (std::size_t i = 0; i < nt; ++i) acc += tw[i] * weighted_pow(inner[i], q / r);
  return weighted_pow(acc, 1 / q);
}

std::pair<std::vector<double>, std::vector<double>> support_bbox(const GridFunction& f) {
  const int d = f.dim();
  std::vector<double> lo(static_cast<std::size_t>(d), std::numeric_limits<double>::infinity());
  std::vector<double> hi(static_cast<std::size_t>(d), -std::numeric_limits<double>::infinity());
  for (long c : f.support_cells()) {
    const auto base = f.cell_lo(c);
    for (int i = 0; i < d; ++i) {
      lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], base[static_cast<std::size_t>(i)]);
      hi[static_cast<std::size_t>(i)] =
          std::max(hi[static_cast<std::size_t>(i)], base[static_cast<std::size_t>(i)] + f.cell_width(i));
    }
  }
  if (f.support_cells().empty()) throw std::invalid_argument("grid function vanishes identically");
  // Multilinear support may reach one cell further.
  if (f.mode() == GridMode::Multilinear)
    for (int i = 0; i < d; ++i) {
      lo[static_cast<std::size_t>(i)] = std::max(f.lo()[static_cast<std::size_t>(i)], lo[static_cast<std::size_t>(i)]);
      hi[static_cast<std::size_t>(i)] = std::min(f.hi()[static_cast<std::size_t>(i)], hi[static_cast<std::size_t>(i)]);
    }
  return {lo, hi};
}

// y-range of {x - s P(t)} for (s, x) in [slo, shi] x box and t in [ta, tb].
std::vector<std::pair<double, double>> y_range(const CurveD& geo, const std::vector<double>& lo,
                                               const std::vector<double>& hi, double ta, double tb) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k < geo.comps.size(); ++k) {
    const auto [plo, phi] = geo.range(k, ta, tb);
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (double s : {lo[0], hi[0]})
      for (double p : {plo, phi}) {
        mn = std::min(mn, s * p);
        mx = std::max(mx, s * p);
      }
    out.emplace_back(lo[k + 1] - mx, hi[k + 1] - mn);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- LineWeight

LineWeight LineWeight::unit() { return LineWeight(); }

LineWeight LineWeight::torsion_power(const PolyCurve& curve, const Rational& theta) {
  WeightSpec spec(theta, curve.ambient_dim());
  if (theta == 0) return unit();
  return torsion_exponent(curve, spec.exponent().get_d());
}

LineWeight LineWeight::torsion_exponent(const PolyCurve& curve, double exponent) {
  if (!(exponent >= 0)) throw std::invalid_argument("torsion weight exponent must be nonnegative");
  if (exponent == 0) return unit();
  LineWeight w;
  w.kind_ = Kind::TorsionPower;
  w.exponent_ = exponent;
  const Polynomial l = torsion(curve);
  if (l.is_zero()) {
    w.constant_value_ = 0;
    return w;
  }
  if (l.degree() == 0) {
    w.constant_value_ = std::pow(std::fabs(l.coefficient(0).get_d()), w.exponent_);
    return w;
  }
  w.constant_ = false;
  w.torsion_coeffs_ = l.coefficients_double();
  for (const auto& root : isolate_real_roots(l))
    if (root.kind == RootDatum::Kind::Real) w.singular_.push_back(root.real.approx());
  return w;
}

LineWeight LineWeight::monomial(double alpha, double lo, double hi) {
  if (!(alpha > -1)) throw std::invalid_argument("monomial weight needs alpha > -1");
  if (!(hi > lo)) throw std::invalid_argument("monomial weight needs lo < hi");
  LineWeight w;
  w.kind_ = Kind::Monomial;
  w.constant_ = false;
  w.exponent_ = alpha;
  w.lo_ = lo;
  w.hi_ = hi;
  w.singular_ = {lo, hi};
  if (lo < 0 && hi > 0) w.singular_.push_back(0.0);
  std::sort(w.singular_.begin(), w.singular_.end());
  return w;
}

double LineWeight::operator()(double t) const {
  if (constant_) return constant_value_;
  if (kind_ == Kind::Monomial) return (t < lo_ || t > hi_) ? 0.0 : std::pow(std::fabs(t), exponent_);
  const double v = std::fabs(horner(torsion_coeffs_, t));
  return v == 0 ? 0.0 : std::pow(v, exponent_);
}

QuadEstimate LineWeight::measure(double a, double b, double tol) const {
  QuadEstimate est;
  if (!(b > a)) return est;
  if (constant_) {
    est.value = constant_value_ * (b - a);
    return est;
  }
  if (kind_ == Kind::Monomial) {
    const double x0 = std::max(a, lo_), x1 = std::min(b, hi_);
    if (!(x1 > x0)) return est;
    auto prim = [&](double t) {
      const double v = std::pow(std::fabs(t), exponent_ + 1) / (exponent_ + 1);
      return t < 0 ? -v : v;
    };
    est.value = prim(x1) - prim(x0);
    return est;
  }
  const auto pts = partition(a, b, singular_);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto q = endpoint_singular_integrate(*this, pts[i], pts[i + 1], tol);
    est.value += q.value;
    est.error += q.error;
    est.evaluations += q.evaluations;
  }
  return est;
}

// ---------------------------------------------------------------- pointwise operators

double xray_indicator(const PolyCurve& curve, const LineWeight& w, const BoxSet& e, double t,
                      const std::vector<double>& y) {
  check_dims(curve, e);
  const int d = curve.ambient_dim();
  if (static_cast<int>(y.size()) != d - 1) throw std::invalid_argument("y must have d - 1 coordinates");
  const double wt = w(t);
  if (wt == 0) return 0.0;
  const auto p = curve.evaluate(t);
  Eigen::VectorXd o(d), v(d);
  o(0) = 0;
  v(0) = 1;
  for (int k = 1; k < d; ++k) {
    o(k) = y[static_cast<std::size_t>(k - 1)];
    v(k) = p[static_cast<std::size_t>(k - 1)];
  }
  double total = 0;
  for (const auto& box : e.boxes) {
    const Eigen::VectorXd u0 = box.inverse_d() * (o - box.vertex_d());
    const Eigen::VectorXd u1 = box.inverse_d() * v;
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d && lo < hi; ++i) {
      if (u1(i) == 0) {
        if (u0(i) < 0 || u0(i) > 1) hi = lo;
        continue;
      }
      double s1 = -u0(i) / u1(i), s2 = (1 - u0(i)) / u1(i);
      if (s1 > s2) std::swap(s1, s2);
      lo = std::max(lo, s1);
      hi = std::min(hi, s2);
    }
    if (hi > lo) total += hi - lo;
  }
  return wt * total;
}

QuadEstimate adjoint_indicator(const PolyCurve& curve, const LineWeight& w, const BoxSet& f, double s,
                               const std::vector<double>& x, double tol) {
  check_dims(curve, f);
  const std::size_t d = static_cast<std::size_t>(curve.ambient_dim());
  if (x.size() != d - 1) throw std::invalid_argument("x must have d - 1 coordinates");
  const CurveD geo(curve);
  QuadEstimate total;
  for (const auto& box : f.boxes) {
    const auto& inv = box.inverse_d();
    const auto& v = box.vertex_d();
    std::vector<std::vector<double>> u(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<double> c(static_cast<std::size_t>(geo.degree) + 2, 0.0);
      const auto ii = static_cast<Eigen::Index>(i);
      c[0] = -inv(ii, 0) * v(0);
      c[1] = inv(ii, 0);
      for (std::size_t k = 1; k < d; ++k) {
        const double m = inv(ii, static_cast<Eigen::Index>(k));
        c[0] += m * (x[k - 1] - v(static_cast<Eigen::Index>(k)));
        const auto& pk = geo.comps[k - 1];
        for (std::size_t j = 0; j < pk.size(); ++j) c[j] -= m * s * pk[j];
      }
      u[i] = std::move(c);
    }
    const auto [ta, tb] = box.first_range();
    std::vector<double> breaks = w.singular_points();
    for (auto& c : u) {
      for (double r : real_roots_in(c, ta, tb)) breaks.push_back(r);
      c[0] -= 1;
      for (double r : real_roots_in(c, ta, tb)) breaks.push_back(r);
      c[0] += 1;
    }
    const auto part = partition(ta, tb, breaks);
    for (std::size_t j = 0; j + 1 < part.size(); ++j) {
      const double m = 0.5 * (part[j] + part[j + 1]);
      bool inside = true;
      for (const auto& c : u) {
        const double val = horner(c, m);
        inside = inside && val >= 0 && val <= 1;
      }
      if (!inside) continue;
      auto q = w.measure(part[j], part[j + 1], tol);
      total.value += q.value;
      total.error += q.error;
      total.evaluations += q.evaluations + 1;
    }
  }
  return total;
}

double xray_grid(const PolyCurve& curve, const LineWeight& w, const GridFunction& f, double t, const double* y) {
  const int d = curve.ambient_dim();
  if (f.dim() != d) throw std::invalid_argument("grid dimension does not match the curve");
  const double wt = w(t);
  if (wt == 0) return 0.0;
  double o[16], v[16];
  o[0] = 0;
  v[0] = 1;
  for (int k = 1; k < d; ++k) {
    o[k] = y[k - 1];
    v[k] = curve.component(k - 1).evaluate(t);
  }
  return wt * f.line_integral(o, v);
}

double adjoint_grid(const PolyCurve& curve, const LineWeight& w, const GridFunction& g, double s, const double* x) {
  if (g.dim() != curve.ambient_dim()) throw std::invalid_argument("grid dimension does not match the curve");
  return AdjointGridEvaluator(curve, w, g)(s, x);
}

// ---------------------------------------------------------------- pairings

QuadEstimate pairing(const PolyCurve& curve, const LineWeight& w, const BoxSet& e, const BoxSet& f, double tol) {
  check_dims(curve, e);
  check_dims(curve, f);
  if (e.empty() || f.empty()) return {};
  if (e.all_axis_aligned() && f.all_axis_aligned()) return pairing_aligned(CurveD(curve), w, aligned(e), aligned(f), tol, 1.0);
  if (auto fr = find_frame(e, f)) {
    const PolyCurve reduced = apply_affine(curve, fr->m_inv, fr->shift);
    return pairing_aligned(CurveD(reduced), w, aligned(fr->e), aligned(fr->f), tol, fr->det.get_d());
  }
  const int d = curve.ambient_dim();
  QuadEstimate total;
  for (const auto& box : f.boxes) {
    const double vol = box.volume().get_d();
    auto q = integrate_cube(
        d,
        [&](const std::vector<double>& u) {
          Eigen::VectorXd pt = box.vertex_d() + box.edges_d() * Eigen::Map<const Eigen::VectorXd>(u.data(), d);
          std::vector<double> y(pt.data() + 1, pt.data() + d);
          return xray_indicator(curve, w, e, pt(0), y);
        },
        tol);
    total.value += vol * q.value;
    total.error += vol * q.error;
    total.evaluations += q.evaluations;
  }
  return total;
}

QuadEstimate adjoint_pairing(const PolyCurve& curve, const LineWeight& w, const BoxSet& e, const BoxSet& f,
                             double tol) {
  check_dims(curve, e);
  check_dims(curve, f);
  if (e.empty() || f.empty()) return {};
  if (e.all_axis_aligned() && f.all_axis_aligned()) return adjoint_aligned(CurveD(curve), w, aligned(e), aligned(f), tol, 1.0);
  if (auto fr = find_frame(e, f)) {
    const PolyCurve reduced = apply_affine(curve, fr->m_inv, fr->shift);
    return adjoint_aligned(CurveD(reduced), w, aligned(fr->e), aligned(fr->f), tol, fr->det.get_d());
  }
  const int d = curve.ambient_dim();
  QuadEstimate total;
  for (const auto& box : e.boxes) {
    const double vol = box.volume().get_d();
    auto q = integrate_cube(
        d,
        [&](const std::vector<double>& u) {
          Eigen::VectorXd pt = box.vertex_d() + box.edges_d() * Eigen::Map<const Eigen::VectorXd>(u.data(), d);
          std::vector<double> x(pt.data() + 1, pt.data() + d);
          return adjoint_indicator(curve, w, f, pt(0), x, tol).value;
        },
        tol);
    total.value += vol * q.value;
    total.error += vol * q.error;
    total.evaluations += q.evaluations;
  }
  return total;
}

// ---------------------------------------------------------------- mixed norms

double mixed_norm(const BoxSet& f, const ExtRational& q, const ExtRational& r) {
  if (f.empty()) return 0.0;
  const bool piecewise_constant =
      std::all_of(f.boxes.begin(), f.boxes.end(), [](const Box& b) { return is_t_cylindrical(b); });
  std::vector<double> pts;
  for (const auto& b : f.boxes) {
    const auto bp = slice_breakpoints(b);
    pts.insert(pts.end(), bp.begin(), bp.end());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto slice = [&](double t) {
    double m = 0;
    for (const auto& b : f.boxes) m += slice_measure(b, t);
    return m;
  };
  const double rv = r.is_infinite() ? 0.0 : r.to_double();
  auto inner_norm = [&](double m) {
    if (m <= 0) return 0.0;
    return r.is_infinite() ? 1.0 : std::pow(m, 1 / rv);
  };
  if (q.is_infinite()) {
    double sup = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const int samples = piecewise_constant ? 1 : 64;
      for (int k = 0; k < samples; ++k) {
        const double t = pts[i] + (pts[i + 1] - pts[i]) * (k + 0.5) / samples;
        sup = std::max(sup, inner_norm(slice(t)));
      }
    }
    return sup;
  }
  const double qv = q.to_double();
  auto integrand = [&](double t) { return std::pow(inner_norm(slice(t)), qv); };
  double acc = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (piecewise_constant)
      acc += (pts[i + 1] - pts[i]) * integrand(0.5 * (pts[i] + pts[i + 1]));
    else
      acc += adaptive_integrate(integrand, pts[i], pts[i + 1], 1e-12).value;
  }
  return std::pow(acc, 1 / qv);
}

MixedLowerBound mixed_lb_check(const BoxSet& f, const Rational& theta, int dim) {
  if (f.empty()) throw std::invalid_argument("mixed_lb_check: empty set");
  if (theta < theta_zero(dim) || theta > 1) throw std::invalid_argument("mixed_lb_check: theta must lie in [theta_0, 1]");
  const ExponentTriple ex = exponent_triple(theta, dim);
  const ExtRational qc = ex.q.conjugate(), rc = ex.r.conjugate();
  const Rational inv_qc = qc.reciprocal(), inv_rc = rc.reciprocal();
  MixedLowerBound res;
  const bool cylindrical =
      std::all_of(f.boxes.begin(), f.boxes.end(), [](const Box& b) { return is_t_cylindrical(b); });
  if (cylindrical) {
    const auto pieces = exact_slices(f);
    bool all_equal = true;
    for (const auto& pc : pieces) all_equal = all_equal && pc.second == pieces.front().second;
    res.equality_predicted = all_equal || inv_qc == inv_rc;
    Mpfr a(inv_rc / inv_qc), sum, vol, proj, tmp, lhs, rhs, e1(inv_qc), e2(inv_rc), e3(Rational(inv_qc - inv_rc));
    mpfr_set_zero(sum.v, 1);
    mpfr_set_zero(vol.v, 1);
    mpfr_set_zero(proj.v, 1);
    for (const auto& [len, m] : pieces) {
      Mpfr l(len), mm(m), lm(Rational(len * m));
      mpfr_pow(tmp.v, mm.v, a.v, MPFR_RNDN);
      mpfr_mul(tmp.v, tmp.v, l.v, MPFR_RNDN);
      mpfr_add(sum.v, sum.v, tmp.v, MPFR_RNDN);
      mpfr_add(vol.v, vol.v, lm.v, MPFR_RNDN);
      mpfr_add(proj.v, proj.v, l.v, MPFR_RNDN);
    }
    mpfr_pow(lhs.v, sum.v, e1.v, MPFR_RNDN);
    mpfr_pow(rhs.v, vol.v, e2.v, MPFR_RNDN);
    mpfr_pow(tmp.v, proj.v, e3.v, MPFR_RNDN);
    mpfr_mul(rhs.v, rhs.v, tmp.v, MPFR_RNDN);
    Mpfr diff, thresh;
    mpfr_sub(diff.v, lhs.v, rhs.v, MPFR_RNDN);
    mpfr_mul_2si(thresh.v, rhs.v, -200, MPFR_RNDN);
    res.holds = mpfr_cmp(diff.v, thresh.v) >= 0 || mpfr_cmpabs(diff.v, thresh.v) <= 0;
    res.equality_observed = mpfr_cmpabs(diff.v, thresh.v) <= 0;
    res.lhs = mpfr_get_d(lhs.v, MPFR_RNDN);
    res.rhs = mpfr_get_d(rhs.v, MPFR_RNDN);
    res.exact = true;
    return res;
  }
  res.lhs = mixed_norm(f, qc, rc);
  // |F| and |pi(F)| by quadrature of the slice function.
  std::vector<double> pts;
  for (const auto& b : f.boxes) {
    const auto bp = slice_breakpoints(b);
    pts.insert(pts.end(), bp.begin(), bp.end());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double proj = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double m = 0;
    for (const auto& b : f.boxes) m += slice_measure(b, 0.5 * (pts[i] + pts[i + 1]));
    if (m > 0) proj += pts[i + 1] - pts[i];
  }
  const double vol = f.volume().get_d();
  res.rhs = std::pow(vol, inv_rc.get_d()) * std::pow(proj, Rational(inv_qc - inv_rc).get_d());
  res.equality_predicted = inv_qc == inv_rc;
  res.holds = res.lhs >= res.rhs * (1 - 1e-10);
  res.equality_observed = std::fabs(res.lhs - res.rhs) <= 1e-10 * res.rhs;
  return res;
}

RatioResult rwt_ratio(const PolyCurve& curve, const LineWeight& w, const ExponentTriple& exps, const BoxSet& e,
                      const BoxSet& f, double tol) {
  RatioResult res;
  const auto q = pairing(curve, w, e, f, tol);
  res.pairing = q.value;
  res.evaluations = q.evaluations;
  res.e_volume = e.volume().get_d();
  res.f_norm = mixed_norm(f, exps.q.conjugate(), exps.r.conjugate());
  const double denom = std::pow(res.e_volume, exps.inv_p().get_d()) * res.f_norm;
  if (!(denom > 0)) throw std::invalid_argument("rwt_ratio: degenerate sets");
  res.ratio = q.value / denom;
  res.rel_error = q.value != 0 ? q.error / std::fabs(q.value) : 0.0;
  return res;
}

RatioResult rwt_ratio(const PolyCurve& curve, const Rational& theta, const BoxSet& e, const BoxSet& f, double tol) {
  return rwt_ratio(curve, LineWeight::torsion_power(curve, theta), exponent_triple(theta, curve.ambient_dim()), e, f,
                   tol);
}

// ---------------------------------------------------------------- grid checks

AdjointCheck adjoint_check(const PolyCurve& curve, const LineWeight& w, const GridFunction& f, const GridFunction& g,
                           int order) {
  if (f.dim() != curve.ambient_dim() || g.dim() != curve.ambient_dim())
    throw std::invalid_argument("grid dimension does not match the curve");
  const int d = curve.ambient_dim();
  AdjointCheck res;
  res.lhs = support_quadrature(g, order, [&](const double* pt) {
    const double gv = g(pt);
    return gv == 0 ? 0.0 : gv * xray_grid(curve, w, f, pt[0], pt + 1);
  });
  const AdjointGridEvaluator adj(curve, w, g);
  res.rhs = support_quadrature(f, order, [&](const double* pt) {
    const double fv = f(pt);
    return fv == 0 ? 0.0 : fv * adj(pt[0], pt);
  });
  (void)d;
  const double scale = std::max(std::fabs(res.lhs), std::fabs(res.rhs));
  res.rel_diff = scale > 0 ? std::fabs(res.lhs - res.rhs) / scale : 0.0;
  return res;
}

L1LinftyResult l1_linfty_check(const PolyCurve& curve, const GridFunction& f, const std::vector<double>& t_samples,
                               int y_cells, double tol) {
  if (f.dim() != curve.ambient_dim()) throw std::invalid_argument("grid dimension does not match the curve");
  const CurveD geo(curve);
  L1LinftyResult res;
  res.f_l1 = f.lp_norm(1.0);
  const auto [lo, hi] = support_bbox(f);
  const LineWeight unit = LineWeight::unit();
  for (double t : t_samples) {
    const auto ybox = y_range(geo, lo, hi, t, t);
    auto line = [&](double tt, const double* y) { return xray_grid(curve, unit, f, tt, y); };
    const double v = y_power_integral(line, t, 1.0, ybox, 1.0, y_cells);
    res.t_samples.push_back(t);
    res.values.push_back(v);
    res.sup_ratio = std::max(res.sup_ratio, v / res.f_l1);
  }
  res.holds = res.sup_ratio <= 1 + tol;
  return res;
}

InvarianceResult invariance_check(const PolyCurve& curve, const Rational& theta, const GridFunction& f,
                                  const AffineChange& change, double t_lo, double t_hi, int cells) {
  const int d = curve.ambient_dim();
  if (f.dim() != d) throw std::invalid_argument("grid dimension does not match the curve");
  if (!(t_hi > t_lo)) throw std::invalid_argument("invariance_check: empty interval");
  const ExponentTriple ex = exponent_triple(theta, d);
  const double p = ex.p.to_double(), r = ex.r.to_double();
  const double q = ex.q.is_infinite() ? std::numeric_limits<double>::infinity() : ex.q.to_double();
  const auto [lo, hi] = support_bbox(f);

  // Original side.
  const CurveD geo(curve);
  const LineWeight w1 = LineWeight::torsion_power(curve, theta);
  auto line1 = [&](double t, const double* y) {
    double o[16], v[16];
    o[0] = 0;
    v[0] = 1;
    for (int k = 1; k < d; ++k) {
      o[k] = y[k - 1];
      v[k] = horner(geo.comps[static_cast<std::size_t>(k - 1)], t);
    }
    return f.line_integral(o, v);
  };
  const auto ybox1 = y_range(geo, lo, hi, t_lo, t_hi);
  const double fnorm = f.lp_norm(p);

  // Transformed side: P~ = B P(a t + shift) + c, f~(s, z) = f(s, B^{-1}(z - s c)).
  const PolyCurve tilde = apply_affine(reparam_linear(curve, change.a, change.shift), change.b, change.c);
  const CurveD geo2(tilde);
  const LineWeight w2 = LineWeight::torsion_power(tilde, theta);
  const RationalMatrix binv_q = inverse(change.b);
  Eigen::MatrixXd binv(d - 1, d - 1), bmat(d - 1, d - 1);
  Eigen::VectorXd cvec(d - 1);
  for (int i = 0; i < d - 1; ++i) {
    cvec(i) = change.c[static_cast<std::size_t>(i)].get_d();
    for (int j = 0; j < d - 1; ++j) {
      binv(i, j) = binv_q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
      bmat(i, j) = change.b(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
    }
  }
  auto line2 = [&](double t, const double* y) {
    Eigen::VectorXd yv(d - 1), pv(d - 1);
    for (int k = 0; k < d - 1; ++k) {
      yv(k) = y[k];
      pv(k) = horner(geo2.comps[static_cast<std::size_t>(k)], t);
    }
    const Eigen::VectorXd o = binv * yv, v = binv * (pv - cvec);
    double oo[16], vv[16];
    oo[0] = 0;
    vv[0] = 1;
    for (int k = 1; k < d; ++k) {
      oo[k] = o(k - 1);
      vv[k] = v(k - 1);
    }
    return f.line_integral(oo, vv);
  };
  double ta2 = Rational((from_double(t_lo) - change.shift) / change.a).get_d();
  double tb2 = Rational((from_double(t_hi) - change.shift) / change.a).get_d();
  if (ta2 > tb2) std::swap(ta2, tb2);
  // Bounding box of the sheared support.
  std::vector<double> zlo(static_cast<std::size_t>(d), std::numeric_limits<double>::infinity());
  std::vector<double> zhi(static_cast<std::size_t>(d), -std::numeric_limits<double>::infinity());
  for (unsigned m = 0; m < (1u << d); ++m) {
    Eigen::VectorXd x(d - 1);
    const double s = (m & 1u) ? hi[0] : lo[0];
    for (int k = 1; k < d; ++k) x(k - 1) = (m & (1u << k)) ? hi[static_cast<std::size_t>(k)] : lo[static_cast<std::size_t>(k)];
    const Eigen::VectorXd z = bmat * x + s * cvec;
    zlo[0] = std::min(zlo[0], s);
    zhi[0] = std::max(zhi[0], s);
    for (int k = 1; k < d; ++k) {
      zlo[static_cast<std::size_t>(k)] = std::min(zlo[static_cast<std::size_t>(k)], z(k - 1));
      zhi[static_cast<std::size_t>(k)] = std::max(zhi[static_cast<std::size_t>(k)], z(k - 1));
    }
  }
  const auto ybox2 = y_range(geo2, zlo, zhi, ta2, tb2);
  auto ftilde_norm = [&](int n) {
    std::vector<double> hz(static_cast<std::size_t>(d));
    double vol = 1;
    for (int i = 0; i < d; ++i) {
      hz[static_cast<std::size_t>(i)] = (zhi[static_cast<std::size_t>(i)] - zlo[static_cast<std::size_t>(i)]) / n;
      vol *= hz[static_cast<std::size_t>(i)];
    }
    const GaussRule& rule = gauss_rule(2);
    const std::size_t per = static_cast<std::size_t>(n) * rule.nodes.size();
    std::size_t total = 1;
    for (int i = 1; i < d; ++i) total *= per;
    std::vector<double> partial(per);
    parallel_for(per, [&](std::size_t i0) {
      double acc = 0;
      double pt[16];
      const double s = zlo[0] + hz[0] * (static_cast<double>(i0 / rule.nodes.size()) +
                                          0.5 * (1 + rule.nodes[i0 % rule.nodes.size()]));
      const double w0 = 0.5 * rule.weights[i0 % rule.nodes.size()];
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        double wq = vol * w0;
        Eigen::VectorXd z(d - 1);
        for (int k = 1; k < d; ++k) {
          const std::size_t j = rem % per;
          rem /= per;
          z(k - 1) = zlo[static_cast<std::size_t>(k)] +
                     hz[static_cast<std::size_t>(k)] * (static_cast<double>(j / rule.nodes.size()) +
                                                        0.5 * (1 + rule.nodes[j % rule.nodes.size()]));
          wq *= 0.5 * rule.weights[j % rule.nodes.size()];
        }
        const Eigen::VectorXd x = binv * (z - s * cvec);
        pt[0] = s;
        for (int k = 1; k < d; ++k) pt[k] = x(k - 1);
        acc += wq * std::pow(std::fabs(f(pt)), p);
      }
      partial[i0] = acc;
    });
    double sum = 0;
    for (double v : partial) sum += v;
    return std::pow(sum, 1 / p);
  };

  InvarianceResult res;
  const double l_coarse = xray_mixed_norm(line1, w1, t_lo, t_hi, ybox1, q, r, cells) / fnorm;
  const double l_fine = xray_mixed_norm(line1, w1, t_lo, t_hi, ybox1, q, r, 2 * cells) / fnorm;
  const double r_coarse = xray_mixed_norm(line2, w2, ta2, tb2, ybox2, q, r, cells) / ftilde_norm(cells);
  const double r_fine = xray_mixed_norm(line2, w2, ta2, tb2, ybox2, q, r, 2 * cells) / ftilde_norm(2 * cells);
  res.lhs = l_fine;
  res.lhs_error = std::fabs(l_fine - l_coarse);
  res.rhs = r_fine;
  res.rhs_error = std::fabs(r_fine - r_coarse);
  const double scale = std::max(res.lhs, res.rhs);
  res.discrepancy = scale > 0 ? std::fabs(res.lhs - res.rhs) / scale : 0.0;
  return res;
}

}  // namespace polyxray
