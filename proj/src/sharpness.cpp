#include "polyxray/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "polyxray/interval.hpp"
#include "polyxray/quadrature.hpp"
#include "polyxray/roots.hpp"

namespace polyxray {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

RationalMatrix frame_matrix(const PolyCurve& curve, const Rational& t0) {
  const int d = curve.ambient_dim();
  RationalMatrix m(sz(d - 1), sz(d - 1));
  for (int j = 1; j < d; ++j) {
    const auto dp = curve.derivative_at(j, t0);
    for (int k = 0; k < d - 1; ++k) m(sz(k), sz(j - 1)) = dp[sz(k)];
  }
  return m;
}

BoxSet single(Box b) {
  BoxSet s;
  s.boxes.push_back(std::move(b));
  return s;
}

}  // namespace

bool nonnegative_on(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) return true;
  if (a > b) throw std::invalid_argument("nonnegative_on: a > b");
  std::vector<Rational> pts{a, b};
  if (p.degree() > 0) {
    for (auto& r : real_roots_squarefree(square_free_part(p))) {
      if (r.compare(a) <= 0 || r.compare(b) >= 0) continue;
      if (r.is_rational()) {
        pts.push_back(r.value());
        continue;
      }
      while (r.lo() <= a || r.hi() >= b) r.refine_to(r.width() / 2);
      if (r.is_rational()) {
        pts.push_back(r.value());
        continue;
      }
      pts.push_back(r.lo());
      pts.push_back(r.hi());
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (p(pts[i]) < 0) return false;
    if (i + 1 < pts.size() && p(Rational((pts[i] + pts[i + 1]) / 2)) < 0) return false;
  }
  return true;
}

bool optimality_admissible(const PolyCurve& curve, const Rational& t0, const Rational& delta) {
  const int d = curve.ambient_dim();
  const RationalMatrix minv = inverse(frame_matrix(curve, t0));
  const auto p0 = curve(t0);
  // c_j(t) = sum_k minv(j, k) (P_k(t) - P_k(t0))
  Rational dj = 1;
  for (int j = 0; j < d - 1; ++j) {
    dj *= delta;
    Polynomial c;
    for (int k = 0; k < d - 1; ++k)
      c += minv(sz(j), sz(k)) * (curve.component(k) - Polynomial::constant(p0[sz(k)]));
    const Polynomial upper = Polynomial::constant(dj) - c, lower = Polynomial::constant(dj) + c;
    if (!nonnegative_on(upper, t0 - delta, t0 + delta) || !nonnegative_on(lower, t0 - delta, t0 + delta)) return false;
  }
  return true;
}

OptimalityBoxes optimality_boxes(const PolyCurve& curve, const Rational& t0, const Rational& delta) {
  if (!(delta > 0)) throw std::invalid_argument("optimality_boxes: delta must be positive");
  const int d = curve.ambient_dim();
  const RationalMatrix m = frame_matrix(curve, t0);
  if (determinant(m) == 0) throw std::domain_error("optimality_boxes: torsion vanishes at t0");
  const auto p0 = curve(t0);
  RationalMatrix ee(sz(d), sz(d)), fe(sz(d), sz(d));
  std::vector<Rational> ev(sz(d)), fv(sz(d));
  ev[0] = -1;
  ee(0, 0) = 2;
  fv[0] = t0 - delta;
  fe(0, 0) = 2 * delta;
  for (int k = 1; k < d; ++k) {
    ee(sz(k), 0) = 2 * p0[sz(k - 1)];
    ev[sz(k)] = -p0[sz(k - 1)];
  }
  Rational dj = 1;
  for (int j = 1; j < d; ++j) {
    dj *= delta;
    for (int k = 1; k < d; ++k) {
      const Rational& col = m(sz(k - 1), sz(j - 1));
      ee(sz(k), sz(j)) = 4 * dj * col;
      ev[sz(k)] -= 2 * dj * col;
      fe(sz(k), sz(j)) = 2 * dj * col;
      fv[sz(k)] -= dj * col;
    }
  }
  OptimalityBoxes out{single(Box(ev, ee)), single(Box(fv, fe)), t0, delta, false};
  out.contained = optimality_admissible(curve, t0, delta);
  return out;
}

Theta0Boxes theta0_boxes(const PolyCurve& curve, const Rational& t0, const Rational& delta, double max_excess,
                         int max_strips) {
  if (!(delta > 0)) throw std::invalid_argument("theta0_boxes: delta must be positive");
  const int d = curve.ambient_dim();
  const Rational ta = t0 - delta, tb = t0 + delta;
  std::vector<Interval> range;
  std::vector<double> chord;
  for (int k = 0; k < d - 1; ++k) {
    range.push_back(enclose_range(curve.component(k), ta, tb));
    chord.push_back(std::fabs(Rational(curve.component(k)(tb) - curve.component(k)(ta)).get_d()));
  }
  Theta0Boxes out;
  {
    std::vector<Rational> lo{ta}, hi{tb};
    for (int k = 1; k < d; ++k) {
      lo.push_back(Rational(-1));
      hi.push_back(Rational(1));
    }
    out.f = single(Box::axis_aligned(lo, hi));
  }
  // |E_s| >= |C u (C + s (P(tb) - P(ta)))| for the cube C = [-1,1]^{d-1}.
  std::vector<double> kinks{-1.0, 0.0, 1.0};
  for (double c : chord)
    if (c > 2) {
      kinks.push_back(2 / c);
      kinks.push_back(-2 / c);
    }
  const double cube = std::pow(2.0, d - 1);
  auto two_cubes = [&](double s) {
    double overlap = 1;
    for (double c : chord) overlap *= std::max(0.0, 2 - std::fabs(s) * c);
    return 2 * cube - overlap;
  };
  double lower = 0;
  const auto part = partition(-1.0, 1.0, kinks);
  for (std::size_t i = 0; i + 1 < part.size(); ++i) lower += gauss_integrate(two_cubes, part[i], part[i + 1], d + 1);

  for (int n = 8; n <= max_strips; n *= 2) {
    BoxSet cover;
    for (int i = 0; i < n; ++i) {
      const Rational s0 = make_rational(2 * i - n, n), s1 = make_rational(2 * i + 2 - n, n);
      const Interval s(s0.get_d(), s1.get_d());
      std::vector<Rational> lo{s0}, hi{s1};
      for (int k = 0; k < d - 1; ++k) {
        const Interval sp = s * range[sz(k)];
        lo.push_back(Rational(from_double(sp.lo) - 1));
        hi.push_back(Rational(from_double(sp.hi) + 1));
      }
      cover.boxes.push_back(Box::axis_aligned(lo, hi));
    }
    const double vol = cover.volume().get_d();
    out.excess_bound = vol / lower - 1;
    out.strips = n;
    out.e = std::move(cover);
    if (out.excess_bound <= max_excess) return out;
  }
  throw std::runtime_error("theta0_boxes: excess bound not reached within the strip budget");
}

FlatBoxes flat_boxes(const PolyCurve& curve, const Rational& a, const Rational& b, const Rational& delta) {
  if (!curve.lies_in_last_coordinate_hyperplane())
    throw std::invalid_argument("flat_boxes: the last component must vanish identically");
  if (!(a < b) || !(delta > 0)) throw std::invalid_argument("flat_boxes: need a < b and delta > 0");
  const int d = curve.ambient_dim();
  double sup = 0;
  for (int k = 0; k < d - 2; ++k) {
    const Interval r = enclose_range(curve.component(k), a, b);
    sup = std::max({sup, std::fabs(r.lo), std::fabs(r.hi)});
  }
  FlatBoxes out;
  out.sup_bound = from_double(sup);
  std::vector<Rational> elo{Rational(-1)}, ehi{Rational(1)}, flo{a}, fhi{b};
  for (int k = 0; k < d - 2; ++k) {
    elo.push_back(Rational(-1 - out.sup_bound));
    ehi.push_back(Rational(1 + out.sup_bound));
    flo.push_back(Rational(-1));
    fhi.push_back(Rational(1));
  }
  elo.push_back(-delta);
  ehi.push_back(delta);
  flo.push_back(-delta);
  fhi.push_back(delta);
  out.e = single(Box::axis_aligned(elo, ehi));
  out.f = single(Box::axis_aligned(flo, fhi));
  return out;
}

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_loglog: need two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.max_residual =
        std::max(fit.max_residual, std::fabs(std::log(y[i]) - fit.intercept - fit.slope * std::log(x[i])));
  return fit;
}

Rational sharp_base_slope(const Rational& theta, int dim) {
  const ExponentTriple ex = exponent_triple(theta, dim);
  const Rational n = make_rational(dim * (dim - 1), 2);
  return n * ex.inv_r() - n * ex.inv_p() + ex.inv_q();
}

Rational flat_bound_exponent(const Rational& theta, int dim) {
  const ExponentTriple ex = exponent_triple(theta, dim);
  return ex.inv_p() + ex.r.conjugate().reciprocal() - 1;
}

BoxSet dilate(const BoxSet& set, const std::vector<Rational>& scale) {
  BoxSet out;
  for (const auto& b : set.boxes) {
    if (scale.size() != sz(b.dim())) throw std::invalid_argument("dilate: dimension mismatch");
    std::vector<Rational> v = b.vertex();
    RationalMatrix e = b.edges();
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] *= scale[i];
      for (std::size_t j = 0; j < v.size(); ++j) e(i, j) *= scale[i];
    }
    out.boxes.emplace_back(v, e);
  }
  return out;
}

std::vector<Rational> dyadic_deltas(int lo, int hi) {
  std::vector<Rational> out;
  for (int k = lo; k <= hi; ++k) {
    Rational v(1);
    mpz_mul_2exp(v.get_den_mpz_t(), v.get_den_mpz_t(), static_cast<mp_bitcnt_t>(k));
    out.push_back(v);
  }
  return out;
}

namespace {

void finish(ScanResult& scan) {
  std::vector<double> x, y;
  double lo = INFINITY, hi = 0;
  for (const auto& p : scan.points) {
    x.push_back(p.delta.get_d());
    y.push_back(p.ratio);
    lo = std::min(lo, p.ratio);
    hi = std::max(hi, p.ratio);
  }
  if (x.size() >= 2) scan.fit = fit_loglog(x, y);
  scan.spread = lo > 0 ? hi / lo : INFINITY;
}

}  // namespace

ScanResult sharpness_scan(const PolyCurve& curve, const Rational& theta, const BasePointRule& base,
                          const std::vector<Rational>& deltas, double weight_shift, double tol) {
  const int d = curve.ambient_dim();
  if (!(theta > 0) || theta > 1) throw std::invalid_argument("sharpness_scan: theta must lie in (0, 1]");
  const WeightSpec spec(theta, d);
  const LineWeight w = LineWeight::torsion_exponent(curve, spec.exponent().get_d() + weight_shift);
  const ExponentTriple ex = exponent_triple(theta, d);
  const Polynomial l = torsion(curve);
  ScanResult scan;
  scan.kind = ScanKind::Sharp;
  scan.dim = d;
  scan.theta = theta;
  scan.weight_shift = weight_shift;
  std::vector<double> xs, ls;
  for (const auto& requested : deltas) {
    Rational delta = requested;
    int halvings = 0;
    while (!optimality_admissible(curve, base.at(delta), delta)) {
      delta /= 2;
      if (++halvings > 60) throw std::runtime_error("sharpness_scan: no admissible delta");
    }
    const Rational t0 = base.at(delta);
    const auto boxes = optimality_boxes(curve, t0, delta);
    const auto r = rwt_ratio(curve, w, ex, boxes.e, boxes.f, tol);
    scan.points.push_back({delta, t0, r.ratio, r.rel_error, r.pairing, r.e_volume, r.f_norm, boxes.contained});
    xs.push_back(delta.get_d());
    ls.push_back(std::fabs(l(t0).get_d()));
  }
  finish(scan);
  // Exponent algebra plus the shift times the growth order of |L_P(t0(delta))|.
  double kappa = 0;
  if (weight_shift != 0 && xs.size() >= 2) kappa = fit_loglog(xs, ls).slope;
  scan.predicted_slope = sharp_base_slope(theta, d).get_d() + weight_shift * kappa;
  return scan;
}

ScanResult theta0_scan(const PolyCurve& curve, const Rational& t0, const std::vector<Rational>& deltas,
                       double max_excess, double tol) {
  const int d = curve.ambient_dim();
  const ExponentTriple ex = exponent_triple(Rational(0), d);
  ScanResult scan;
  scan.kind = ScanKind::Theta0;
  scan.dim = d;
  scan.theta = 0;
  for (const auto& delta : deltas) {
    const auto boxes = theta0_boxes(curve, t0, delta, max_excess, 1 << 16);
    const auto r = rwt_ratio(curve, LineWeight::unit(), ex, boxes.e, boxes.f, tol);
    scan.points.push_back({delta, t0, r.ratio, r.rel_error, r.pairing, r.e_volume, r.f_norm, true});
  }
  finish(scan);
  scan.predicted_slope = 0;
  return scan;
}

ScanResult flat_scan(const PolyCurve& curve, const Rational& theta, const Rational& a, const Rational& b,
                     const std::vector<Rational>& deltas, double tol) {
  const int d = curve.ambient_dim();
  const ExponentTriple ex = exponent_triple(theta, d);
  ScanResult scan;
  scan.kind = ScanKind::Flat;
  scan.dim = d;
  scan.theta = theta;
  for (const auto& delta : deltas) {
    const auto boxes = flat_boxes(curve, a, b, delta);
    const auto r = rwt_ratio(curve, LineWeight::unit(), ex, boxes.e, boxes.f, tol);
    scan.points.push_back({delta, Rational(0), r.ratio, r.rel_error, r.pairing, r.e_volume, r.f_norm, true});
  }
  finish(scan);
  scan.predicted_slope = -flat_bound_exponent(theta, d).get_d();
  return scan;
}

std::string to_string(ScanKind kind) {
  switch (kind) {
    case ScanKind::Sharp:
      return "sharp";
    case ScanKind::Theta0:
      return "theta0";
    case ScanKind::Flat:
      return "flat";
  }
  return "unknown";
}

std::string scan_svg(const ScanResult& scan) {
  const double width = 640, height = 420, margin = 60;
  std::vector<double> lx, ly;
  for (const auto& p : scan.points) {
    lx.push_back(std::log2(p.delta.get_d()));
    ly.push_back(std::log2(p.ratio));
  }
  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (lx.empty()) {
    os << "</svg>\n";
    return os.str();
  }
  const double x0 = *std::min_element(lx.begin(), lx.end()), x1 = *std::max_element(lx.begin(), lx.end());
  double y0 = *std::min_element(ly.begin(), ly.end()), y1 = *std::max_element(ly.begin(), ly.end());
  const double ln2 = std::log(2.0);
  auto fit_at = [&](double x) { return scan.fit.intercept / ln2 + scan.fit.slope * x; };
  const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
  auto pred_at = [&](double x) { return ym + scan.predicted_slope * (x - xm); };
  for (double x : {x0, x1}) {
    y0 = std::min({y0, fit_at(x), pred_at(x)});
    y1 = std::max({y1, fit_at(x), pred_at(x)});
  }
  if (y1 - y0 < 1e-9) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double xs = (x1 > x0) ? (width - 2 * margin) / (x1 - x0) : 1;
  const double ys = (height - 2 * margin) / (y1 - y0);
  auto px = [&](double x) { return margin + (x - x0) * xs; };
  auto py = [&](double y) { return height - margin - (y - y0) * ys; };
  os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
     << height - margin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">log2 delta</text>\n";
  os << "<text x=\"15\" y=\"" << height / 2 << "\" transform=\"rotate(-90 15 " << height / 2
     << ")\" text-anchor=\"middle\">log2 R</text>\n";
  os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(fit_at(x0)) << "\" x2=\"" << px(x1) << "\" y2=\"" << py(fit_at(x1))
     << "\" stroke=\"steelblue\"/>\n";
  os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(pred_at(x0)) << "\" x2=\"" << px(x1) << "\" y2=\""
     << py(pred_at(x1)) << "\" stroke=\"darkorange\" stroke-dasharray=\"6 4\"/>\n";
  for (std::size_t i = 0; i < lx.size(); ++i)
    os << "<circle cx=\"" << px(lx[i]) << "\" cy=\"" << py(ly[i]) << "\" r=\"4\" fill=\"black\"/>\n";
  os << "<text x=\"" << margin << "\" y=\"30\">" << to_string(scan.kind) << " d=" << scan.dim
     << " theta=" << to_string(scan.theta) << " shift=" << scan.weight_shift << " slope=" << scan.fit.slope
     << " predicted=" << scan.predicted_slope << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace polyxray
