#include "polyxray/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace polyxray {

double PieceBound::approx() const {
  if (infinite != 0) return infinite * std::numeric_limits<double>::infinity();
  return point.approx();
}

std::string PieceBound::to_string() const {
  if (infinite < 0) return "-inf";
  if (infinite > 0) return "inf";
  if (point.is_rational()) return polyxray::to_string(point.value());
  return "root(" + point.polynomial().to_string() + ") in [" + polyxray::to_string(point.lo()) + ", " +
         polyxray::to_string(point.hi()) + "]";
}

namespace {

Polynomial linear_factor(const Rational& b) { return Polynomial{-b, Rational(1)}; }

Polynomial power(const Polynomial& p, int k) {
  Polynomial acc = Polynomial::constant(1);
  for (int i = 0; i < k; ++i) acc *= p;
  return acc;
}

Rational outer_lo(const PieceBound& x) { return x.point.is_rational() ? x.point.value() : x.point.lo(); }
Rational outer_hi(const PieceBound& x) { return x.point.is_rational() ? x.point.value() : x.point.hi(); }

/// Encloses |L(t)| / |t - b|^K over rational intervals.
class RatioEncloser {
 public:
  RatioEncloser(const Polynomial& torsion, RealAlgebraic b, int k) : b_(std::move(b)), k_(k) {
    if (k_ == 0) {
      h_ = torsion;
    } else if (b_.is_rational()) {
      h_ = torsion.exact_div(power(linear_factor(b_.value()), k_));
    } else {
      g_ = b_.polynomial().monic();
      rest_ = torsion.exact_div(power(g_, k_));
    }
  }

  Interval enclose(const Rational& lo, const Rational& hi, int parts) {
    Interval acc;
    bool first = true;
    for (int i = 0; i < parts; ++i) {
      Rational a = lo + (hi - lo) * Rational(i, parts), c = lo + (hi - lo) * Rational(i + 1, parts);
      Interval v = enclose_one(a, c);
      acc = first ? v : hull(acc, v);
      first = false;
    }
    return acc;
  }

  Interval enclose_point(const Rational& x) { return enclose_one(x, x); }

 private:
  Interval enclose_one(const Rational& lo, const Rational& hi) {
    if (k_ == 0 || b_.is_rational()) return abs(lo == hi ? enclose_value(h_, lo) : enclose_range(h_, lo, hi));
    // q(t) = g(t)/(t - b) evaluated with a rational stand-in for b, plus a derivative bound.
    Rational w = hi - lo;
    if (w == 0) w = abs(lo) + 1;
    b_.refine_to(w * Rational(1, 1L << 40));
    Rational bhat = (b_.lo() + b_.hi()) / 2, err = (b_.hi() - b_.lo()) / 2;
    Polynomial q = g_.divmod(linear_factor(bhat)).first;
    Rational m = std::max({abs(lo), abs(hi), Rational(abs(bhat) + err)});
    Rational dq(0);
    for (int k = 2; k <= g_.degree(); ++k) dq += abs(g_.coefficient(k)) * Rational(k * (k - 1), 2) * pow(m, k - 2);
    Interval e = Interval::enclose(err * dq);
    Interval qv = lo == hi ? enclose_value(q, lo) : enclose_range(q, lo, hi);
    qv = Interval(Interval::add_down(qv.lo, -e.hi), Interval::add_up(qv.hi, e.hi));
    Interval rv = lo == hi ? enclose_value(rest_, lo) : enclose_range(rest_, lo, hi);
    return abs(rv) * pow(abs(qv), k_);
  }

  RealAlgebraic b_;
  int k_;
  Polynomial h_, g_, rest_;
};

double certified_constant(const Interval& ratio) {
  if (!(ratio.lo > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(ratio.hi, Interval::div_up(1.0, ratio.lo));
}

struct RootInfo {
  RealAlgebraic value;
  int multiplicity;
};

struct Cut {
  RealAlgebraic x;
  int root = -1;  // index into real roots, or -1
};

}  // namespace

double far_field_constant(const Polynomial& torsion, const Rational& radius) {
  const int n = torsion.degree();
  if (n <= 0) return 1.0;
  Rational m = cauchy_bound(torsion);
  if (m >= radius) return std::numeric_limits<double>::infinity();
  // |L(t)| / (|lead| |t|^n) = prod |1 - beta_i/t| in [(1 - M/R)^n, (1 + M/R)^n].
  Interval u = Interval::enclose(m / radius);
  Interval up = pow(Interval(1.0) + u, n);
  Interval down = pow(Interval(1.0) - u, n);
  return std::max(up.hi, Interval::div_up(1.0, down.lo));
}

Interval certify_piece(const Polynomial& torsion, const MonomialPiece& piece) {
  if (piece.far_field || !piece.lo.is_finite() || !piece.hi.is_finite())
    throw std::invalid_argument("certify_piece needs a bounded piece");
  RatioEncloser enc(torsion, piece.b, piece.K);
  Interval a = Interval::enclose(from_double(piece.A));
  return enc.enclose(outer_lo(piece.lo), outer_hi(piece.hi), 8) / a;
}

Decomposition decompose_polynomial(const Polynomial& torsion, const Domain& domain, const DecomposeOptions& options) {
  if (torsion.is_zero()) throw FlatCurveError("torsion vanishes identically: the curve lies in an affine hyperplane");
  if (!(options.C_target >= 1.0)) throw std::invalid_argument("C_target must be at least 1");
  if (domain.lo && domain.hi && !(*domain.lo < *domain.hi)) throw std::invalid_argument("empty domain");

  Decomposition out;
  out.torsion = torsion;
  out.domain = domain;
  out.C_target = options.C_target;

  std::vector<RootInfo> roots;
  std::vector<RootDatum> complex_pairs;
  for (auto& r : isolate_real_roots(torsion)) {
    if (r.kind == RootDatum::Kind::Real)
      roots.push_back({r.real, r.multiplicity});
    else
      complex_pairs.push_back(r);
  }

  // Truncation of unbounded sides.
  const int n = torsion.degree();
  Rational radius = Rational(2) * (cauchy_bound(torsion) + 1);
  if (!domain.lo || !domain.hi) {
    for (int guard = 0; far_field_constant(torsion, radius) > options.C_target; ++guard) {
      if (guard > 200) throw DecompositionError("far-field radius search failed");
      radius *= 2;
    }
  }
  Rational a = domain.lo ? *domain.lo : Rational(-radius);
  Rational b = domain.hi ? *domain.hi : radius;
  if (!domain.lo && b < a) a = b - 1;
  if (!domain.hi && b < a) b = a + 1;
  if (!domain.lo) a = std::min(a, Rational(-radius));
  if (!domain.hi) b = std::max(b, radius);

  auto far_piece = [&](bool right) {
    MonomialPiece p;
    p.far_field = true;
    p.K = n;
    p.b = RealAlgebraic::rational(0);
    p.A = std::fabs(torsion.leading().get_d());
    p.C = far_field_constant(torsion, right ? b : Rational(-a));
    if (right) {
      p.lo = PieceBound::at(b);
      p.hi = PieceBound{1, RealAlgebraic::rational(0)};
    } else {
      p.lo = PieceBound{-1, RealAlgebraic::rational(0)};
      p.hi = PieceBound::at(a);
    }
    return p;
  };
  if (!domain.lo) out.pieces.push_back(far_piece(false));

  // Cut points.
  std::vector<Cut> cuts;
  cuts.push_back({RealAlgebraic::rational(a), -1});
  cuts.push_back({RealAlgebraic::rational(b), -1});
  for (std::size_t i = 0; i < roots.size(); ++i) cuts.push_back({roots[i].value, static_cast<int>(i)});
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    auto& r0 = roots[i].value;
    auto& r1 = roots[i + 1].value;
    while ((r0.width() + r1.width()) * 64 > r1.lo() - r0.hi() || r1.lo() <= r0.hi()) {
      r0.refine_to(r0.width() / 2);
      r1.refine_to(r1.width() / 2);
    }
    Rational x0 = (r0.lo() + r0.hi()) / 2, x1 = (r1.lo() + r1.hi()) / 2;
    Rational gap = x1 - x0;
    for (const Rational& f : {Rational(1, 3), Rational(1, 2), Rational(2, 3)})
      cuts.push_back({RealAlgebraic::rational(Rational(x0 + gap * f)), -1});
  }
  for (const auto& z : complex_pairs) {
    for (int s : {-1, 1}) cuts.push_back({RealAlgebraic::rational(from_double(z.approx.real() + s * std::fabs(z.approx.imag()))), -1});
  }
  {
    std::vector<Cut> inside;
    for (auto& c : cuts)
      if (c.x.compare(a) >= 0 && c.x.compare(b) <= 0) inside.push_back(c);
    std::sort(inside.begin(), inside.end(), [](Cut& x, Cut& y) { return compare(x.x, y.x) < 0; });
    cuts.clear();
    for (auto& c : inside) {
      if (!cuts.empty() && compare(cuts.back().x, c.x) == 0) {
        if (c.root >= 0) cuts.back().root = c.root;
        continue;
      }
      cuts.push_back(c);
    }
  }

  std::map<int, RatioEncloser> enclosers;
  auto encloser_for = [&](int root) -> RatioEncloser& {
    auto it = enclosers.find(root);
    if (it != enclosers.end()) return it->second;
    if (root < 0) return enclosers.emplace(root, RatioEncloser(torsion, RealAlgebraic::rational(0), 0)).first->second;
    return enclosers.emplace(root, RatioEncloser(torsion, roots[static_cast<std::size_t>(root)].value, roots[static_cast<std::size_t>(root)].multiplicity))
        .first->second;
  };

  std::size_t budget_used = 0;
  std::function<void(PieceBound, PieceBound, int)> certify = [&](PieceBound lo, PieceBound hi, int root) {
    RatioEncloser& enc = encloser_for(root);
    // Keep irrational endpoints narrow relative to the piece.
    if (!lo.point.is_rational())
      while (!lo.point.is_rational() && lo.point.width() * 64 > outer_lo(hi) - lo.point.hi()) lo.point.refine_to(lo.point.width() / 2);
    if (!hi.point.is_rational())
      while (!hi.point.is_rational() && hi.point.width() * 64 > hi.point.lo() - outer_hi(lo)) hi.point.refine_to(hi.point.width() / 2);
    Rational olo = outer_lo(lo), ohi = outer_hi(hi);
    Rational mid = ((lo.point.is_rational() ? lo.point.value() : (lo.point.lo() + lo.point.hi()) / 2) +
                    (hi.point.is_rational() ? hi.point.value() : (hi.point.lo() + hi.point.hi()) / 2)) /
                   2;
    MonomialPiece piece;
    piece.lo = lo;
    piece.hi = hi;
    if (root >= 0) {
      piece.b = roots[static_cast<std::size_t>(root)].value;
      piece.K = roots[static_cast<std::size_t>(root)].multiplicity;
    } else {
      piece.b = lo.point;
      piece.K = 0;
    }
    piece.A = enc.enclose_point(mid).mid();
    Interval ratio = enc.enclose(olo, ohi, 4) / Interval::enclose(from_double(piece.A));
    piece.C = certified_constant(ratio);
    if (piece.C <= options.C_target) {
      out.pieces.push_back(std::move(piece));
      return;
    }
    if (++budget_used >= options.max_pieces) {
      std::ostringstream msg;
      msg << "piece budget " << options.max_pieces << " exhausted while certifying [" << lo.to_string() << ", "
          << hi.to_string() << "], best constant " << piece.C << " > target " << options.C_target;
      throw DecompositionError(msg.str());
    }
    certify(lo, PieceBound::at(mid), root);
    certify(PieceBound::at(mid), hi, root);
  };

  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    int root = -1;
    if (!roots.empty()) {
      double m = 0.5 * (cuts[k].x.approx() + cuts[k + 1].x.approx());
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < roots.size(); ++i) {
        double dist = std::fabs(roots[i].value.approx() - m);
        if (dist < best) {
          best = dist;
          root = static_cast<int>(i);
        }
      }
    }
    certify(PieceBound::finite(cuts[k].x), PieceBound::finite(cuts[k + 1].x), root);
  }

  if (!domain.hi) out.pieces.push_back(far_piece(true));
  if (out.pieces.size() > options.max_pieces)
    throw DecompositionError("piece budget exceeded: " + std::to_string(out.pieces.size()) + " pieces");
  return out;
}

Decomposition decompose_torsion(const PolyCurve& curve, const Domain& domain, const DecomposeOptions& options) {
  return decompose_polynomial(torsion(curve), domain, options);
}

NormalizedPiece normalize_piece(const PolyCurve& curve, const MonomialPiece& piece) {
  if (piece.far_field || !piece.lo.is_finite() || !piece.hi.is_finite())
    throw std::invalid_argument("normalize_piece needs a bounded piece");
  if (!piece.b.is_rational() || !piece.lo.point.is_rational() || !piece.hi.point.is_rational())
    throw std::invalid_argument("normalize_piece needs rational endpoints and a rational base point");
  const Rational& b = piece.b.value();
  Rational dlo = piece.lo.point.value() - b, dhi = piece.hi.point.value() - b;
  Rational slope = abs(dlo) > abs(dhi) ? dlo : dhi;
  if (slope == 0) throw std::invalid_argument("degenerate piece");
  const int d = curve.ambient_dim();
  const int n = d * (d - 1) / 2;
  Rational a_exact = from_double(piece.A);
  Rational scale = Rational(1) / (a_exact * pow(abs(slope), n + piece.K));
  RationalMatrix m = RationalMatrix::identity(static_cast<std::size_t>(d - 1));
  m(0, 0) = scale;
  PolyCurve out = apply_affine(reparam_linear(curve, slope, b), m, std::vector<Rational>(static_cast<std::size_t>(d - 1), Rational(0)));
  Rational lo = dlo / slope, hi = dhi / slope;
  if (lo > hi) std::swap(lo, hi);
  return NormalizedPiece{std::move(out), lo, hi, piece.K, slope, b, scale};
}

}  // namespace polyxray
