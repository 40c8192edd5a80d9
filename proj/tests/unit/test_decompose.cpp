#include <cmath>
#include <random>

#include "doctest.h"
#include "polyxray/decompose.hpp"

using namespace polyxray;

namespace {
Polynomial T() { return Polynomial::identity(); }
Polynomial C(const Rational& c) { return Polynomial::constant(c); }

// Dense sampling oracle in long double, independent of the interval code.
void check_by_sampling(const Polynomial& l, const Decomposition& dec, int samples = 200) {
  for (const auto& p : dec.pieces) {
    if (p.far_field) continue;
    long double lo = p.lo.approx(), hi = p.hi.approx(), b = p.b.approx();
    CHECK(lo < hi);
    // b is not interior
    CHECK((b <= lo + 1e-12L || b >= hi - 1e-12L));
    for (int i = 0; i <= samples; ++i) {
      long double t = lo + (hi - lo) * i / samples;
      if (p.K > 0 && std::fabs(static_cast<double>(t - b)) < 1e-9) continue;
      long double v = 0;
      const auto& c = l.coefficients_double();
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
      long double ratio = std::fabs(v) / (p.A * std::pow(std::fabs(t - b), p.K));
      CHECK(ratio <= p.C * (1 + 1e-9));
      CHECK(ratio >= 1.0 / p.C * (1 - 1e-9));
    }
  }
}

void check_cover(const Decomposition& dec, double a, double b) {
  REQUIRE(!dec.pieces.empty());
  CHECK(dec.pieces.front().lo.approx() == doctest::Approx(a));
  CHECK(dec.pieces.back().hi.approx() == doctest::Approx(b));
  for (std::size_t i = 0; i + 1 < dec.pieces.size(); ++i) {
    auto x = dec.pieces[i].hi.point, y = dec.pieces[i + 1].lo.point;
    CHECK(compare(x, y) == 0);
  }
}
}  // namespace

TEST_CASE("cusp torsion splits at the root with exact constants") {
  PolyCurve cusp(3, {T() * T(), T() * T() * T()});
  auto dec = decompose_torsion(cusp, Domain::bounded(-1, 1));
  REQUIRE(dec.pieces.size() == 2);
  for (const auto& p : dec.pieces) {
    CHECK(p.A == 6.0);
    CHECK(p.K == 2);
    CHECK(p.b.value() == 0);
    CHECK(p.C == 1.0);
  }
  CHECK(dec.pieces[0].lo.point.value() == -1);
  CHECK(dec.pieces[0].hi.point.value() == 0);
  CHECK(dec.pieces[1].hi.point.value() == 1);
}

TEST_CASE("constant torsion is a single piece") {
  auto dec = decompose_torsion(PolyCurve::moment(3), Domain::bounded(0, 1));
  REQUIRE(dec.pieces.size() == 1);
  CHECK(dec.pieces[0].K == 0);
  CHECK(dec.pieces[0].A == 2.0);
  CHECK(dec.pieces[0].C == 1.0);
}

TEST_CASE("two simple roots") {
  // P = (t, t^4/12 - t^3/6) has torsion t(t - 1).
  PolyCurve c(3, {T(), Polynomial{0, 0, 0, Rational(-1, 6), Rational(1, 12)}});
  REQUIRE(torsion(c) == T() * (T() - C(1)));
  auto dec = decompose_torsion(c, Domain::bounded(0, 1));
  CHECK(dec.pieces.size() >= 3);
  CHECK(dec.pieces.front().K == 1);
  CHECK(dec.pieces.front().b.value() == 0);
  CHECK(dec.pieces.back().K == 1);
  CHECK(dec.pieces.back().b.value() == 1);
  check_cover(dec, 0, 1);
  check_by_sampling(torsion(c), dec);
  for (const auto& p : dec.pieces) {
    Interval r = certify_piece(torsion(c), p);
    CHECK(r.lo >= 1.0 / p.C);
    CHECK(r.hi <= p.C);
    CHECK(p.C <= 4.0);
  }
}

TEST_CASE("irrational and complex roots, unbounded domain") {
  Polynomial l = (T() * T() - C(2)) * (T() * T() - C(2)) * (T() * T() + T() + C(5)) * (T() - C(Rational(1, 3)));
  auto dec = decompose_polynomial(l, Domain::real_line());
  CHECK(dec.pieces.front().far_field);
  CHECK(dec.pieces.back().far_field);
  CHECK(dec.pieces.front().K == l.degree());
  CHECK(dec.pieces.front().C <= 4.0);
  std::vector<MonomialPiece> inner(dec.pieces.begin() + 1, dec.pieces.end() - 1);
  Decomposition bounded = dec;
  bounded.pieces = inner;
  check_cover(bounded, inner.front().lo.approx(), inner.back().hi.approx());
  check_by_sampling(l, bounded);
  bool saw_double_irrational = false;
  for (const auto& p : inner) {
    if (!p.b.is_rational() && p.K == 2) saw_double_irrational = true;
    Interval r = certify_piece(l, p);
    CHECK(r.lo >= 1.0 / p.C);
    CHECK(r.hi <= p.C);
  }
  CHECK(saw_double_irrational);
  // far-field sampling
  for (double t : {inner.back().hi.approx() * 1.01, 1e3, 1e6}) {
    double v = std::fabs(l.evaluate(t)) / (dec.pieces.back().A * std::pow(t, l.degree()));
    CHECK(v <= dec.pieces.back().C);
    CHECK(v >= 1.0 / dec.pieces.back().C);
  }
}

TEST_CASE("flat curve is rejected") {
  PolyCurve flat(3, {T(), Polynomial()});
  CHECK_THROWS_AS(decompose_torsion(flat, Domain::bounded(0, 1)), FlatCurveError);
}

TEST_CASE("piece budget failure is reported") {
  Polynomial l = (T() - C(Rational(1, 1000))) * (T() + C(Rational(1, 1000))) * T();
  DecomposeOptions opt;
  opt.C_target = 1.0001;
  opt.max_pieces = 8;
  CHECK_THROWS_AS(decompose_polynomial(l, Domain::bounded(-1, 1), opt), DecompositionError);
}

TEST_CASE("normalize_piece") {
  PolyCurve c(3, {T(), Polynomial{0, 0, 0, Rational(-1, 6), Rational(1, 12)}});
  auto dec = decompose_torsion(c, Domain::bounded(-1, 3));
  for (const auto& p : dec.pieces) {
    auto np = normalize_piece(c, p);
    CHECK(np.lo >= 0);
    CHECK(np.hi <= 1);
    CHECK(np.lo < np.hi);
    CHECK(np.K == p.K);
    // New torsion = scale * slope^3 * L(shift + slope t); compare against the exact law.
    CHECK(torsion(np.curve) == torsion(c).compose_linear(np.slope, np.shift) * (np.scale * pow(np.slope, 3)));
    MonomialPiece q;
    q.lo = PieceBound::at(np.lo);
    q.hi = PieceBound::at(np.hi);
    q.b = RealAlgebraic::rational(0);
    q.K = np.K;
    q.A = 1.0;
    Interval r = certify_piece(torsion(np.curve), q);
    CHECK(r.lo >= 1.0 / p.C * (1 - 1e-12));
    CHECK(r.hi <= p.C * (1 + 1e-12));
  }
  // Piece [2,3] with b = 2: shift then scale.
  MonomialPiece p;
  p.lo = PieceBound::at(2);
  p.hi = PieceBound::at(3);
  p.b = RealAlgebraic::rational(2);
  p.K = 1;
  p.A = 4;
  auto np = normalize_piece(c, p);
  CHECK(np.slope == 1);
  CHECK(np.shift == 2);
  CHECK(np.lo == 0);
  CHECK(np.hi == 1);
  CHECK(np.scale == Rational(1, 4));
  // Negative piece uses a reflection.
  p.lo = PieceBound::at(-1);
  p.hi = PieceBound::at(0);
  p.b = RealAlgebraic::rational(0);
  CHECK(normalize_piece(c, p).slope == -1);
}
