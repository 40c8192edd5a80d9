#include <cmath>
#include <random>

#include "doctest.h"
#include "polyxray/itermaps.hpp"

using namespace polyxray;

namespace {
Polynomial T() { return Polynomial::identity(); }

std::vector<Rational> zeros(int n) { return std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)); }

Rational rnd(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-12, 12), den(1, 7);
  return make_rational(num(rng), den(rng));
}

PolyCurve random_curve(std::mt19937_64& rng, int d, int n) {
  std::vector<Polynomial> comps;
  for (int i = 0; i < d - 1; ++i) {
    std::vector<Rational> c;
    for (int k = 0; k <= n; ++k) c.push_back(rnd(rng));
    comps.emplace_back(c);
  }
  return PolyCurve(d, comps);
}

// Central finite differences of the double-valued map.
std::vector<std::vector<double>> fd_jacobian(const PolyCurve& c, const BasePoint<double>& base, std::vector<double> args) {
  const std::size_t d = args.size();
  std::vector<std::vector<double>> j(d, std::vector<double>(d));
  for (std::size_t m = 0; m < d; ++m) {
    const double h = 1e-6;
    auto a = args, b = args;
    a[m] += h;
    b[m] -= h;
    auto fa = iterated_map(c, base, a), fb = iterated_map(c, base, b);
    for (std::size_t r = 0; r < d; ++r) j[r][m] = (fa[r] - fb[r]) / (2 * h);
  }
  return j;
}
}  // namespace

TEST_CASE("iterated maps by hand substitution") {
  auto m = PolyCurve::moment(3);
  BasePoint<Rational> psi{Family::Psi, 0, zeros(2)};
  auto out = psi_k(m, psi, {2, 1, 5});
  CHECK(out == std::vector<Rational>{5, 3, 3});
  // k = 1: (s1, y0 + s1 P(t0))
  BasePoint<Rational> psi1{Family::Psi, 2, {1, -1}};
  CHECK(psi_k(m, psi1, {3}) == std::vector<Rational>{3, 1 + 3 * 2, -1 + 3 * 4});
  // k = 2: (t1, y0 + s1 (P(t0) - P(t1)))
  CHECK(psi_k(m, psi1, {3, 1}) == std::vector<Rational>{1, 1 + 3 * (2 - 1), -1 + 3 * (4 - 1)});
  // all s zero -> y0
  CHECK(psi_k(m, psi1, {0, 7, 0}) == std::vector<Rational>{0, 1, -1});

  BasePoint<Rational> phi{Family::Phi, 3, {1, 2}};
  // k = 1: (t1, x0 - s0 P(t1))
  CHECK(phi_k(m, phi, {2}) == std::vector<Rational>{2, 1 - 3 * 2, 2 - 3 * 4});
  BasePoint<Rational> phi0{Family::Phi, 0, {1, 2}};
  CHECK(phi_k(m, phi0, {Rational(5, 2)}) == std::vector<Rational>{Rational(5, 2), 1, 2});
  // k = 3: (t2, x0 - (s0 - s1) P(t1) - s1 P(t2))
  CHECK(phi_k(m, phi, {1, 5, 2}) == std::vector<Rational>{2, 1 - (3 - 5) * 1 - 5 * 2, 2 - (3 - 5) * 1 - 5 * 4});
  CHECK_THROWS(phi_k(m, psi, {1}));
  CHECK_THROWS(psi_k(m, psi, {1, 2, 3, 4}));
}

TEST_CASE("Jacobian examples") {
  auto m = PolyCurve::moment(3);
  BasePoint<Rational> psi{Family::Psi, 0, zeros(2)};
  CHECK(abs(jacobian_det(m, psi, {2, 1, 5})) == 3);
  CHECK(jacobian_det(m, psi, {2, 0, 5}) == 0);  // t1 = t0
  CHECK(jacobian_det(m, psi, {4, 1, 4}) == 0);  // no s-increment
  auto chk = jacobian_identity_check(m, psi, {2, 1, 5});
  CHECK(chk.holds);
  CHECK(abs(chk.rhs) == 3);
}

TEST_CASE("Jacobian matrix agrees with finite differences") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 3 + trial % 3;
    Family fam = trial % 2 ? Family::Phi : Family::Psi;
    auto c = random_curve(rng, d, 3);
    BasePoint<Rational> b{fam, rnd(rng) / 4, zeros(d - 1)};
    ChainArgs<Rational> args;
    for (int i = 0; i < d; ++i) args.push_back(rnd(rng) / 4);
    auto jm = jacobian_matrix(c, b, args);
    BasePoint<double> bd{fam, b.param.get_d(), std::vector<double>(static_cast<std::size_t>(d - 1), 0.0)};
    std::vector<double> ad;
    for (auto& a : args) ad.push_back(a.get_d());
    auto fd = fd_jacobian(c, bd, ad);
    for (int r = 0; r < d; ++r)
      for (int k = 0; k < d; ++k) CHECK(fd[r][k] == doctest::Approx(jm(r, k).get_d()).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("Jacobian identities hold exactly on random tuples") {
  std::mt19937_64 rng(17);
  for (int d = 3; d <= 6; ++d)
    for (Family fam : {Family::Phi, Family::Psi})
      for (int trial = 0; trial < 25; ++trial) {
        auto c = random_curve(rng, d, d + 1);
        BasePoint<Rational> b{fam, rnd(rng), zeros(d - 1)};
        ChainArgs<Rational> args;
        for (int i = 0; i < d; ++i) args.push_back(rnd(rng));
        auto chk = jacobian_identity_check(c, b, args);
        CHECK_MESSAGE(chk.holds, "d=" << d << " family=" << to_string(fam));
      }
}

TEST_CASE("antiderivative curve") {
  std::mt19937_64 rng(23);
  auto c = random_curve(rng, 4, 3);
  auto q = antiderivative_curve(c);
  CHECK(q[0].derivative() == Polynomial::constant(1));
  for (int i = 0; i < 3; ++i) CHECK(q[static_cast<std::size_t>(i) + 1].derivative() == c.component(i));
  // L_Q = det(Q', ..., Q^{(d)}) equals L_P: the first row is (1, 0, ..., 0).
  Matrix<Polynomial> w(4, 4, Polynomial());
  for (int j = 0; j < 4; ++j)
    for (int r = 0; r < 4; ++r) w(r, j) = q[static_cast<std::size_t>(r)].derivative(j + 1);
  CHECK(determinant(w) == torsion(c));
}

TEST_CASE("vandermonde factor J") {
  auto m = PolyCurve::moment(3);
  CHECK(vandermonde_factor_J(m, {0, 1, 5}) == 1);
  CHECK(vandermonde_factor_J(m, {Rational(1, 3), Rational(1, 3), 2}) == 1);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 3 + trial % 2;
    auto c = random_curve(rng, d, 4);
    std::vector<Rational> pts;
    for (int i = 0; i < d; ++i) pts.push_back(rnd(rng) + i * 100);  // distinct
    auto q = antiderivative_curve(c);
    RationalMatrix m2(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    Rational vander(1);
    for (int j = 0; j < d; ++j) {
      for (int r = 0; r < d; ++r) m2(r, j) = q[static_cast<std::size_t>(r)].derivative()(pts[static_cast<std::size_t>(j)]);
      for (int i = 0; i < j; ++i) vander *= pts[static_cast<std::size_t>(j)] - pts[static_cast<std::size_t>(i)];
    }
    Rational j = vandermonde_factor_J(c, pts);
    CHECK(j == determinant(m2) / vander);
    std::swap(pts[0], pts[1]);
    CHECK(vandermonde_factor_J(c, pts) == j);
  }
}

TEST_CASE("lower-bound ratio") {
  auto m = PolyCurve::moment(3);
  MonomialPiece piece;
  piece.lo = PieceBound::at(0);
  piece.hi = PieceBound::at(1);
  auto res = jacobian_lowerbound_ratio(m, piece, Family::Psi, 300, 1);
  CHECK(res.min_ratio == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(res.n_used == 300);
  // homogeneity in s
  BasePoint<double> b{Family::Psi, 0.2, {0, 0}};
  Polynomial l = torsion(m);
  double r1 = jacobian_lowerbound_rhs(m, l, b, {0.3, 0.7, -0.4});
  double r2 = jacobian_lowerbound_rhs(m, l, b, {0.6, 0.7, -0.8});
  CHECK(r2 == doctest::Approx(2 * r1));

  PolyCurve cusp(3, {T() * T(), T() * T() * T()});
  auto a = jacobian_lowerbound_ratio(cusp, piece, Family::Psi, 1000, 2);
  CHECK(a.min_ratio > 0.0);
  CHECK(a.min_ratio >= 0.5 - 1e-12);
  auto phi = jacobian_lowerbound_ratio(cusp, piece, Family::Phi, 1000, 2);
  CHECK(phi.min_ratio > 0.0);
  auto jb = vandermonde_lowerbound(cusp, piece, 2000, 3);
  CHECK(jb.min_ratio > 0.0);
}
