#include "polyxray/itermaps.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "polyxray/parallel.hpp"

namespace polyxray {

std::string to_string(Family f) { return f == Family::Phi ? "Phi" : "Psi"; }

Family parse_family(const std::string& name) {
  if (name == "Phi" || name == "phi") return Family::Phi;
  if (name == "Psi" || name == "psi") return Family::Psi;
  throw std::invalid_argument("unknown map family: " + name);
}

namespace {

// y = base + sum_terms (sum_i sign_i s_{idx_i}) P(t_{term.t}); first coordinate is one variable.
struct Term {
  int t;
  std::vector<std::pair<int, int>> s;
};

struct MapSpec {
  std::vector<Term> terms;
  bool first_is_s = false;
  int first_index = 0;
  int n_s = 0, n_t = 0;  // highest s / t index supplied by args
};

MapSpec build_spec(Family family, int k) {
  MapSpec m;
  const int K = k / 2;
  if (family == Family::Psi) {
    m.n_s = (k + 1) / 2;
    m.n_t = k / 2;
    if (k % 2 == 0) {
      for (int j = 1; j <= K; ++j) {
        m.terms.push_back({j - 1, {{j, 1}}});
        m.terms.push_back({j, {{j, -1}}});
      }
      m.first_is_s = false;
      m.first_index = K;
    } else {
      m.terms.push_back({0, {{1, 1}}});
      for (int j = 1; j <= K; ++j) m.terms.push_back({j, {{j, -1}, {j + 1, 1}}});
      m.first_is_s = true;
      m.first_index = K + 1;
    }
  } else {
    m.n_t = (k + 1) / 2;
    m.n_s = k / 2;
    for (int j = 1; j <= K; ++j) m.terms.push_back({j, {{j - 1, -1}, {j, 1}}});
    if (k % 2 == 0) {
      m.first_is_s = true;
      m.first_index = K;
    } else {
      m.terms.push_back({K + 1, {{K, -1}}});
      m.first_is_s = false;
      m.first_index = K + 1;
    }
  }
  return m;
}

int position(Family family, bool is_s, int j) {
  const bool leading = (family == Family::Psi) == is_s;
  return leading ? 2 * (j - 1) : 2 * j - 1;
}

Rational peval(const Polynomial& p, const Rational& x) { return p(x); }
double peval(const Polynomial& p, double x) { return p.evaluate(x); }

template <class T>
struct Values {
  std::vector<T> s, t;
};

template <class T>
Values<T> unpack(Family family, const MapSpec& spec, const T& param, const ChainArgs<T>& args) {
  Values<T> v;
  v.s.assign(static_cast<std::size_t>(spec.n_s) + 1, T(0));
  v.t.assign(static_cast<std::size_t>(spec.n_t) + 1, T(0));
  if (family == Family::Psi)
    v.t[0] = param;
  else
    v.s[0] = param;
  for (int j = 1; j <= spec.n_s; ++j) v.s[j] = args[static_cast<std::size_t>(position(family, true, j))];
  for (int j = 1; j <= spec.n_t; ++j) v.t[j] = args[static_cast<std::size_t>(position(family, false, j))];
  return v;
}

void validate(const PolyCurve& curve, std::size_t base_dim, std::size_t k) {
  const int d = curve.ambient_dim();
  if (k < 1 || static_cast<int>(k) > d) throw std::invalid_argument("chain length must lie in [1, d]");
  if (static_cast<int>(base_dim) != d - 1) throw std::invalid_argument("base point has the wrong dimension");
}

template <class T>
T coefficient(const Term& term, const std::vector<T>& s) {
  T c(0);
  for (auto [i, sign] : term.s) c += sign > 0 ? s[static_cast<std::size_t>(i)] : T(-s[static_cast<std::size_t>(i)]);
  return c;
}

}  // namespace

template <class T>
std::vector<T> iterated_map(const PolyCurve& curve, const BasePoint<T>& base, const ChainArgs<T>& args) {
  validate(curve, base.point.size(), args.size());
  const MapSpec spec = build_spec(base.family, static_cast<int>(args.size()));
  const auto v = unpack(base.family, spec, base.param, args);
  std::vector<T> out(static_cast<std::size_t>(curve.ambient_dim()));
  out[0] = spec.first_is_s ? v.s[static_cast<std::size_t>(spec.first_index)] : v.t[static_cast<std::size_t>(spec.first_index)];
  for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i + 1] = base.point[i];
  for (const auto& term : spec.terms) {
    T c = coefficient(term, v.s);
    if (c == T(0)) continue;
    for (int i = 0; i < curve.ambient_dim() - 1; ++i)
      out[static_cast<std::size_t>(i) + 1] += c * peval(curve.component(i), v.t[static_cast<std::size_t>(term.t)]);
  }
  return out;
}

template <class T>
std::vector<T> psi_k(const PolyCurve& curve, const BasePoint<T>& base, const ChainArgs<T>& args) {
  if (base.family != Family::Psi) throw std::invalid_argument("psi_k needs a Psi base point");
  return iterated_map(curve, base, args);
}

template <class T>
std::vector<T> phi_k(const PolyCurve& curve, const BasePoint<T>& base, const ChainArgs<T>& args) {
  if (base.family != Family::Phi) throw std::invalid_argument("phi_k needs a Phi base point");
  return iterated_map(curve, base, args);
}

template std::vector<Rational> iterated_map(const PolyCurve&, const BasePoint<Rational>&, const ChainArgs<Rational>&);
template std::vector<double> iterated_map(const PolyCurve&, const BasePoint<double>&, const ChainArgs<double>&);
template std::vector<Rational> psi_k(const PolyCurve&, const BasePoint<Rational>&, const ChainArgs<Rational>&);
template std::vector<double> psi_k(const PolyCurve&, const BasePoint<double>&, const ChainArgs<double>&);
template std::vector<Rational> phi_k(const PolyCurve&, const BasePoint<Rational>&, const ChainArgs<Rational>&);
template std::vector<double> phi_k(const PolyCurve&, const BasePoint<double>&, const ChainArgs<double>&);

RationalMatrix jacobian_matrix(const PolyCurve& curve, const BasePoint<Rational>& base, const ChainArgs<Rational>& args) {
  const int d = curve.ambient_dim();
  validate(curve, base.point.size(), args.size());
  if (static_cast<int>(args.size()) != d) throw std::invalid_argument("Jacobian needs a chain of length d");
  const MapSpec spec = build_spec(base.family, d);
  const auto v = unpack(base.family, spec, base.param, args);
  RationalMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  const PolyCurve dp = curve.derivative();
  auto column = [&](bool is_s, int j) { return static_cast<std::size_t>(position(base.family, is_s, j)); };
  m(0, column(spec.first_is_s, spec.first_index)) = 1;
  for (const auto& term : spec.terms) {
    const Rational& t = v.t[static_cast<std::size_t>(term.t)];
    // s-partials: coefficient sign times P(t)
    for (auto [i, sign] : term.s) {
      if (i == 0 && base.family == Family::Phi) continue;  // s0 is a base parameter
      auto p = curve(t);
      for (int r = 0; r < d - 1; ++r) m(static_cast<std::size_t>(r) + 1, column(true, i)) += sign > 0 ? p[r] : Rational(-p[r]);
    }
    // t-partial: coefficient times P'(t)
    if (term.t == 0 && base.family == Family::Psi) continue;  // t0 is a base parameter
    Rational c = coefficient(term, v.s);
    auto dpv = dp(t);
    for (int r = 0; r < d - 1; ++r) m(static_cast<std::size_t>(r) + 1, column(false, term.t)) += c * dpv[r];
  }
  return m;
}

Rational jacobian_det(const PolyCurve& curve, const BasePoint<Rational>& base, const ChainArgs<Rational>& args) {
  return determinant(jacobian_matrix(curve, base, args));
}

std::vector<Polynomial> antiderivative_curve(const PolyCurve& curve) {
  std::vector<Polynomial> q{Polynomial::identity()};
  for (const auto& c : curve.components()) q.push_back(c.antiderivative());
  return q;
}

namespace {

// A formal sum of determinants whose columns are Q^{(order)}(variable).
struct DetTerm {
  Rational coef{1};
  std::vector<std::pair<int, int>> columns;  // (variable, derivative order of Q)
};

std::vector<DetTerm> differentiate(const std::vector<DetTerm>& expr, int var) {
  std::vector<DetTerm> out;
  for (const auto& term : expr)
    for (std::size_t c = 0; c < term.columns.size(); ++c)
      if (term.columns[c].first == var) {
        DetTerm t = term;
        t.columns[c].second += 1;
        out.push_back(std::move(t));
      }
  return out;
}

void substitute(std::vector<DetTerm>& expr, int var, int replacement) {
  for (auto& term : expr)
    for (auto& col : term.columns)
      if (col.first == var) col.first = replacement;
}

}  // namespace

Rational jacobian_identity_rhs(const PolyCurve& curve, const BasePoint<Rational>& base, const ChainArgs<Rational>& args) {
  const int d = curve.ambient_dim();
  validate(curve, base.point.size(), args.size());
  if (static_cast<int>(args.size()) != d) throw std::invalid_argument("identity needs a chain of length d");
  const MapSpec spec = build_spec(base.family, d);
  const auto v = unpack(base.family, spec, base.param, args);
  const int D = d / 2;
  const bool even = d % 2 == 0;

  Rational factor(1);
  int first_var = 0, last_var = 0, diff_from = 0, diff_to = 0, offset = 0;
  if (base.family == Family::Psi) {
    const int upper = even ? D - 1 : D;
    for (int i = 1; i <= upper; ++i) factor *= v.s[static_cast<std::size_t>(i) + 1] - v.s[static_cast<std::size_t>(i)];
    first_var = 0;
    last_var = even ? 2 * D - 1 : 2 * D;
    diff_from = D + 1;
    diff_to = last_var;
    offset = D;
  } else {
    for (int i = 1; i <= D; ++i) factor *= v.s[static_cast<std::size_t>(i)] - v.s[static_cast<std::size_t>(i) - 1];
    first_var = 1;
    last_var = even ? 2 * D : 2 * D + 1;
    diff_from = even ? D + 1 : D + 2;
    diff_to = last_var;
    offset = even ? D : D + 1;
  }

  std::vector<DetTerm> expr(1);
  for (int j = first_var; j <= last_var; ++j) expr[0].columns.emplace_back(j, 1);
  for (int j = diff_from; j <= diff_to; ++j) {
    expr = differentiate(expr, j);
    substitute(expr, j, j - offset);
  }

  const auto q = antiderivative_curve(curve);
  Rational total(0);
  for (const auto& term : expr) {
    RationalMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (std::size_t c = 0; c < term.columns.size(); ++c) {
      auto [var, order] = term.columns[c];
      const Rational& t = v.t[static_cast<std::size_t>(var)];
      for (int r = 0; r < d; ++r) m(static_cast<std::size_t>(r), c) = q[static_cast<std::size_t>(r)].derivative(order)(t);
    }
    total += term.coef * determinant(m);
  }
  return factor * total;
}

IdentityCheck jacobian_identity_check(const PolyCurve& curve, const BasePoint<Rational>& base, const ChainArgs<Rational>& args) {
  IdentityCheck c;
  c.lhs = jacobian_det(curve, base, args);
  c.rhs = jacobian_identity_rhs(curve, base, args);
  c.holds = abs(c.lhs) == abs(c.rhs);
  return c;
}

Rational vandermonde_factor_J(const PolyCurve& curve, const std::vector<Rational>& points) {
  const int d = curve.ambient_dim();
  if (static_cast<int>(points.size()) != d) throw std::invalid_argument("J needs d points");
  std::vector<Polynomial> rows{Polynomial::constant(1)};
  for (const auto& c : curve.components()) rows.push_back(c);
  int maxdeg = 0;
  for (const auto& r : rows) maxdeg = std::max(maxdeg, r.degree());
  // h[m] = complete homogeneous symmetric polynomial of degree m in points[0..c]
  std::vector<Rational> h(static_cast<std::size_t>(maxdeg) + 1, Rational(0));
  h[0] = 1;
  RationalMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) {
    if (c == 0) {
      for (int k = 1; k <= maxdeg; ++k) h[static_cast<std::size_t>(k)] = h[static_cast<std::size_t>(k) - 1] * points[0];
    } else {
      for (int k = 1; k <= maxdeg; ++k)
        h[static_cast<std::size_t>(k)] += points[static_cast<std::size_t>(c)] * h[static_cast<std::size_t>(k) - 1];
    }
    // divided difference g[t0..tc] = sum_n g_n h_{n-c}
    for (int r = 0; r < d; ++r) {
      Rational acc(0);
      const auto& g = rows[static_cast<std::size_t>(r)];
      for (int n = c; n <= g.degree(); ++n) acc += g.coefficient(n) * h[static_cast<std::size_t>(n - c)];
      m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = acc;
    }
  }
  return determinant(m);
}

double jacobian_lowerbound_rhs(const PolyCurve& curve, const Polynomial& l, const BasePoint<double>& base,
                               const ChainArgs<double>& args) {
  const int d = curve.ambient_dim();
  validate(curve, base.point.size(), args.size());
  if (static_cast<int>(args.size()) != d) throw std::invalid_argument("lower bound needs a chain of length d");
  const MapSpec spec = build_spec(base.family, d);
  const auto v = unpack(base.family, spec, base.param, args);
  const int D = d / 2;
  const bool even = d % 2 == 0;
  auto L = [&](double t) { return std::fabs(l.evaluate(t)); };
  const double two_over_d = 2.0 / d, one_over_d = 1.0 / d;
  double rhs = 1.0;
  if (base.family == Family::Psi) {
    const int upper = even ? D - 1 : D;
    for (int i = 1; i <= upper; ++i) {
      double f = std::fabs(v.s[i + 1] - v.s[i]) * std::pow(L(v.t[i]), two_over_d);
      for (int j = 0; j <= D; ++j)
        if (j != i) f *= (v.t[j] - v.t[i]) * (v.t[j] - v.t[i]);
      rhs *= f;
    }
    rhs *= std::pow(L(v.t[0]), one_over_d);
    if (even) rhs *= std::pow(L(v.t[D]), one_over_d) * std::fabs(v.t[D] - v.t[0]);
  } else {
    const int jmax = even ? D : D + 1;
    for (int i = 1; i <= D; ++i) {
      double f = std::fabs(v.s[i] - v.s[i - 1]) * std::pow(L(v.t[i]), two_over_d);
      for (int j = 1; j <= jmax; ++j)
        if (j != i) f *= (v.t[j] - v.t[i]) * (v.t[j] - v.t[i]);
      rhs *= f;
    }
    if (!even) rhs *= std::pow(L(v.t[D + 1]), one_over_d);
  }
  return rhs;
}

namespace {

std::pair<double, double> piece_range(const MonomialPiece& piece) {
  if (!piece.lo.is_finite() || !piece.hi.is_finite()) throw std::invalid_argument("sampling needs a bounded piece");
  return {piece.lo.approx(), piece.hi.approx()};
}

// s-increments entering the lower bound must stay away from zero.
bool increments_ok(Family family, int d, const std::vector<double>& s, double tol) {
  const int D = d / 2;
  if (family == Family::Psi) {
    const int upper = d % 2 == 0 ? D - 1 : D;
    for (int i = 1; i <= upper; ++i)
      if (std::fabs(s[static_cast<std::size_t>(i) + 1] - s[static_cast<std::size_t>(i)]) < tol) return false;
  } else {
    for (int i = 1; i <= D; ++i)
      if (std::fabs(s[static_cast<std::size_t>(i)] - s[static_cast<std::size_t>(i) - 1]) < tol) return false;
  }
  return true;
}

}  // namespace

LowerBoundResult jacobian_lowerbound_ratio(const PolyCurve& curve, const MonomialPiece& piece, Family family,
                                           std::size_t n_samples, std::uint64_t seed, const SamplingBox& box) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be positive");
  const int d = curve.ambient_dim();
  const auto [lo, hi] = piece_range(piece);
  const MapSpec spec = build_spec(family, d);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(lo, hi), us(box.s_lo, box.s_hi);

  std::vector<LowerBoundSample> samples(n_samples);
  for (auto& smp : samples) {
    std::vector<double> s(static_cast<std::size_t>(spec.n_s) + 1), t(static_cast<std::size_t>(spec.n_t) + 1);
    do {
      for (auto& x : s) x = us(rng);
    } while (!increments_ok(family, d, s, box.min_increment));
    for (auto& x : t) x = ut(rng);
    smp.args.assign(static_cast<std::size_t>(d), 0.0);
    for (int j = 1; j <= spec.n_s; ++j) smp.args[static_cast<std::size_t>(position(family, true, j))] = s[static_cast<std::size_t>(j)];
    for (int j = 1; j <= spec.n_t; ++j) smp.args[static_cast<std::size_t>(position(family, false, j))] = t[static_cast<std::size_t>(j)];
    smp.base_param = family == Family::Psi ? t[0] : s[0];
  }

  const Polynomial l = torsion(curve);
  parallel_for(n_samples, [&](std::size_t i) {
    auto& smp = samples[i];
    BasePoint<double> bd{family, smp.base_param, std::vector<double>(static_cast<std::size_t>(d - 1), 0.0)};
    double rhs = jacobian_lowerbound_rhs(curve, l, bd, smp.args);
    if (!(rhs > 0.0)) {
      smp.ratio = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    BasePoint<Rational> br{family, from_double(smp.base_param), std::vector<Rational>(static_cast<std::size_t>(d - 1), Rational(0))};
    ChainArgs<Rational> args;
    for (double x : smp.args) args.push_back(from_double(x));
    smp.ratio = std::fabs(jacobian_det(curve, br, args).get_d()) / rhs;
  });

  LowerBoundResult res;
  res.n_samples = n_samples;
  res.seed = seed;
  res.family = family;
  res.min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& smp : samples) {
    if (std::isnan(smp.ratio)) continue;
    ++res.n_used;
    if (smp.ratio < res.min_ratio) {
      res.min_ratio = smp.ratio;
      res.argmin = smp;
    }
  }
  return res;
}

JBoundResult vandermonde_lowerbound(const PolyCurve& curve, const MonomialPiece& piece, std::size_t n_samples,
                                    std::uint64_t seed) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be positive");
  const int d = curve.ambient_dim();
  const auto [lo, hi] = piece_range(piece);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(lo, hi);
  std::vector<std::vector<double>> pts(n_samples, std::vector<double>(static_cast<std::size_t>(d)));
  for (auto& p : pts)
    for (auto& x : p) x = ut(rng);
  std::vector<double> ratio(n_samples);
  const Polynomial l = torsion(curve);
  parallel_for(n_samples, [&](std::size_t i) {
    std::vector<Rational> q;
    double denom = 1.0;
    for (double x : pts[i]) {
      q.push_back(from_double(x));
      denom *= std::pow(std::fabs(l.evaluate(x)), 1.0 / d);
    }
    ratio[i] = denom > 0 ? std::fabs(vandermonde_factor_J(curve, q).get_d()) / denom : std::numeric_limits<double>::quiet_NaN();
  });
  JBoundResult res;
  res.n_samples = n_samples;
  res.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_samples; ++i)
    if (!std::isnan(ratio[i]) && ratio[i] < res.min_ratio) {
      res.min_ratio = ratio[i];
      res.argmin = pts[i];
    }
  return res;
}

}  // namespace polyxray
