#include "polyxray/commands.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "polyxray/decompose.hpp"
#include "polyxray/grid.hpp"
#include "polyxray/itermaps.hpp"
#include "polyxray/parallel.hpp"
#include "polyxray/refine.hpp"
#include "polyxray/samplers.hpp"
#include "polyxray/sharpness.hpp"
#include "polyxray/xrayop.hpp"

namespace polyxray::cli {

namespace {

using io::format_double;
using io::rational_from_json;

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

// ---- config access

bool has(const json& c, const char* key) { return c.contains(key) && !c.at(key).is_null(); }

template <class T>
T get_or(const json& c, const char* key, T fallback) {
  return has(c, key) ? c.at(key).get<T>() : fallback;
}

Rational rational_or(const json& c, const char* key, const Rational& fallback) {
  return has(c, key) ? rational_from_json(c.at(key)) : fallback;
}

std::vector<Rational> rationals_or(const json& c, const char* key, std::vector<Rational> fallback) {
  if (!has(c, key)) return fallback;
  const json& v = c.at(key);
  return v.is_array() ? io::rationals_from_json(v) : std::vector<Rational>{rational_from_json(v)};
}

std::vector<double> doubles_or(const json& c, const char* key, std::vector<double> fallback) {
  if (!has(c, key)) return fallback;
  const json& v = c.at(key);
  if (v.is_array()) return v.get<std::vector<double>>();
  return {v.get<double>()};
}

std::vector<int> ints_or(const json& c, const char* key, std::vector<int> fallback) {
  if (!has(c, key)) return fallback;
  const json& v = c.at(key);
  if (v.is_array()) return v.get<std::vector<int>>();
  return {v.get<int>()};
}

const json& require(const json& c, const char* key) {
  if (!has(c, key)) throw UsageError(std::string("config is missing '") + key + "'");
  return c.at(key);
}

PolyCurve load_curve(const RunConfig& rc, bool required = true, const PolyCurve* fallback = nullptr) {
  const json& c = rc.config;
  if (has(c, "curve_file")) {
    std::filesystem::path p = c.at("curve_file").get<std::string>();
    if (p.is_relative()) p = rc.base_dir / p;
    return io::read_curve_file(p);
  }
  if (has(c, "curve")) return io::curve_from_json(c.at("curve"));
  if (!required && fallback) return *fallback;
  throw UsageError("config needs 'curve' or 'curve_file'");
}

std::vector<Family> families_or(const json& c, std::vector<Family> fallback) {
  if (!has(c, "families") && !has(c, "family")) return fallback;
  const json& v = has(c, "families") ? c.at("families") : c.at("family");
  std::vector<Family> out;
  auto add = [&](const std::string& name) {
    try {
      out.push_back(parse_family(name));
    } catch (const std::exception&) {
      throw UsageError("unknown family '" + name + "' (expected Phi or Psi)");
    }
  };
  if (v.is_array())
    for (const auto& f : v) add(f.get<std::string>());
  else
    add(v.get<std::string>());
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + format_double(xs[i]);
  return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

json coefficient_strings(const Polynomial& p) {
  json out = json::array();
  for (const auto& a : p.coefficients()) out.push_back(to_string(a));
  return out;
}

// ---- commands

void cmd_torsion(const RunConfig& rc, RunReport& rep) {
  const PolyCurve curve = load_curve(rc);
  const json& c = rc.config;
  const auto dom = rationals_or(c, "domain", {Rational(-1), Rational(1)});
  if (dom.size() != 2 || !(dom[0] < dom[1])) throw UsageError("'domain' must be [a, b] with a < b");
  const int samples = get_or(c, "samples", 9);
  if (samples < 2) throw UsageError("'samples' must be at least 2");
  const Polynomial l = torsion(curve);
  const bool flat = l.is_zero();
  if (flat) rep.warnings.push_back("torsion vanishes identically: the curve lies in an affine hyperplane (flat case)");
  io::CsvTable table({"t", "torsion", "affine_arclength_density"});
  for (int i = 0; i < samples; ++i) {
    const Rational t = dom[0] + (dom[1] - dom[0]) * make_rational(i, samples - 1);
    table.add_row({to_string(t), to_string(l(t)), format_double(affine_arclength_density(curve, t))});
  }
  rep.results = {{"curve", io::curve_to_json(curve)},
                 {"torsion", l.to_string()},
                 {"torsion_coefficients", coefficient_strings(l)},
                 {"degree", l.is_zero() ? -1 : l.degree()},
                 {"degree_bound", torsion_degree_bound(curve.ambient_dim(), curve.degree())},
                 {"flat", flat}};
  rep.artifacts.push_back({"torsion.csv", table.str()});
  rep.passed = true;
}

void cmd_decompose(const RunConfig& rc, RunReport& rep) {
  const PolyCurve curve = load_curve(rc);
  const json& c = rc.config;
  Domain domain = Domain::real_line();
  if (has(c, "domain")) {
    const auto d = io::rationals_from_json(c.at("domain"));
    if (d.size() != 2 || !(d[0] < d[1])) throw UsageError("'domain' must be [a, b] with a < b");
    domain = Domain::bounded(d[0], d[1]);
  }
  DecomposeOptions opt;
  opt.C_target = get_or(c, "C_target", 4.0);
  opt.max_pieces = get_or<std::size_t>(c, "max_pieces", 4096);
  if (!(opt.C_target > 1)) throw UsageError("'C_target' must exceed 1");
  Decomposition dec;
  try {
    dec = decompose_torsion(curve, domain, opt);
  } catch (const FlatCurveError& e) {
    rep.error = e.what();
    rep.results = {{"flat", true}};
    rep.passed = false;
    return;
  }
  io::CsvTable table({"piece", "lo", "hi", "A", "K", "b", "C", "far_field", "recertified"});
  bool all_ok = true;
  json recert = json::array();
  for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
    const auto& p = dec.pieces[i];
    bool ok = p.C <= opt.C_target;
    if (!p.far_field && p.lo.is_finite() && p.hi.is_finite()) {
      const Interval enc = certify_piece(dec.torsion, p);
      ok = ok && enc.lo >= 1 / p.C * (1 - 1e-12) && enc.hi <= p.C * (1 + 1e-12);
    }
    all_ok = all_ok && ok;
    recert.push_back(ok);
    table.add_row({std::to_string(i), p.lo.to_string(), p.hi.to_string(), format_double(p.A), std::to_string(p.K),
                   PieceBound::finite(p.b).to_string(), format_double(p.C), bool_text(p.far_field), bool_text(ok)});
  }
  json dj = io::decomposition_to_json(dec);
  rep.results = {{"pieces", dec.pieces.size()}, {"recertified", recert}, {"decomposition", dj}};
  rep.artifacts.push_back({"decomposition.json", dj.dump(2) + "\n"});
  rep.artifacts.push_back({"pieces.csv", table.str()});
  rep.passed = all_ok;
}

struct IdentityTask {
  PolyCurve curve;
  BasePoint<Rational> base;
  ChainArgs<Rational> args;
};

void cmd_jacobian_verify(const RunConfig& rc, RunReport& rep) {
  const json& c = rc.config;
  const bool fixed_curve = has(c, "curve") || has(c, "curve_file");
  std::vector<int> dims;
  std::optional<PolyCurve> curve;
  if (fixed_curve) {
    curve = load_curve(rc);
    dims = {curve->ambient_dim()};
  } else {
    dims = ints_or(c, "d", {});
    if (dims.empty()) throw UsageError("config needs 'd' or a curve");
  }
  for (int d : dims)
    if (d < 3 || d > 8) throw UsageError("'d' must lie in [3, 8]");
  const auto families = families_or(c, {Family::Phi, Family::Psi});
  const int samples = get_or(c, "samples", 1000);
  const int num_bound = get_or(c, "num_bound", 12), den_bound = get_or(c, "den_bound", 7);
  if (samples < 1 || num_bound < 1 || den_bound < 1) throw UsageError("samples and bounds must be positive");
  Sampler sampler(rc.seed);
  io::CsvTable table({"d", "family", "samples", "failures", "first_failure"});
  json rows = json::array();
  bool all_ok = true;
  for (int d : dims)
    for (Family fam : families) {
      std::vector<IdentityTask> tasks;
      for (int i = 0; i < samples; ++i) {
        PolyCurve p = fixed_curve ? *curve : sampler.curve(d, get_or(c, "curve_degree", d + 1));
        BasePoint<Rational> base{fam, sampler.rational(num_bound, den_bound), {}};
        for (int k = 0; k < d - 1; ++k) base.point.push_back(sampler.rational(num_bound, den_bound));
        ChainArgs<Rational> args;
        for (int k = 0; k < d; ++k) args.push_back(sampler.rational(num_bound, den_bound));
        tasks.push_back({std::move(p), std::move(base), std::move(args)});
      }
      std::vector<char> ok(tasks.size(), 0);
      parallel_for(tasks.size(), [&](std::size_t i) {
        ok[i] = jacobian_identity_check(tasks[i].curve, tasks[i].base, tasks[i].args).holds ? 1 : 0;
      });
      int failures = 0;
      std::string first;
      for (std::size_t i = 0; i < tasks.size(); ++i)
        if (!ok[i]) {
          if (failures++ == 0) {
            std::ostringstream os;
            for (const auto& a : tasks[i].args) os << to_string(a) << ' ';
            first = "sample " + std::to_string(i) + " args " + os.str();
          }
        }
      all_ok = all_ok && failures == 0;
      table.add_row({std::to_string(d), to_string(fam), std::to_string(samples), std::to_string(failures), first});
      rows.push_back({{"d", d}, {"family", to_string(fam)}, {"samples", samples}, {"failures", failures}});
    }
  rep.results = {{"checks", rows}};
  rep.artifacts.push_back({"jacobian_verify.csv", table.str()});
  rep.passed = all_ok;
}

void cmd_jacobian_constant(const RunConfig& rc, RunReport& rep) {
  const PolyCurve curve = load_curve(rc);
  const json& c = rc.config;
  const auto dom = io::rationals_from_json(require(c, "domain"));
  if (dom.size() != 2 || !(dom[0] < dom[1])) throw UsageError("'domain' must be [a, b] with a < b");
  const auto families = families_or(c, {Family::Psi});
  const auto sizes = ints_or(c, "sample_sizes", {1000, 10000});
  const double stability_tol = get_or(c, "stability_tol", 0.1);
  for (int n : sizes)
    if (n < 1) throw UsageError("sample sizes must be positive");
  DecomposeOptions opt;
  opt.C_target = get_or(c, "C_target", 4.0);
  const Decomposition dec = decompose_torsion(curve, Domain::bounded(dom[0], dom[1]), opt);
  SamplingBox box;
  box.s_lo = get_or(c, "s_lo", -1.0);
  box.s_hi = get_or(c, "s_hi", 1.0);
  io::CsvTable table({"piece", "family", "n_samples", "seed", "min_ratio", "argmin"});
  json rows = json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < dec.pieces.size(); ++i)
    for (Family fam : families) {
      std::vector<double> mins;
      for (int n : sizes) {
        const std::uint64_t seed = rc.seed + i;
        const auto r = jacobian_lowerbound_ratio(curve, dec.pieces[i], fam, sz(n), seed, box);
        mins.push_back(r.min_ratio);
        std::vector<double> arg{r.argmin.base_param};
        arg.insert(arg.end(), r.argmin.args.begin(), r.argmin.args.end());
        table.add_row({std::to_string(i), to_string(fam), std::to_string(n), std::to_string(seed),
                       format_double(r.min_ratio), join(arg)});
      }
      const double lo = *std::min_element(mins.begin(), mins.end());
      const double hi = *std::max_element(mins.begin(), mins.end());
      const bool positive = lo > 0;
      const bool stable = positive && (hi - lo) / hi <= stability_tol;
      all_ok = all_ok && positive && stable;
      rows.push_back({{"piece", i},
                      {"family", to_string(fam)},
                      {"min_ratios", mins},
                      {"positive", positive},
                      {"stable", stable}});
    }
  rep.results = {{"pieces", dec.pieces.size()}, {"constants", rows}};
  rep.artifacts.push_back({"jacobian_constant.csv", table.str()});
  rep.passed = all_ok;
}

std::vector<double> padded(std::vector<double> v, int d) {
  v.resize(sz(d), 0.0);
  return v;
}

void cmd_adjoint_check(const RunConfig& rc, RunReport& rep) {
  const PolyCurve curve = load_curve(rc);
  const json& c = rc.config;
  const int d = curve.ambient_dim();
  const auto thetas = rationals_or(c, "theta", {Rational(0), make_rational(5, 6), Rational(1)});
  const int cells = get_or(c, "cells", 64);
  const double tol = get_or(c, "tol", 1e-4);
  const int order = get_or(c, "order", 2);
  if (cells < 2 || order < 1) throw UsageError("'cells' must be >= 2 and 'order' >= 1");
  const auto lo = padded(doubles_or(c, "lo", std::vector<double>(sz(d), -1.0)), d);
  const auto hi = padded(doubles_or(c, "hi", std::vector<double>(sz(d), 1.0)), d);
  const json fcfg = get_or(c, "f", json::object()), gcfg = get_or(c, "g", json::object());
  const auto fc = padded(doubles_or(fcfg, "center", {0.0}), d);
  const auto gc = padded(doubles_or(gcfg, "center", {0.3, 0.1, -0.1}), d);
  const double fr = get_or(fcfg, "radius", 0.8), gr = get_or(gcfg, "radius", 0.6);
  const std::vector<int> grid(sz(d), cells);
  const GridFunction f = bump_grid(lo, hi, grid, fc, fr), g = bump_grid(lo, hi, grid, gc, gr);
  io::CsvTable table({"theta", "lhs", "rhs", "rel_diff"});
  json rows = json::array();
  bool all_ok = true;
  for (const Rational& th : thetas) {
    const auto r = adjoint_check(curve, LineWeight::torsion_power(curve, th), f, g, order);
    const bool ok = r.lhs != 0 && r.rel_diff < tol;
    all_ok = all_ok && ok;
    table.add_row({to_string(th), format_double(r.lhs), format_double(r.rhs), format_double(r.rel_diff)});
    rows.push_back({{"theta", to_string(th)}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"rel_diff", r.rel_diff}, {"pass", ok}});
  }
  rep.results = {{"cells", cells}, {"tol", tol}, {"checks", rows}};
  rep.artifacts.push_back({"adjoint.csv", table.str()});
  rep.passed = all_ok;
}

void cmd_mixed_lb(const RunConfig& rc, RunReport& rep) {
  const json& c = rc.config;
  const int d = require(c, "d").get<int>();
  if (d < 3) throw UsageError("'d' must be at least 3");
  const auto thetas = rationals_or(c, "theta", {make_rational(5, 6), make_rational(9, 10), Rational(1)});
  std::vector<BoxSet> sets;
  if (has(c, "sets")) {
    for (const auto& s : c.at("sets")) sets.push_back(io::boxset_from_json(s));
  } else {
    Sampler sampler(rc.seed);
    const int n = get_or(c, "random_sets", 100), max_boxes = get_or(c, "max_boxes", 4);
    for (int i = 0; i < n; ++i) sets.push_back(sampler.disjoint_boxes(d, max_boxes));
  }
  io::CsvTable table({"set", "theta", "lhs", "rhs", "holds", "equality_predicted", "equality_observed", "exact"});
  int failures = 0, equalities = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].dim() != d) throw UsageError("box set dimension differs from 'd'");
    for (const Rational& th : thetas) {
      const auto r = mixed_lb_check(sets[i], th, d);
      const bool ok = r.holds && r.equality_observed == r.equality_predicted;
      failures += ok ? 0 : 1;
      equalities += r.equality_observed ? 1 : 0;
      table.add_row({std::to_string(i), to_string(th), format_double(r.lhs), format_double(r.rhs), bool_text(r.holds),
                     bool_text(r.equality_predicted), bool_text(r.equality_observed), bool_text(r.exact)});
    }
  }
  rep.results = {{"sets", sets.size()}, {"thetas", thetas.size()}, {"failures", failures}, {"equalities", equalities}};
  rep.artifacts.push_back({"mixed_lb.csv", table.str()});
  rep.passed = failures == 0;
}

std::vector<Rational> dilation_scale(int d, const Rational& first, const Rational& mu, const Rational& lambda) {
  std::vector<Rational> s{first};
  Rational pw = mu;
  for (int k = 1; k < d; ++k) {
    pw *= lambda;
    s.push_back(pw);
  }
  return s;
}

void cmd_rwt_scan(const RunConfig& rc, RunReport& rep) {
  const PolyCurve moment3 = PolyCurve::moment(3);
  const PolyCurve curve = load_curve(rc, false, &moment3);
  const json& c = rc.config;
  const int d = curve.ambient_dim();
  const auto thetas = rationals_or(c, "theta", {theta_zero(d), Rational(1)});
  const double tol = get_or(c, "tol", 1e-10);
  const double max_spread = get_or(c, "max_spread", 4.0);
  std::vector<std::pair<Rational, Rational>> dil;  // (lambda, mu)
  if (has(c, "dilations")) {
    for (const auto& p : c.at("dilations")) {
      const auto v = io::rationals_from_json(p);
      if (v.size() != 2 || !(v[0] > 0) || !(v[1] > 0)) throw UsageError("dilations are positive [lambda, mu] pairs");
      dil.emplace_back(v[0], v[1]);
    }
  } else {
    const Rational half = make_rational(1, 2), quarter = make_rational(1, 4);
    dil = {{1, 1}, {2, 1}, {1, 2}, {half, 1}, {1, half}, {4, half}, {quarter, 3}};
  }
  std::vector<std::pair<BoxSet, BoxSet>> pairs;
  if (has(c, "pairs")) {
    for (const auto& p : c.at("pairs")) pairs.emplace_back(io::boxset_from_json(require(p, "E")), io::boxset_from_json(require(p, "F")));
  } else {
    Sampler sampler(rc.seed);
    const int n = get_or(c, "random_pairs", 50);
    for (int i = 0; i < n; ++i) {
      for (int attempt = 0;; ++attempt) {
        BoxSet e = sampler.disjoint_boxes(d, 2), f = sampler.disjoint_boxes(d, 2);
        if (pairing(curve, LineWeight::unit(), e, f, 1e-8).value > 1e-3 || attempt > 100) {
          pairs.emplace_back(std::move(e), std::move(f));
          break;
        }
      }
    }
  }
  const bool homogeneous = curve == PolyCurve::moment(d);
  if (!homogeneous) rep.warnings.push_back("dilation families leave R invariant only for the moment curve");
  io::CsvTable table({"pair", "theta", "lambda", "mu", "E_volume", "F_norm", "pairing", "R"});
  json fams = json::array();
  double worst = 1;
  bool all_ok = true;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (const Rational& th : thetas) {
      double lo = INFINITY, hi = 0;
      for (const auto& [lambda, mu] : dil) {
        const BoxSet e = dilate(pairs[i].first, dilation_scale(d, mu, mu, lambda));
        const BoxSet f = dilate(pairs[i].second, dilation_scale(d, lambda, mu, lambda));
        const auto r = rwt_ratio(curve, th, e, f, tol);
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
        table.add_row({std::to_string(i), to_string(th), to_string(lambda), to_string(mu), format_double(r.e_volume),
                       format_double(r.f_norm), format_double(r.pairing), format_double(r.ratio)});
      }
      const double spread = lo > 0 ? hi / lo : INFINITY;
      const bool ok = spread <= max_spread;
      all_ok = all_ok && ok;
      worst = std::max(worst, spread);
      fams.push_back({{"pair", i}, {"theta", to_string(th)}, {"min_R", lo}, {"max_R", hi}, {"spread", spread}});
    }
  rep.results = {{"families", fams}, {"max_spread", worst}, {"allowed_spread", max_spread}};
  rep.artifacts.push_back({"rwt_scan.csv", table.str()});
  rep.passed = all_ok;
}

void cmd_sharpness_scan(const RunConfig& rc, RunReport& rep) {
  const json& c = rc.config;
  const std::string family = require(c, "family").get<std::string>();
  const auto range = ints_or(c, "delta_exponents", {3, 10});
  if (range.size() != 2 || range[0] < 1 || range[1] < range[0]) throw UsageError("'delta_exponents' is [lo, hi]");
  const auto deltas = dyadic_deltas(range[0], range[1]);
  const double slope_tol = get_or(c, "slope_tol", 0.05);
  std::vector<ScanResult> scans;
  if (family == "sharp" || family == "zoom") {
    const bool zoom = family == "zoom";
    const PolyCurve fallback = zoom ? PolyCurve(3, {Polynomial::monomial(1, 2), Polynomial::monomial(1, 3)}) : PolyCurve::moment(3);
    const PolyCurve curve = load_curve(rc, false, &fallback);
    const BasePointRule base{rational_or(c, "t0", Rational(zoom ? 2 : 1)), zoom};
    const Rational theta = rational_or(c, "theta", Rational(1));
    for (double shift : doubles_or(c, "weight_shift", {0.0})) scans.push_back(sharpness_scan(curve, theta, base, deltas, shift));
  } else if (family == "theta0") {
    const PolyCurve fallback = PolyCurve::moment(3);
    const PolyCurve curve = load_curve(rc, false, &fallback);
    scans.push_back(theta0_scan(curve, rational_or(c, "t0", Rational(1)), deltas, get_or(c, "max_excess", 0.05)));
  } else if (family == "flat") {
    const PolyCurve fallback(3, {Polynomial::identity(), Polynomial()});
    const PolyCurve curve = load_curve(rc, false, &fallback);
    for (const Rational& th : rationals_or(c, "theta", {Rational(1)}))
      scans.push_back(flat_scan(curve, th, rational_or(c, "a", Rational(0)), rational_or(c, "b", Rational(1)), deltas));
  } else {
    throw UsageError("'family' must be sharp, zoom, theta0 or flat");
  }
  json rows = json::array();
  bool all_ok = true;
  for (std::size_t k = 0; k < scans.size(); ++k) {
    const auto& s = scans[k];
    io::CsvTable table({"delta", "t0", "E_volume", "F_norm", "pairing", "R", "rel_error", "contained"});
    bool contained = true;
    for (const auto& p : s.points) {
      table.add_row({to_string(p.delta), to_string(p.t0), format_double(p.e_volume), format_double(p.f_norm),
                     format_double(p.pairing), format_double(p.ratio), format_double(p.rel_error), bool_text(p.contained)});
      contained = contained && p.contained;
    }
    const bool ok = std::fabs(s.fit.slope - s.predicted_slope) <= slope_tol && contained;
    all_ok = all_ok && ok;
    const std::string stem = "scan_" + std::to_string(k);
    rep.artifacts.push_back({stem + ".csv", table.str()});
    rep.artifacts.push_back({stem + ".svg", scan_svg(s)});
    rows.push_back({{"kind", to_string(s.kind)},
                    {"theta", to_string(s.theta)},
                    {"weight_shift", s.weight_shift},
                    {"slope", s.fit.slope},
                    {"predicted_slope", s.predicted_slope},
                    {"max_residual", s.fit.max_residual},
                    {"spread", s.spread},
                    {"contained", contained},
                    {"pass", ok}});
  }
  rep.results = {{"family", family}, {"slope_tol", slope_tol}, {"scans", rows}};
  rep.passed = all_ok;
}

json stop_to_json(const StopTimeResult& r) {
  return {{"J", {r.j_lo, r.j_hi}},
          {"stages", r.stages},
          {"m0", r.m0},
          {"c", r.constant.c},
          {"c_eps", r.constant.c_eps},
          {"log_product_bound", r.constant.log_product},
          {"mu_S", r.measure_s},
          {"mu_J", r.measure_j},
          {"captured", r.verification.captured},
          {"half_mass", r.verification.half_mass},
          {"certificate", r.verification.certificate},
          {"required", r.verification.required},
          {"first_conclusion", r.verification.first_holds},
          {"second_conclusion", r.verification.second_holds},
          {"stage_bound", r.stage_bound_holds}};
}

void cmd_stoptime(const RunConfig& rc, RunReport& rep) {
  const json& c = rc.config;
  if (has(c, "S")) {
    const auto i0 = io::rationals_from_json(require(c, "I0"));
    if (i0.size() != 2) throw UsageError("'I0' is [a, b]");
    const IntervalUnion s = io::interval_union_from_json(c.at("S"));
    const double eps = require(c, "eps").get<double>();
    const WeightedMeasure m{rational_or(c, "alpha", Rational(0))};
    const auto r = stopping_time(m, i0[0], i0[1], s, eps);
    rep.results = stop_to_json(r);
    rep.passed = r.verification.first_holds && r.verification.second_holds && r.stage_bound_holds;
    return;
  }
  const int n = require(c, "random").get<int>();
  const auto eps_list = doubles_or(c, "eps", {0.1, 0.5});
  const auto alphas = rationals_or(c, "alpha", {Rational(0), make_rational(2, 5)});
  const int max_parts = get_or(c, "max_parts", 5);
  Sampler sampler(rc.seed);
  io::CsvTable table({"instance", "alpha", "eps", "I0_lo", "I0_hi", "parts", "J_lo", "J_hi", "stages", "m0", "certificate",
                      "required", "first", "second", "stage_bound"});
  int failures = 0, total = 0;
  for (int i = 0; i < n; ++i) {
    Rational a = sampler.grid_point(Rational(0), Rational(1), 1000), b = sampler.grid_point(Rational(0), Rational(1), 1000);
    if (a > b) std::swap(a, b);
    if (b - a < make_rational(1, 100)) {
      b = a + make_rational(1, 100);
      if (b > 1) {
        a -= b - 1;
        b = 1;
      }
    }
    const IntervalUnion s = sampler.interval_union(a, b, max_parts);
    for (const Rational& alpha : alphas)
      for (double eps : eps_list) {
        const auto r = stopping_time(WeightedMeasure{alpha}, a, b, s, eps);
        const bool ok = r.verification.first_holds && r.verification.second_holds && r.stage_bound_holds;
        failures += ok ? 0 : 1;
        ++total;
        table.add_row({std::to_string(i), to_string(alpha), format_double(eps), to_string(a), to_string(b),
                       std::to_string(s.parts().size()), r.j_lo, r.j_hi, std::to_string(r.stages), format_double(r.m0),
                       format_double(r.verification.certificate), format_double(r.verification.required),
                       bool_text(r.verification.first_holds), bool_text(r.verification.second_holds),
                       bool_text(r.stage_bound_holds)});
      }
  }
  rep.results = {{"runs", total}, {"failures", failures}};
  rep.artifacts.push_back({"stoptime.csv", table.str()});
  rep.passed = failures == 0;
}

void cmd_invariance(const RunConfig& rc, RunReport& rep) {
  const json& c = rc.config;
  const auto dims = ints_or(c, "d", {3, 4});
  const int count = get_or(c, "count", 100), degree = get_or(c, "degree", 3);
  Sampler sampler(rc.seed);
  int failures = 0;
  io::CsvTable table({"d", "trial", "affine_law", "reparam_law"});
  for (int d : dims) {
    if (d < 3) throw UsageError("'d' must be at least 3");
    const int n = d * (d - 1) / 2;
    for (int i = 0; i < count; ++i) {
      const PolyCurve p = sampler.curve(d, degree);
      const AffineChange ch = sampler.affine_change(d);
      const Polynomial l = torsion(p);
      const bool affine = torsion(apply_affine(p, ch.b, ch.c)) == determinant(ch.b) * l;
      const bool reparam = torsion(reparam_linear(p, ch.a, ch.shift)) == pow(ch.a, n) * l.compose_linear(ch.a, ch.shift);
      failures += (affine && reparam) ? 0 : 1;
      table.add_row({std::to_string(d), std::to_string(i), bool_text(affine), bool_text(reparam)});
    }
  }
  rep.results = {{"trials", count * static_cast<int>(dims.size())}, {"failures", failures}};
  bool ok = failures == 0;
  if (has(c, "quadrature")) {
    const json& q = c.at("quadrature");
    const PolyCurve moment3 = PolyCurve::moment(3);
    const PolyCurve curve = has(q, "curve") ? io::curve_from_json(q.at("curve")) : moment3;
    const int d = curve.ambient_dim();
    AffineChange ch;
    if (has(q, "change")) {
      const json& cj = q.at("change");
      const json& bj = require(cj, "B");
      ch.b = RationalMatrix(sz(d - 1), sz(d - 1));
      for (int r = 0; r < d - 1; ++r) {
        const auto row = io::rationals_from_json(bj.at(sz(r)));
        if (row.size() != sz(d - 1)) throw UsageError("'B' must be (d-1) x (d-1)");
        for (int k = 0; k < d - 1; ++k) ch.b(sz(r), sz(k)) = row[sz(k)];
      }
      ch.c = io::rationals_from_json(require(cj, "c"));
      ch.a = rational_or(cj, "a", Rational(1));
      ch.shift = rational_or(cj, "shift", Rational(0));
    } else {
      ch = sampler.affine_change(d);
    }
    const GridFunction f = bump_grid(std::vector<double>(sz(d), -1.0), std::vector<double>(sz(d), 1.0),
                                     std::vector<int>(sz(d), get_or(q, "f_cells", 8)), std::vector<double>(sz(d), 0.0), 1.0);
    const double tol = get_or(q, "tol", 2e-2);
    json rows = json::array();
    for (const Rational& th : rationals_or(q, "theta", {Rational(0), Rational(1)})) {
      const auto r = invariance_check(curve, th, f, ch, get_or(q, "t_lo", -1.0), get_or(q, "t_hi", 1.0), get_or(q, "cells", 12));
      const bool pass = r.discrepancy <= tol;
      ok = ok && pass;
      rows.push_back({{"theta", to_string(th)}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"discrepancy", r.discrepancy}, {"pass", pass}});
    }
    rep.results["quadrature"] = rows;
  }
  rep.artifacts.push_back({"invariance.csv", table.str()});
  rep.passed = ok;
}

using Handler = std::function<void(const RunConfig&, RunReport&)>;

const std::map<std::string, Handler>& registry() {
  static const std::map<std::string, Handler> r{
      {"torsion", cmd_torsion},
      {"decompose", cmd_decompose},
      {"jacobian-verify", cmd_jacobian_verify},
      {"jacobian-constant", cmd_jacobian_constant},
      {"adjoint-check", cmd_adjoint_check},
      {"mixed-lb", cmd_mixed_lb},
      {"rwt-scan", cmd_rwt_scan},
      {"sharpness-scan", cmd_sharpness_scan},
      {"stoptime", cmd_stoptime},
      {"invariance", cmd_invariance},
  };
  return r;
}

}  // namespace

json RunReport::to_json() const {
  json j = {{"command", command}, {"config", config},   {"seed", seed},         {"results", results},
            {"warnings", warnings}, {"passed", passed}, {"exit_code", exit_code}, {"wall_time_s", wall_time}};
  if (!error.empty()) j["error"] = error;
  json names = json::array();
  for (const auto& a : artifacts) names.push_back(a.name);
  j["artifacts"] = names;
  return j;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

RunReport run_command(const std::string& name, const RunConfig& config) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw UsageError("unknown command '" + name + "'");
  if (!config.config.is_object() || config.config.empty()) throw UsageError("config must be a non-empty JSON object");
  RunReport rep;
  rep.command = name;
  rep.config = config.config;
  rep.seed = config.seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    it->second(config, rep);
    rep.exit_code = rep.passed ? kPass : kFail;
  } catch (const UsageError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const DecompositionError& e) {
    rep.error = e.what();
    rep.passed = false;
    rep.exit_code = kNonConvergence;
  } catch (const std::domain_error& e) {
    rep.error = e.what();
    rep.passed = false;
    rep.exit_code = kFail;
  } catch (const std::runtime_error& e) {
    rep.error = e.what();
    rep.passed = false;
    rep.exit_code = kNonConvergence;
  }
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

void write_outputs(const RunReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  io::write_text_file(dir / "report.json", report.to_json().dump(2) + "\n");
  for (const auto& a : report.artifacts) io::write_text_file(dir / a.name, a.contents);
}

}  // namespace polyxray::cli
