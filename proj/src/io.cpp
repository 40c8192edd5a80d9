#include "polyxray/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace polyxray::io {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Rational rational_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) return from_double(j.get<double>());
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError("malformed rational '" + j.dump() + "': " + e.what());
  }
  throw FormatError("expected a rational, got " + j.dump());
}

json rational_to_json(const Rational& q) { return to_string(q); }

std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("expected an array of rationals, got " + j.dump());
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

PolyCurve curve_from_json(const json& j) {
  if (j.is_object() && j.contains("moment")) {
    const int d = j.at("moment").get<int>();
    if (d < 3) throw FormatError("moment curve needs d >= 3");
    return PolyCurve::moment(d);
  }
  const json& dj = field(j, "d");
  if (!dj.is_number_integer()) throw FormatError("'d' must be an integer");
  const int d = dj.get<int>();
  const json& comps = field(j, "components");
  if (!comps.is_array() || comps.size() != sz(d - 1))
    throw FormatError("'components' must list d - 1 coefficient arrays");
  std::vector<Polynomial> polys;
  for (const auto& c : comps) polys.emplace_back(rationals_from_json(c));
  try {
    return PolyCurve(d, std::move(polys));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json curve_to_json(const PolyCurve& curve) {
  json comps = json::array();
  for (const auto& p : curve.components()) {
    json c = json::array();
    for (const auto& a : p.coefficients()) c.push_back(rational_to_json(a));
    comps.push_back(std::move(c));
  }
  return {{"d", curve.ambient_dim()}, {"components", std::move(comps)}};
}

PolyCurve read_curve_file(const std::filesystem::path& path) { return curve_from_json(read_json_file(path)); }

BoxSet boxset_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("a box set is an array of boxes");
  BoxSet out;
  for (const auto& b : j) {
    if (b.contains("lo")) {
      out.boxes.push_back(Box::axis_aligned(rationals_from_json(field(b, "lo")), rationals_from_json(field(b, "hi"))));
      continue;
    }
    const auto vertex = rationals_from_json(field(b, "vertex"));
    const json& edges = field(b, "edges");
    const std::size_t d = vertex.size();
    if (!edges.is_array() || edges.size() != d) throw FormatError("'edges' must list d edge vectors");
    RationalMatrix m(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      const auto e = rationals_from_json(edges[k]);
      if (e.size() != d) throw FormatError("edge vector of wrong length");
      for (std::size_t i = 0; i < d; ++i) m(i, k) = e[i];
    }
    try {
      out.boxes.emplace_back(vertex, m);
    } catch (const std::exception& e) {
      throw FormatError(std::string("degenerate box: ") + e.what());
    }
  }
  if (!out.boxes.empty())
    for (const auto& b : out.boxes)
      if (b.dim() != out.boxes.front().dim()) throw FormatError("boxes of mixed dimension");
  return out;
}

json boxset_to_json(const BoxSet& set) {
  json out = json::array();
  for (const auto& b : set.boxes) {
    if (b.is_axis_aligned()) {
      json lo = json::array(), hi = json::array();
      for (const auto& x : b.lo()) lo.push_back(rational_to_json(x));
      for (const auto& x : b.hi()) hi.push_back(rational_to_json(x));
      out.push_back({{"lo", lo}, {"hi", hi}});
      continue;
    }
    json vertex = json::array(), edges = json::array();
    for (const auto& x : b.vertex()) vertex.push_back(rational_to_json(x));
    const auto d = sz(b.dim());
    for (std::size_t k = 0; k < d; ++k) {
      json e = json::array();
      for (std::size_t i = 0; i < d; ++i) e.push_back(rational_to_json(b.edges()(i, k)));
      edges.push_back(std::move(e));
    }
    out.push_back({{"vertex", vertex}, {"edges", edges}});
  }
  return out;
}

IntervalUnion interval_union_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("an interval union is an array of [a, b] pairs");
  std::vector<std::pair<Rational, Rational>> parts;
  for (const auto& p : j) {
    const auto ab = rationals_from_json(p);
    if (ab.size() != 2) throw FormatError("interval must have two endpoints");
    parts.emplace_back(ab[0], ab[1]);
  }
  try {
    return IntervalUnion(std::move(parts));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json interval_union_to_json(const IntervalUnion& s) {
  json out = json::array();
  for (const auto& [a, b] : s.parts()) out.push_back({rational_to_json(a), rational_to_json(b)});
  return out;
}

json decomposition_to_json(const Decomposition& dec, int digits) {
  json pieces = json::array();
  for (const auto& p : dec.pieces) {
    std::ostringstream a;
    a.precision(digits);
    a << p.A;
    json b = p.b.is_rational() ? json(to_string(p.b.value()))
                               : json(PieceBound::finite(p.b).to_string());
    pieces.push_back({{"lo", p.lo.to_string()},
                      {"hi", p.hi.to_string()},
                      {"A", a.str()},
                      {"K", p.K},
                      {"b", b},
                      {"b_approx", p.b.approx()},
                      {"C", p.C},
                      {"far_field", p.far_field}});
  }
  json domain = json::array();
  domain.push_back(dec.domain.lo ? json(to_string(*dec.domain.lo)) : json("-inf"));
  domain.push_back(dec.domain.hi ? json(to_string(*dec.domain.hi)) : json("inf"));
  return {{"torsion", dec.torsion.to_string()},
          {"domain", domain},
          {"C_target", dec.C_target},
          {"A_digits", digits},
          {"pieces", pieces}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::logic_error("CsvTable: row width differs from header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

}  // namespace polyxray::io
