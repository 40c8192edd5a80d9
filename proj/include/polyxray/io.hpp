#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyxray/boxes.hpp"
#include "polyxray/decompose.hpp"
#include "polyxray/polycurve.hpp"
#include "polyxray/refine.hpp"

namespace polyxray::io {

using json = nlohmann::json;

/// Malformed input files and values.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "n/d" or integer strings are exact; JSON numbers are converted exactly from their double value.
Rational rational_from_json(const json& j);
json rational_to_json(const Rational& q);
std::vector<Rational> rationals_from_json(const json& j);

/// {"d": 3, "components": [["0", "1"], ["0", "0", "1"]]} with ascending coefficients,
/// or {"moment": d}.
PolyCurve curve_from_json(const json& j);
json curve_to_json(const PolyCurve& curve);
PolyCurve read_curve_file(const std::filesystem::path& path);

/// Array of boxes; each box is {"lo": [...], "hi": [...]} or {"vertex": [...], "edges": [[...], ...]}
/// where "edges" lists the edge vectors.
BoxSet boxset_from_json(const json& j);
json boxset_to_json(const BoxSet& set);

/// [[a, b], ...]
IntervalUnion interval_union_from_json(const json& j);
json interval_union_to_json(const IntervalUnion& s);

/// Endpoints as exact strings, A as a decimal with `digits` significant digits.
json decomposition_to_json(const Decomposition& dec, int digits = 17);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Shortest round-trip decimal.
std::string format_double(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace polyxray::io
