#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyxray/commands.hpp"
#include "polyxray/io.hpp"
#include "polyxray/polycurve.hpp"

namespace py = pybind11;
using namespace polyxray;
using polyxray::io::json;

namespace {

// JSON crosses the boundary as text; the Python layer decodes it.
std::string run(const std::string& command, const std::string& config, std::uint64_t seed, const std::string& base_dir) {
  cli::RunConfig rc;
  rc.config = json::parse(config);
  rc.seed = seed;
  rc.base_dir = base_dir;
  return cli::run_command(command, rc).to_json().dump();
}

std::vector<std::string> torsion_coefficients(const std::string& curve) {
  std::vector<std::string> out;
  const Polynomial l = torsion(io::curve_from_json(json::parse(curve)));
  for (const auto& c : l.coefficients()) out.push_back(to_string(c));
  return out;
}

std::vector<std::string> triple(const std::string& theta, int dim) {
  const auto t = exponent_triple(parse_rational(theta), dim);
  return {t.p.to_string(), t.q.to_string(), t.r.to_string()};
}

std::string decompose(const std::string& curve, const std::string& lo, const std::string& hi, double c_target) {
  DecomposeOptions opt;
  opt.C_target = c_target;
  const auto dec = decompose_torsion(io::curve_from_json(json::parse(curve)),
                                     Domain::bounded(parse_rational(lo), parse_rational(hi)), opt);
  return io::decomposition_to_json(dec).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<cli::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<io::FormatError>(m, "FormatError", PyExc_ValueError);
  m.def("commands", &cli::command_names);
  m.def("run", &run, py::arg("command"), py::arg("config"), py::arg("seed") = 0, py::arg("base_dir") = ".");
  m.def("torsion_coefficients", &torsion_coefficients, py::arg("curve"));
  m.def("exponent_triple", &triple, py::arg("theta"), py::arg("dim"));
  m.def("theta_zero", [](int dim) { return to_string(theta_zero(dim)); }, py::arg("dim"));
  m.def("decompose", &decompose, py::arg("curve"), py::arg("lo"), py::arg("hi"), py::arg("c_target") = 4.0);
}
