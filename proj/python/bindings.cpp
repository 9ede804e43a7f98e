#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "toral/certificate.hpp"
#include "toral/errors.hpp"
#include "toral/parse.hpp"

namespace py = pybind11;

namespace {

// JSON crosses the boundary as text; the python side decodes it.
std::string verify_text(const std::string& text) {
  auto j = toral::json::parse(text);
  auto results = toral::cli::verify_all(j);
  toral::json out = toral::json::array();
  for (const auto& r : results) out.push_back({{"ok", r.ok}, {"kind", r.kind}, {"reason", r.reason}});
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_toral, m) {
  m.doc() = "Torality, rational inner functions and Pick interpolation on the bidisk";

  // translators run newest first, so the base class goes first
  py::register_exception<toral::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<toral::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<toral::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<toral::PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = toral::cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs a CLI command; returns (exit_code, stdout, stderr).");

  m.def("canonical", [](const std::string& s) { return toral::parse(s).to_string(); }, py::arg("expr"),
        "Canonical text of a polynomial.");
  m.def("reflect", [](const std::string& s) { return toral::reflect(toral::parse(s)).to_string(); }, py::arg("expr"));
  m.def("classify_json", [](const std::string& s) { return toral::to_json(toral::classify(toral::parse(s))).dump(); },
        py::arg("expr"));
  m.def("verify_json", &verify_text, py::arg("text"),
        "Replays every certificate inside a JSON document; returns a JSON list of results.");
  m.def("plot_rows", [](const std::string& s, int samples) {
    std::vector<std::tuple<double, double, int>> rows;
    for (const auto& r : toral::cli::plot_rows(toral::parse(s), samples)) rows.emplace_back(r.theta, r.phi, r.branch);
    return rows;
  }, py::arg("expr"), py::arg("samples") = 64);
}
