#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "afrel/cli.hpp"
#include "afrel/error.hpp"
#include "afrel/harmonic.hpp"
#include "afrel/io.hpp"
#include "afrel/suites.hpp"
#include "afrel/transfer.hpp"

namespace py = pybind11;
using namespace afrel;

namespace {

// Potentials arrive as the CLI's JSON text: {"constant": c} or
// {"range": k, "values": {"12": x, ...}}.
Potential parse_potential(const std::string& text, int alphabet) {
  return io::potential_from_json(nlohmann::json::parse(text), alphabet);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "AF equivalence relations, harmonic measures and transfer operators";

  py::register_exception<Error>(m, "AfrelError", PyExc_RuntimeError);

  m.def("is_primitive", [](const std::vector<std::vector<double>>& a) { return is_primitive(Matrix::from_rows(a)); });

  m.def(
      "solve_stationary",
      [](const std::vector<std::vector<double>>& a, double tol) {
        const PerronResult p = solve_stationary(Matrix::from_rows(a), tol);
        return py::make_tuple(p.lambda, p.vector);
      },
      py::arg("matrix"), py::arg("tol") = 1e-12);

  m.def(
      "pressure",
      [](const std::vector<std::vector<int>>& transitions, const std::string& phi) {
        const Sft s(transitions);
        return pressure(s, parse_potential(phi, s.alphabet()));
      },
      py::arg("transitions"), py::arg("potential"));

  m.def(
      "kms_beta",
      [](const std::vector<std::vector<int>>& transitions, const std::string& phi) {
        const Sft s(transitions);
        return kms_beta(s, parse_potential(phi, s.alphabet()));
      },
      py::arg("transitions"), py::arg("potential"));

  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed) {
        const SuiteResult r = run_suite(name, seed);
        return py::make_tuple(r.ok(), r.cases, r.failures);
      },
      py::arg("name"), py::arg("seed") = 0);

  m.def("suite_names", &suite_names);

  // Same contract as the afrel executable: (exit code, stdout, diagnostics).
  m.def("run_cli", [](const std::vector<std::string>& args) {
    const cli::CommandResult r = cli::run(args);
    return py::make_tuple(r.exit_code(), r.render(), r.diagnostics);
  });
}
