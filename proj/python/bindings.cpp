#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracam/acceptance.h"
#include "fracam/constraints.h"
#include "fracam/dynamics.h"
#include "fracam/errors.h"
#include "fracam/manifest.h"
#include "fracam/quantum.h"
#include "fracam/report.h"

namespace py = pybind11;
using namespace fracam;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Constraint analysis and angular-momentum spectra for a polarizable atom";

  static py::exception<Error> error(m, "FracamError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::enum_<FieldSelection>(m, "FieldSelection")
      .value("Both", FieldSelection::Both)
      .value("E1Only", FieldSelection::E1Only)
      .value("E2Only", FieldSelection::E2Only);
  py::enum_<ReductionMode>(m, "ReductionMode")
      .value("Full", ReductionMode::Full)
      .value("Reduced", ReductionMode::Reduced);

  py::class_<ModelConfig>(m, "ModelConfig")
      .def(py::init<>())
      .def_readwrite("m", &ModelConfig::m)
      .def_readwrite("alpha", &ModelConfig::alpha)
      .def_readwrite("B", &ModelConfig::B)
      .def_readwrite("k", &ModelConfig::k)
      .def_readwrite("rho", &ModelConfig::rho)
      .def_readwrite("K", &ModelConfig::K)
      .def_readwrite("hbar", &ModelConfig::hbar)
      .def("effective_mass", &ModelConfig::effective_mass)
      .def("theta", &ModelConfig::theta)
      .def("validate", &ModelConfig::validate);

  py::class_<PhaseExpression>(m, "PhaseExpression")
      .def(py::init([](const std::string& text) { return parse_expression(text); }))
      .def("__str__", &PhaseExpression::to_string)
      .def("__repr__", [](const PhaseExpression& e) { return "PhaseExpression('" + e.to_string() + "')"; })
      .def("__eq__", [](const PhaseExpression& a, const PhaseExpression& b) { return equivalent(a, b); })
      .def("__add__", [](const PhaseExpression& a, const PhaseExpression& b) { return a + b; })
      .def("__sub__", [](const PhaseExpression& a, const PhaseExpression& b) { return a - b; })
      .def("__mul__", [](const PhaseExpression& a, const PhaseExpression& b) { return a * b; })
      .def("__neg__", [](const PhaseExpression& a) { return -a; })
      .def("evaluate", [](const PhaseExpression& e, std::array<double, 2> x, std::array<double, 2> p) {
        return evaluate(e, PhasePoint{x, p});
      }, py::arg("x"), py::arg("p") = std::array<double, 2>{0.0, 0.0})
      .def("is_zero", [](const PhaseExpression& e) { return is_zero(e); });

  py::class_<HamiltonianSystem>(m, "HamiltonianSystem")
      .def_readonly("config", &HamiltonianSystem::config)
      .def_readonly("selection", &HamiltonianSystem::selection)
      .def_readonly("mode", &HamiltonianSystem::mode)
      .def_readonly("hamiltonian", &HamiltonianSystem::hamiltonian)
      .def_readonly("primary_constraints", &HamiltonianSystem::primary_constraints);

  m.def("build_model", &build_model, py::arg("config"), py::arg("selection") = FieldSelection::Both,
        py::arg("mode") = ReductionMode::Reduced);
  m.def("poisson_bracket", &poisson_bracket);

  m.def("analyze", [](const HamiltonianSystem& system) {
    RunManifest manifest;
    manifest.config = system.config;
    manifest.selection = system.selection;
    manifest.mode = system.mode;
    return analysis_to_json(analyze(system), manifest).dump();
  }, "Constraint analysis as a JSON string");

  m.def("fam_spectrum", [](const ModelConfig& c, FieldSelection s, int dim, double fraction) {
    return fam_spectrum(c, s, dim, fraction).trusted();
  }, py::arg("config"), py::arg("selection") = FieldSelection::Both, py::arg("dim") = 64,
     py::arg("trusted_fraction") = 0.5);
  m.def("fam_formula", &fam_formula);
  m.def("full_model_angular_spectrum", [](int grid, double hbar) {
    return full_model_angular_spectrum(grid, hbar).eigenvalues;
  }, py::arg("grid_size"), py::arg("hbar") = 1.0);

  m.def("integrate", [](const HamiltonianSystem& system, std::array<double, 2> x0,
                        std::array<double, 2> p0, double dt, int steps) {
    const Trajectory t = integrate(system, PhasePoint{x0, p0}, dt, steps);
    py::dict out;
    out["t"] = t.times;
    out["J"] = t.J;
    out["H"] = t.H;
    out["max_drift_J"] = t.max_relative_drift_J();
    out["max_drift_H"] = t.max_relative_drift_H();
    return out;
  }, py::arg("system"), py::arg("x0"), py::arg("p0"), py::arg("dt") = 1e-3, py::arg("steps") = 1000);

  m.def("run_acceptance", [](std::uint64_t seed) {
    AcceptanceOptions opts;
    opts.seed = seed;
    py::list out;
    for (const auto& r : run_acceptance(opts)) {
      py::dict d;
      d["id"] = r.id;
      d["title"] = r.title;
      d["passed"] = r.passed;
      d["detail"] = r.detail;
      d["seconds"] = r.seconds;
      out.append(d);
    }
    return out;
  }, py::arg("seed") = 7);
}
