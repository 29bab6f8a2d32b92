#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zeno/analysis.hpp"
#include "zeno/errors.hpp"
#include "zeno/experiment.hpp"
#include "zeno/master_equation.hpp"

namespace py = pybind11;
using namespace zeno;

namespace {

py::dict curve_dict(const SurvivalCurve& c) {
  py::dict d;
  d["tau"] = c.tau;
  d["P0"] = c.p0;
  d["P1"] = c.p1;
  d["P2"] = c.p2;
  return d;
}

py::dict verdict_dict(const ZenoVerdict& v) {
  py::list intervals;
  for (const auto& i : v.intervals) {
    py::dict d;
    d["kind"] = to_string(i.kind);
    d["tau_begin"] = i.tau_begin;
    d["tau_end"] = i.tau_end;
    d["peak"] = i.peak;
    intervals.append(d);
  }
  py::dict d;
  d["regime"] = to_string(v.regime);
  d["margin"] = v.margin;
  d["intervals"] = intervals;
  return d;
}

SurvivalCurve curve_from(const RabiModel& model, std::optional<ProjectorKind> kind, int n,
                         const std::vector<double>& grid) {
  const double tp = poincare_time(model);
  const double window = grid.empty() ? tp : grid.back() * tp;
  if (!kind) return survival_curve(model, std::nullopt, std::nullopt, grid, DensityMatrix::basis(3, 0));
  return survival_curve(model, projector_set(*kind), DiscreteSchedule(n, window), grid,
                        DensityMatrix::basis(3, 0));
}

}  // namespace

PYBIND11_MODULE(_zeno, m) {
  m.doc() = "Three-level Rabi dynamics under repeated measurement (Zeno / inverse Zeno).";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::enum_<ProjectorKind>(m, "ProjectorKind")
      .value("partial", ProjectorKind::partial_01_vs_2)
      .value("full", ProjectorKind::full_dephasing);

  py::class_<RabiModel>(m, "RabiModel")
      .def(py::init<double, double, double, double>(), py::arg("omega01"), py::arg("omega12"),
           py::arg("phi01") = 0.0, py::arg("phi12") = 0.0)
      .def_property_readonly("omega", &RabiModel::omega)
      .def_property_readonly("t_poincare", &RabiModel::t_poincare)
      .def("generator", &rwa_hamiltonian)
      .def("propagator", &closed_form_propagator, py::arg("dt"));

  m.def("reference_model", &reference_model, py::arg("omega01") = 1.0,
        "Model with omega12 = sqrt(15) * omega01.");

  m.def(
      "hermitian_propagator",
      [](const ComplexMatrix& gen, double t) { return hermitian_propagator(gen, t); },
      py::arg("generator"), py::arg("t"));

  m.def(
      "reduce",
      [](const ComplexMatrix& rho, ProjectorKind kind) {
        return reduce(rho, projector_set(kind, rho.rows()));
      },
      py::arg("rho"), py::arg("kind"));

  m.def(
      "evolve_with_measurements",
      [](const RabiModel& model, ProjectorKind kind, int n, double window, const ComplexMatrix& rho0) {
        return evolve_with_measurements(model, projector_set(kind), DiscreteSchedule(n, window),
                                        DensityMatrix(rho0))
            .matrix();
      },
      py::arg("model"), py::arg("kind"), py::arg("n"), py::arg("window"), py::arg("rho0"));

  m.def(
      "survival_curve",
      [](const RabiModel& model, std::optional<ProjectorKind> kind, int n, std::size_t points,
         double tau_max) { return curve_dict(curve_from(model, kind, n, uniform_grid(points, tau_max))); },
      py::arg("model"), py::arg("kind") = py::none(), py::arg("n") = 1, py::arg("points") = 401,
      py::arg("tau_max") = 1.0,
      "Populations on a uniform tau grid starting in |0>; kind=None gives the free curve.");

  m.def(
      "detect",
      [](const RabiModel& model, ProjectorKind kind, int n, std::size_t points, double epsilon) {
        const auto grid = uniform_grid(points);
        return verdict_dict(detect_zeno_regime(curve_from(model, std::nullopt, 0, grid),
                                               curve_from(model, kind, n, grid), {epsilon}));
      },
      py::arg("model"), py::arg("kind"), py::arg("n"), py::arg("points") = 401,
      py::arg("epsilon") = 1e-3);

  m.def(
      "lindblad_delta_train",
      [](const RabiModel& model, ProjectorKind kind, int n, double weight, double width,
         const ComplexMatrix& rho0) {
        const double tp = poincare_time(model);
        const DiscreteSchedule schedule(n, tp);
        const RateFunction rate = delta_train_rate(schedule.times(), width * tp, weight, 0.0, tp);
        return integrate(DensityMatrix(rho0), model, projector_set(kind), rate, tp).rho.matrix();
      },
      py::arg("model"), py::arg("kind"), py::arg("n"), py::arg("weight"), py::arg("width"),
      py::arg("rho0"), "Final state at T_P under smoothed measurements; width in units of T_P.");

  m.def(
      "run_experiment",
      [](const py::dict& settings) {
        ExperimentConfig config;
        for (const auto& [key, value] : settings) {
          apply_setting(config, py::str(key).cast<std::string>(), py::str(value).cast<std::string>());
        }
        const RunReport r = run_experiment(config);
        py::list measured;
        for (const auto& c : r.measured) {
          py::dict d;
          d["n"] = c.n;
          d["curve"] = curve_dict(c.curve);
          d["verdict"] = verdict_dict(c.verdict);
          measured.append(d);
        }
        py::dict out;
        out["t_poincare"] = r.t_poincare;
        out["free"] = curve_dict(r.free);
        out["measured"] = measured;
        out["warnings"] = r.warnings;
        return out;
      },
      py::arg("settings") = py::dict(),
      "Run with CLI-style settings, e.g. {'projector': 'full', 'n': '16,64'}.");
}
