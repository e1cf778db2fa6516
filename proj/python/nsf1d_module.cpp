#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <utility>
#include <vector>

#include "nsf1d/cutoff.hpp"
#include "nsf1d/diagnostics.hpp"
#include "nsf1d/harness.hpp"
#include "nsf1d/riemann.hpp"
#include "nsf1d/solver.hpp"
#include "nsf1d/thermo.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

using nsf1d::riemann::ContactWave;
using nsf1d::thermo::FluidPoint;
using nsf1d::thermo::GasModel;

namespace {

py::dict simulate(const GasModel& gas, const ContactWave& wave, nsf1d::solver::RunConfig cfg) {
  if (cfg.sample_times.empty()) cfg.sample_times = nsf1d::solver::uniform_samples(cfg.T, 51);
  if (cfg.delta <= 0.0) cfg.delta = std::sqrt(cfg.kappa);
  const auto profile = nsf1d::riemann::well_prepared_init(gas, wave, cfg.delta);
  nsf1d::diag::ContactMonitor monitor(gas, wave, cfg);
  const auto rr = nsf1d::solver::run(gas, cfg, profile, monitor);

  std::vector<double> t, E, E1, Dnu, Dkappa, e1_slack, gronwall_slack, min_tau, min_theta;
  for (const auto& s : rr.samples) {
    const auto& r = s.record;
    t.push_back(r.t);
    E.push_back(r.E);
    E1.push_back(r.E1);
    Dnu.push_back(r.D_nu);
    Dkappa.push_back(r.D_kappa);
    e1_slack.push_back(r.e1_slack);
    gronwall_slack.push_back(r.gronwall_slack);
    min_tau.push_back(r.min_tau);
    min_theta.push_back(r.min_theta);
  }
  const auto& last = rr.samples.back().state;
  std::vector<double> x(last.n_cells()), v_center(last.n_cells());
  for (int i = 0; i < last.n_cells(); ++i) {
    x[i] = last.cell_center(i);
    v_center[i] = 0.5 * (last.v[i] + last.v[i + 1]);
  }

  py::dict out;
  out["t"] = t;
  out["E"] = E;
  out["E1"] = E1;
  out["Dnu"] = Dnu;
  out["Dkappa"] = Dkappa;
  out["e1_slack"] = e1_slack;
  out["gronwall_slack"] = gronwall_slack;
  out["min_tau"] = min_tau;
  out["min_theta"] = min_theta;
  out["x"] = x;
  out["tau"] = last.tau;
  out["v"] = v_center;
  out["theta"] = last.theta;
  out["steps"] = rr.steps;
  out["floor_hits"] = rr.floor_hits_tau + rr.floor_hits_theta;
  out["under_resolved"] = rr.under_resolved;
  out["energy_drift"] = monitor.energy_drift();
  out["momentum_drift"] = monitor.momentum_drift();
  return out;
}

}  // namespace

PYBIND11_MODULE(pynsf1d, m) {
  m.doc() = "1D Lagrangian Navier-Stokes-Fourier contact-discontinuity laboratory";

  py::class_<FluidPoint>(m, "FluidPoint")
      .def(py::init<double, double, double>(), "tau"_a, "v"_a, "theta"_a)
      .def_readwrite("tau", &FluidPoint::tau)
      .def_readwrite("v", &FluidPoint::v)
      .def_readwrite("theta", &FluidPoint::theta)
      .def("__repr__", [](const FluidPoint& p) {
        return "FluidPoint(tau=" + std::to_string(p.tau) + ", v=" + std::to_string(p.v) +
               ", theta=" + std::to_string(p.theta) + ")";
      });

  py::class_<GasModel>(m, "GasModel")
      .def_property_readonly("name", &GasModel::name)
      .def_property_readonly("gamma", &GasModel::gamma)
      .def("p_e", &GasModel::p_e)
      .def("p_theta", &GasModel::p_theta)
      .def("c_v", &GasModel::c_v);

  m.def("ideal_gas", &nsf1d::thermo::make_ideal_gas, "R"_a, "c_v"_a, "tau_ref"_a = 1.0,
        "theta_ref"_a = 0.0);
  m.def("ideal_elastic_gas", &nsf1d::thermo::make_ideal_elastic_gas, "R"_a, "c_v"_a, "A"_a,
        "gamma"_a, "tau_ref"_a = 1.0, "theta_ref"_a = 0.0);
  m.def("thermal_power_gas", &nsf1d::thermo::make_thermal_power_gas, "B"_a, "gamma"_a, "c_v"_a,
        "theta_ref"_a = 0.0);

  m.def("pressure", &nsf1d::thermo::pressure, "gas"_a, "pt"_a);
  m.def("internal_energy", &nsf1d::thermo::internal_energy, "gas"_a, "pt"_a);
  m.def("entropy", &nsf1d::thermo::entropy, "gas"_a, "pt"_a);
  m.def("relative_entropy_density", &nsf1d::thermo::relative_entropy_density, "gas"_a, "pt"_a,
        "ref"_a);
  m.def("relative_entropy_flux_density", &nsf1d::thermo::relative_entropy_flux_density, "gas"_a,
        "pt"_a, "ref"_a);

  m.def("eta", [](double x) { return nsf1d::diag::eta(x); }, "x"_a);
  m.def("eta_prime", [](double x) { return nsf1d::diag::eta_prime(x); }, "x"_a);

  py::class_<ContactWave>(m, "ContactWave")
      .def_readonly("left", &ContactWave::left)
      .def_readonly("right", &ContactWave::right)
      .def_readonly("v_bar", &ContactWave::v_bar)
      .def_readonly("p_bar", &ContactWave::p_bar);

  m.def("make_contact", &nsf1d::riemann::make_contact, "gas"_a, "left"_a, "tau_right"_a);
  m.def("sample_contact", &nsf1d::riemann::sample_contact, "wave"_a, "x"_a, "t"_a);

  py::class_<nsf1d::solver::RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("kappa", &nsf1d::solver::RunConfig::kappa)
      .def_readwrite("nu", &nsf1d::solver::RunConfig::nu)
      .def_readwrite("L", &nsf1d::solver::RunConfig::L)
      .def_readwrite("N", &nsf1d::solver::RunConfig::N)
      .def_readwrite("T", &nsf1d::solver::RunConfig::T)
      .def_readwrite("delta", &nsf1d::solver::RunConfig::delta)
      .def_readwrite("cfl", &nsf1d::solver::RunConfig::cfl)
      .def_readwrite("sample_times", &nsf1d::solver::RunConfig::sample_times)
      .def_readwrite("tau_floor", &nsf1d::solver::RunConfig::tau_floor)
      .def_readwrite("theta_floor", &nsf1d::solver::RunConfig::theta_floor)
      .def_readwrite("eps", &nsf1d::solver::RunConfig::eps)
      .def_readwrite("c1", &nsf1d::solver::RunConfig::c1);

  m.def("simulate", &simulate, "gas"_a, "wave"_a, "config"_a,
        "Run one contact study; returns per-sample diagnostics and the final snapshot.");

  m.def("fit_rate", [](const std::vector<std::pair<double, double>>& pairs) {
    const auto fit = nsf1d::harness::fit_rate(pairs);
    py::dict out;
    out["slope"] = fit.slope;
    out["intercept"] = fit.intercept;
    out["residual_norm"] = fit.residual_norm;
    return out;
  });

  m.def("tail_ratio_bound",
        [](const GasModel& gas, const FluidPoint& ref, double c1, double tau_min) {
          const auto b = nsf1d::thermo::tail_ratio_bound(gas, ref, c1, tau_min);
          py::dict out;
          out["sup"] = b.sup;
          out["diverges"] = b.diverges;
          return out;
        },
        "gas"_a, "ref"_a, "c1"_a, "tau_min"_a);
}
