#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nsf1d/diagnostics.hpp"
#include "nsf1d/harness.hpp"

namespace {

using nsf1d::harness::GasSelection;
using nsf1d::harness::StudyParams;
using nsf1d::harness::WaveSpec;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Flat key=value config: values apply to options of `cmd` that were not
// given on the command line, so flags override the file.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    CLI::Option* opt = nullptr;
    try {
      opt = cmd->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                               "'");
    }
    if (opt->count() > 0) continue;  // command line wins
    std::istringstream vs(value);
    std::string token;
    while (vs >> token) opt->add_result(token);
    opt->run_callback();
  }
}

void add_gas_options(CLI::App* cmd, GasSelection& gas) {
  cmd->add_option("--gas", gas.name, "gas model: ideal | ideal_elastic | thermal_power")
      ->check(CLI::IsMember({"ideal", "ideal_elastic", "thermal_power"}));
  cmd->add_option("--R", gas.R, "thermal pressure constant (p_theta = R/tau)");
  cmd->add_option("--Cv", gas.c_v, "specific heat");
  cmd->add_option("--A", gas.A, "elastic pressure amplitude (ideal_elastic)");
  cmd->add_option("--B", gas.B, "thermal power-law amplitude (thermal_power)");
  cmd->add_option("--gamma", gas.gamma, "power-law exponent, >= 2");
  cmd->add_option("--tau_ref", gas.tau_ref, "volume reference for the potentials");
  cmd->add_option("--theta_ref", gas.theta_ref, "temperature reference for Q");
}

void add_wave_options(CLI::App* cmd, WaveSpec& wave) {
  cmd->add_option("--tau_l", wave.tau_l, "left specific volume");
  cmd->add_option("--v", wave.v, "shared velocity");
  cmd->add_option("--theta_l", wave.theta_l, "left temperature");
  cmd->add_option("--tau_r", wave.tau_r, "right specific volume");
}

void add_run_options(CLI::App* cmd, StudyParams& p) {
  cmd->add_option("--kappa", p.kappa, "heat conductivity");
  cmd->add_option("--nu", p.nu, "viscosity");
  cmd->add_option("--N", p.N, "cell count (0: resolution rule)");
  cmd->add_option("--L", p.L, "domain half-width");
  cmd->add_option("--T", p.T, "final time");
  cmd->add_option("--delta", p.delta, "initial layer width (0: sqrt(kappa))");
  cmd->add_option("--cfl", p.cfl, "CFL safety factor in (0,1)");
  cmd->add_option("--samples", p.samples, "number of uniform sample times");
  cmd->add_option("--eps", p.eps, "diagnostics layer width (0: sqrt(kappa))");
  cmd->add_option("--c1", p.c1, "tail split constant (0: 2/min tau)");
  cmd->add_option("--tau_floor", p.tau_floor, "positivity floor for tau");
  cmd->add_option("--theta_floor", p.theta_floor, "positivity floor for theta");
}

int cmd_riemann(const GasSelection& gassel, const WaveSpec& wavespec) {
  const auto gas = nsf1d::harness::make_gas(gassel);
  const auto wave = nsf1d::harness::make_wave(gas, wavespec);
  nsf1d::riemann::validate(gas, wave);
  const double pl = nsf1d::thermo::pressure(gas, wave.left);
  const double pr = nsf1d::thermo::pressure(gas, wave.right);
  std::printf("gas=%s\n", gas.name().c_str());
  std::printf("tau_L=%.17g\n", wave.left.tau);
  std::printf("theta_L=%.17g\n", wave.left.theta);
  std::printf("tau_R=%.17g\n", wave.right.tau);
  std::printf("theta_R=%.17g\n", wave.right.theta);
  std::printf("v_bar=%.17g\n", wave.v_bar);
  std::printf("p_bar=%.17g\n", wave.p_bar);
  std::printf("pressure_mismatch=%.17g\n", std::abs(pl - pr));
  std::printf("admissible=1\n");
  return 0;
}

int cmd_simulate(const StudyParams& params, const std::string& out_path,
                 const std::string& diag_path) {
  const auto study = nsf1d::harness::run_study(params);
  if (!study.error.empty()) {
    std::fprintf(stderr, "run failed: %s\n", study.error.c_str());
    return 1;
  }
  if (!out_path.empty()) {
    std::ofstream os(out_path);
    os << "x,tau,v,theta\n";
    const auto& st = study.final_state;
    char buf[256];
    for (int i = 0; i < st.n_cells(); ++i) {
      const double vc = 0.5 * (st.v[i] + st.v[i + 1]);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", st.cell_center(i), st.tau[i],
                    vc, st.theta[i]);
      os << buf;
    }
  }
  if (!diag_path.empty()) {
    std::ofstream os(diag_path);
    nsf1d::diag::write_diagnostics_csv(os, study.records);
  }
  std::printf("kappa=%.17g\n", study.kappa);
  std::printf("nu=%.17g\n", study.nu);
  std::printf("N=%ld\n", study.N);
  std::printf("steps=%ld\n", study.steps);
  std::printf("E0=%.17g\n", study.records.front().E);
  std::printf("ET=%.17g\n", study.records.back().E);
  std::printf("ET_over_sqrtkappa=%.17g\n",
              study.kappa > 0 ? study.records.back().E / std::sqrt(study.kappa) : 0.0);
  std::printf("floor_hits=%ld\n", study.floor_hits);
  std::printf("under_resolved=%d\n", int(study.under_resolved));
  std::printf("farfield_ok=%d\n", int(study.farfield_ok));
  if (study.under_resolved) {
    std::fprintf(stderr, "warning: layer under-resolved (dx > delta/8)\n");
  }
  return study.flagged() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D Lagrangian Navier-Stokes-Fourier contact-discontinuity laboratory"};
  app.require_subcommand(1);

  // riemann ------------------------------------------------------------
  auto* rie = app.add_subcommand("riemann", "construct a contact wave and report admissibility");
  GasSelection rie_gas;
  WaveSpec rie_wave;
  add_gas_options(rie, rie_gas);
  add_wave_options(rie, rie_wave);

  // simulate -----------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "run one contact study");
  StudyParams sim_params;
  std::string sim_out = "snapshot.csv";
  std::string sim_diag;
  add_gas_options(sim, sim_params.gas);
  add_wave_options(sim, sim_params.wave);
  add_run_options(sim, sim_params);
  sim->add_option("--out", sim_out, "final snapshot CSV path (x,tau,v,theta)");
  sim->add_option("--diag", sim_diag, "diagnostics CSV path");
  std::string sim_config;
  sim->add_option("--config", sim_config, "flat key=value config file; flags override");

  // sweep ----------------------------------------------------------------
  auto* swp = app.add_subcommand("sweep", "kappa/nu sweep with rate fit");
  nsf1d::harness::SweepPlan plan;
  plan.kappas = {1e-2, 1e-3, 1e-4};
  std::string swp_out = "report.csv";
  std::string swp_plot = "plot.dat";
  add_gas_options(swp, plan.gas);
  add_wave_options(swp, plan.wave);
  swp->add_option("--kappas", plan.kappas, "kappa values (descending)");
  swp->add_option("--nus", plan.nus, "viscosity values");
  swp->add_option("--T", plan.T, "final time");
  swp->add_option("--L", plan.L, "domain half-width");
  swp->add_option("--cfl", plan.cfl, "CFL safety factor");
  swp->add_option("--samples", plan.samples, "sample times per run");
  swp->add_option("--jobs", plan.jobs, "worker threads (0: hardware)");
  swp->add_option("--repeat", plan.repetitions, "repetitions for determinism checks");
  swp->add_option("--factor", plan.resolution_factor, "cells per sqrt(kappa) unit");
  swp->add_option("--n_min", plan.n_min, "minimum cell count");
  swp->add_option("--n_cap", plan.n_cap, "memory guard on the cell count");
  swp->add_option("--out", swp_out, "report CSV path");
  swp->add_option("--plot", swp_plot, "log-log plot data path");
  swp->add_option("--diag_dir", plan.diag_dir, "directory for per-run diagnostics CSVs");
  std::string swp_config;
  swp->add_option("--config", swp_config, "flat key=value config file; flags override");

  // check ------------------------------------------------------------
  auto* chk = app.add_subcommand("check", "run a verification suite");
  std::string suite = "all";
  bool fast = false;
  chk->add_option("suite", suite,
                  "eta | thermo | oracle | conservation | entropy_balance | cancellation | "
                  "e1 | gronwall | rate | nu_uniformity | all");
  chk->add_flag("--fast", fast, "desk-scale variant");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rie->parsed()) return cmd_riemann(rie_gas, rie_wave);
    if (sim->parsed()) {
      if (!sim_config.empty()) apply_config_file(sim, sim_config);
      return cmd_simulate(sim_params, sim_out, sim_diag);
    }
    if (swp->parsed()) {
      if (!swp_config.empty()) apply_config_file(swp, swp_config);
      const auto report = nsf1d::harness::sweep(plan);
      {
        std::ofstream os(swp_out);
        nsf1d::harness::write_report_csv(os, report);
      }
      {
        std::ofstream os(swp_plot);
        nsf1d::harness::write_plot_data(os, report);
      }
      std::printf("rows=%zu\n", report.rows.size());
      std::printf("slope=%.17g\n", report.slope);
      std::printf("intercept=%.17g\n", report.intercept);
      std::printf("ratio_max_min=%.17g\n", report.ratio_max_min);
      std::printf("flagged=%d\n", int(report.any_flagged));
      return report.any_flagged ? 2 : 0;
    }
    if (chk->parsed()) {
      const auto results = nsf1d::harness::check(suite, fast);
      bool all = true;
      for (const auto& r : results) {
        std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        all = all && r.pass;
      }
      return all ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
