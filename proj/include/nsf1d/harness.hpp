#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nsf1d/diagnostics.hpp"
#include "nsf1d/riemann.hpp"
#include "nsf1d/solver.hpp"
#include "nsf1d/thermo.hpp"

namespace nsf1d::harness {

/// Named gas selection for CLI/config use.
struct GasSelection {
  std::string name = "ideal";  ///< ideal | ideal_elastic | thermal_power
  double R = 1.0;
  double c_v = 1.5;
  double A = 1.0;
  double B = 1.0;
  double gamma = 2.0;
  double tau_ref = 1.0;
  double theta_ref = 0.0;
};

thermo::GasModel make_gas(const GasSelection& sel);

struct WaveSpec {
  double tau_l = 1.0;
  double v = 0.0;
  double theta_l = 1.0;
  double tau_r = 2.0;
};

riemann::ContactWave make_wave(const thermo::GasModel& gas, const WaveSpec& spec);

/// Parameters of one monitored contact run.
struct StudyParams {
  GasSelection gas;
  WaveSpec wave;
  double kappa = 1e-3;
  double nu = 0.0;
  double T = 0.2;
  double L = 1.0;
  double cfl = 0.8;
  long N = 0;          ///< 0: resolution rule
  int samples = 51;
  double delta = 0.0;  ///< <= 0: sqrt(kappa)
  double eps = 0.0;    ///< <= 0: sqrt(kappa)
  double c1 = 0.0;     ///< <= 0: 2/min(tau)
  double tau_floor = 1e-10;
  double theta_floor = 1e-10;
  bool per_step_entropy = false;
};

struct ContactStudy {
  double kappa = 0.0, nu = 0.0;
  long N = 0;
  double dx = 0.0;
  solver::RunConfig cfg;  ///< the effective configuration of the run
  std::vector<diag::DiagnosticsRecord> records;
  solver::GridState final_state;
  double energy_drift = 0.0, momentum_drift = 0.0;
  double max_volume_dev = 0.0, max_momentum_dev = 0.0;
  double min_entropy_step = 0.0;
  bool farfield_ok = true, under_resolved = false;
  long floor_hits = 0, steps = 0;
  std::string error;  ///< nonempty when the run failed

  bool flagged() const { return !error.empty() || floor_hits > 0; }
};

ContactStudy run_study(const StudyParams& params);

struct SweepPlan {
  std::vector<double> kappas;  ///< positive, distinct; sorted descending internally
  std::vector<double> nus = {0.0};
  GasSelection gas;
  WaveSpec wave;
  double T = 0.2;
  double L = 1.0;
  double cfl = 0.8;
  int samples = 51;
  int jobs = 0;  ///< worker threads; 0: hardware concurrency
  int repetitions = 1;
  double resolution_factor = 80.0;  ///< N = max(n_min, ceil(factor L / sqrt(kappa)))
  long n_min = 2000;
  long n_cap = 200000;  ///< memory guard
  std::string diag_dir;  ///< when set, per-run diagnostics CSVs land here

  long n_for(double kappa) const;
};

struct RateRow {
  double nu = 0.0, kappa = 0.0;
  long N = 0;
  double E0 = 0.0, ET = 0.0, ET_over_sqrt_kappa = 0.0;
  double D_nu = 0.0, D_kappa = 0.0;
  double min_e1_slack = 0.0, min_gronwall_slack = 0.0, min_coupling_slack = 0.0;
  double energy_drift = 0.0, momentum_drift = 0.0, max_volume_dev = 0.0;
  bool flagged = false;
  std::string flag_reason;
};

struct RateReport {
  std::vector<RateRow> rows;  ///< sorted by (nu, kappa descending)
  double slope = 0.0, intercept = 0.0, residual_norm = 0.0;
  double ratio_max_min = 0.0;  ///< spread of ET / sqrt(kappa) across rows
  bool any_flagged = false;
};

/// Runs every (kappa, nu) combination on a bounded worker pool and merges the
/// rows deterministically. Row failures are flagged, the sweep continues.
RateReport sweep(const SweepPlan& plan);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_norm = 0.0;
};

/// Ordinary least squares of log(E) against log(kappa). Requires at least
/// three pairs with positive entries.
FitResult fit_rate(std::span<const std::pair<double, double>> pairs);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs a named verification suite. Known suites: eta, thermo, oracle,
/// conservation, entropy_balance, cancellation, e1, gronwall, rate,
/// nu_uniformity, all. Throws std::invalid_argument on unknown names.
std::vector<CheckResult> check(const std::string& suite, bool fast = false);

struct AcceptanceReport {
  std::vector<CheckResult> criteria;
  bool all_pass = true;
};

/// The full acceptance battery (the ten numbered criteria), sharing the rate
/// sweep runs across the criteria that audit them.
AcceptanceReport run_acceptance(bool fast = false);

void write_report_csv(std::ostream& os, const RateReport& report);
void write_plot_data(std::ostream& os, const RateReport& report);

}  // namespace nsf1d::harness
