#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "nsf1d/cutoff.hpp"
#include "nsf1d/records.hpp"
#include "nsf1d/riemann.hpp"
#include "nsf1d/solver.hpp"
#include "nsf1d/thermo.hpp"

namespace nsf1d::diag {

// Discrete totals on a snapshot (midpoint rule; edge velocities with half
// weights at the two boundary edges).
double total_volume(const solver::GridState& st);
double total_momentum(const solver::GridState& st);
double total_energy(const thermo::GasModel& gas, const solver::GridState& st);
double total_entropy(const thermo::GasModel& gas, const solver::GridState& st);

/// Entropy functional against the sharp contact sampled at the snapshot time.
/// Midpoint quadrature of the relative entropy density; edge velocities are
/// averaged to centers.
double entropy_functional(const thermo::GasModel& gas, const solver::GridState& st,
                          const riemann::ContactWave& wave);

/// Cutoff entropy functional: relative entropies against the pure half states
/// weighted by eta(x/eps) and eta(-x/eps).
double cutoff_functional(const thermo::GasModel& gas, const solver::GridState& st,
                         const riemann::ContactWave& wave, double eps);

struct DissipationRate {
  double weighted = 0.0;     ///< cutoff-and-temperature weighted rate
  double nu_plain = 0.0;     ///< integral of nu v_x^2 / (tau theta)
  double kappa_plain = 0.0;  ///< integral of kappa theta_x^2 / (tau theta^2)
};

DissipationRate dissipation_rate(const thermo::GasModel& gas, const solver::GridState& st,
                                 const riemann::ContactWave& wave, double eps, double kappa,
                                 double nu);

/// Entropy balance over a snapshot history: change of the total entropy minus
/// the trapezoid time integral of the dissipation rates (the boundary heat
/// flux vanishes with the zero-flux ends). Requires at least two snapshots.
double entropy_balance_residual(std::span<const solver::GridState> history,
                                const thermo::GasModel& gas, double kappa, double nu);

struct CancellationResult {
  double residual = 0.0;
  bool farfield_ok = true;  ///< outer cells matched the pure states to 1e-8
};

using CutoffFn = double (*)(double);

/// Discrete form of the flux integral that the cutoff symmetry cancels: the
/// combined weight eta(x/eps) + eta(-x/eps) against the divergence bracket of
/// the momentum/energy fluxes, assembled term by term with centered stencils.
/// Vanishes in the continuum; discretely O(dx^2). A shifted cutoff breaks the
/// symmetry and leaves an O(1) residual.
CancellationResult cancellation_residual(const thermo::GasModel& gas,
                                         const solver::GridState& st,
                                         const riemann::ContactWave& wave, double eps,
                                         double kappa, double nu, CutoffFn cutoff = &eta);

struct GronwallRow {
  double t = 0.0;
  double lhs = 0.0;  ///< E/2 + min(theta)/4 * (D_nu + D_kappa)
  double rhs_direct = 0.0;
  double slack_direct = 0.0;
  double rhs_bounded = 0.0;
  double slack_bounded = 0.0;
  double coupling_direct = 0.0;
  double coupling_majorant = 0.0;
  double coupling_slack = 0.0;  ///< majorant - direct
  double e1_slack = 0.0;
  // Layer 1/tau mass split at C1, with the bounded-part estimate
  // C1 (2 eps + 3 dx) t; the tail part is controlled by the volume brackets.
  double itau_small = 0.0;
  double itau_small_bound = 0.0;
  double itau_tail = 0.0;
  double volume_brackets_integral = 0.0;
};

struct GronwallReport {
  std::vector<GronwallRow> rows;
  bool sample_density_ok = true;  ///< sample spacing <= T/50
};

/// Evaluates the dissipation budget chain on a record stream: the budget
/// inequality with the measured coupling term, the same with the Cauchy
/// majorant of the coupling term, and the cutoff lower-bound slack.
GronwallReport gronwall_monitor(std::span<const DiagnosticsRecord> records,
                                const riemann::ContactWave& wave, const solver::RunConfig& cfg);

struct MonitorOptions {
  double eps = 0.0;            ///< <= 0: from config
  double c1 = 0.0;             ///< <= 0: 2 / min(tau_L, tau_R)
  bool per_step_entropy = false;
  bool cancellation_at_samples = true;
};

/// Run observer for contact studies. Accumulates the dissipation and coupling
/// integrals per step (trapezoid in time), produces a DiagnosticsRecord at
/// every sample time, and audits the conservation identities.
class ContactMonitor : public solver::RunObserver {
 public:
  ContactMonitor(const thermo::GasModel& gas, const riemann::ContactWave& wave,
                 const solver::RunConfig& cfg, MonitorOptions opt = {});

  void on_step(const solver::GridState& before, const solver::GridState& after,
               double dt) override;
  DiagnosticsRecord on_sample(const solver::GridState& st) override;

  // Conservation audit (relative to the initial totals / derived scales).
  double energy_drift() const { return energy_drift_; }
  double momentum_drift() const { return momentum_drift_; }
  double max_volume_step_dev() const { return max_volume_dev_; }
  double max_momentum_step_dev() const { return max_momentum_dev_; }
  double min_entropy_step_slack() const { return min_entropy_slack_; }
  bool farfield_ok() const { return farfield_ok_; }
  double eps() const { return eps_; }
  double c1() const { return c1_; }

 private:
  struct Rates {
    DissipationRate diss;
    double kappa_layer = 0.0;
    double coupling = 0.0;
    double majorant = 0.0;
    double itau_small = 0.0;
    double itau_tail = 0.0;
    double volume_brackets = 0.0;
  };
  Rates compute_rates(const solver::GridState& st) const;
  void ensure_baseline(const solver::GridState& st);

  const thermo::GasModel& gas_;
  riemann::ContactWave wave_;
  solver::RunConfig cfg_;
  double eps_;
  double c1_;
  bool per_step_entropy_;
  bool cancellation_at_samples_;

  bool have_baseline_ = false;
  double vol0_ = 0.0, mom0_ = 0.0, ene0_ = 0.0;
  double ene_scale_ = 1.0, mom_scale_ = 1.0;

  bool have_rates_ = false;
  Rates prev_rates_;
  DiagnosticsRecord acc_;  ///< running accumulators (t ignored)

  bool have_first_sample_ = false;
  double e1_initial_ = 0.0;
  double prev_sample_entropy_ = 0.0;
  double prev_sample_diss_ = 0.0;

  double energy_drift_ = 0.0;
  double momentum_drift_ = 0.0;
  double max_volume_dev_ = 0.0;
  double max_momentum_dev_ = 0.0;
  double min_entropy_slack_ = 0.0;
  bool farfield_ok_ = true;
};

/// Writes the pinned diagnostics CSV schema:
/// t,E,E1,Dnu,Dkappa,entropy_residual,cancel_residual,e1_slack,gronwall_slack,
/// min_tau,min_theta,E_over_sqrtkappa
void write_diagnostics_csv(std::ostream& os, std::span<const DiagnosticsRecord> records);

}  // namespace nsf1d::diag
