#pragma once

namespace nsf1d::diag {

/// Per-sample-time diagnostics of a contact run. The first twelve fields make
/// up the diagnostics CSV schema; the rest is bookkeeping for the budget
/// monitor and not serialized.
struct DiagnosticsRecord {
  double t = 0.0;
  double E = 0.0;                  ///< entropy functional
  double E1 = 0.0;                 ///< cutoff entropy functional
  double D_nu = 0.0;               ///< accumulated viscous dissipation, 1/(tau theta) weight
  double D_kappa = 0.0;            ///< accumulated heat dissipation, 1/(tau theta^2) weight
  double entropy_residual = 0.0;   ///< entropy balance residual since the previous sample
  double cancel_residual = 0.0;    ///< flux-telescoping residual at this sample
  double e1_slack = 0.0;           ///< E1 - E/2
  double gronwall_slack = 0.0;     ///< budget slack with the measured coupling term
  double min_tau = 0.0;
  double min_theta = 0.0;
  double E_over_sqrt_kappa = 0.0;

  // Budget bookkeeping (accumulated over [0, t]).
  double D_weighted = 0.0;          ///< cutoff-weighted dissipation
  double D_kappa_layer = 0.0;       ///< heat dissipation restricted to the cutoff layer
  double coupling_direct = 0.0;     ///< measured coupling term
  double coupling_majorant = 0.0;   ///< Cauchy bound: min-theta quarter + layer 1/tau term
  double gronwall_slack_bounded = 0.0;  ///< budget slack with the majorant coupling
  double itau_small = 0.0;          ///< layer integral of 1/tau where 1/tau <= C1
  double itau_tail = 0.0;           ///< layer integral of 1/tau where 1/tau > C1
  double volume_brackets_integral = 0.0;  ///< time integral of the tau-bracket mass
  long floor_hits = 0;
};

}  // namespace nsf1d::diag
