#include "nsf1d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace nsf1d::diag {

using riemann::ContactWave;
using riemann::sample_contact;
using solver::GridState;
using thermo::FluidPoint;
using thermo::GasModel;

namespace {

double center_velocity(const GridState& st, int i) { return 0.5 * (st.v[i] + st.v[i + 1]); }

// Edge weight: eta(x/eps) theta_L + eta(-x/eps) theta_R.
double cutoff_weight(double x, double eps, double theta_l, double theta_r) {
  return eta(x / eps) * theta_l + eta(-x / eps) * theta_r;
}

struct PlainRates {
  double nu = 0.0;
  double kappa = 0.0;
};

PlainRates plain_rates(const GasModel&, const GridState& st, double kappa, double nu) {
  PlainRates out;
  const int n = st.n_cells();
  const double dx = st.dx;
  for (int i = 0; i < n; ++i) {
    const double dv = (st.v[i + 1] - st.v[i]) / dx;
    out.nu += nu * dv * dv / (st.tau[i] * st.theta[i]) * dx;
  }
  for (int j = 1; j < n; ++j) {
    const double dth = (st.theta[j] - st.theta[j - 1]) / dx;
    const double tau_e = 0.5 * (st.tau[j - 1] + st.tau[j]);
    const double th_e = 0.5 * (st.theta[j - 1] + st.theta[j]);
    out.kappa += kappa * dth * dth / (tau_e * th_e * th_e) * dx;
  }
  return out;
}

}  // namespace

double total_volume(const GridState& st) {
  double s = 0.0;
  for (double tau : st.tau) s += tau;
  return s * st.dx;
}

double total_momentum(const GridState& st) {
  const int n = st.n_cells();
  double s = 0.5 * (st.v[0] + st.v[n]);
  for (int j = 1; j < n; ++j) s += st.v[j];
  return s * st.dx;
}

double total_energy(const GasModel& gas, const GridState& st) {
  const int n = st.n_cells();
  double s = 0.25 * (st.v[0] * st.v[0] + st.v[n] * st.v[n]);
  for (int j = 1; j < n; ++j) s += 0.5 * st.v[j] * st.v[j];
  for (int i = 0; i < n; ++i) {
    s += gas.elastic_potential(st.tau[i]) + gas.thermal_energy(st.theta[i]);
  }
  return s * st.dx;
}

double total_entropy(const GasModel& gas, const GridState& st) {
  double s = 0.0;
  const int n = st.n_cells();
  for (int i = 0; i < n; ++i) {
    s += gas.entropy_heat(st.theta[i]) - gas.thermal_potential(st.tau[i]);
  }
  return s * st.dx;
}

double entropy_functional(const GasModel& gas, const GridState& st, const ContactWave& wave) {
  const int n = st.n_cells();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = st.cell_center(i);
    const FluidPoint pt{st.tau[i], center_velocity(st, i), st.theta[i]};
    const FluidPoint ref = sample_contact(wave, x, st.t);
    sum += thermo::relative_entropy_density(gas, pt, ref);
  }
  return sum * st.dx;
}

double cutoff_functional(const GasModel& gas, const GridState& st, const ContactWave& wave,
                         double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("cutoff_functional: eps must be positive");
  const int n = st.n_cells();
  const FluidPoint ul{wave.left.tau, wave.v_bar, wave.left.theta};
  const FluidPoint ur{wave.right.tau, wave.v_bar, wave.right.theta};
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = st.cell_center(i);
    const FluidPoint pt{st.tau[i], center_velocity(st, i), st.theta[i]};
    const double wl = eta(x / eps);
    const double wr = eta(-x / eps);
    if (wl > 0.0) sum += wl * thermo::relative_entropy_density(gas, pt, ul);
    if (wr > 0.0) sum += wr * thermo::relative_entropy_density(gas, pt, ur);
  }
  return sum * st.dx;
}

DissipationRate dissipation_rate(const GasModel& gas, const GridState& st,
                                 const ContactWave& wave, double eps, double kappa, double nu) {
  DissipationRate out;
  const auto plain = plain_rates(gas, st, kappa, nu);
  out.nu_plain = plain.nu;
  out.kappa_plain = plain.kappa;
  const int n = st.n_cells();
  const double dx = st.dx;
  const double tl = wave.left.theta;
  const double tr = wave.right.theta;
  for (int i = 0; i < n; ++i) {
    const double dv = (st.v[i + 1] - st.v[i]) / dx;
    out.weighted += cutoff_weight(st.cell_center(i), eps, tl, tr) * nu * dv * dv /
                    (st.tau[i] * st.theta[i]) * dx;
  }
  for (int j = 1; j < n; ++j) {
    const double dth = (st.theta[j] - st.theta[j - 1]) / dx;
    const double tau_e = 0.5 * (st.tau[j - 1] + st.tau[j]);
    const double th_e = 0.5 * (st.theta[j - 1] + st.theta[j]);
    out.weighted += cutoff_weight(st.edge_pos(j), eps, tl, tr) * kappa * dth * dth /
                    (tau_e * th_e * th_e) * dx;
  }
  return out;
}

double entropy_balance_residual(std::span<const GridState> history, const GasModel& gas,
                                double kappa, double nu) {
  if (history.size() < 2) {
    throw std::invalid_argument("entropy_balance_residual: need at least two snapshots");
  }
  double integral = 0.0;
  auto prev = plain_rates(gas, history[0], kappa, nu);
  for (size_t k = 1; k < history.size(); ++k) {
    const auto cur = plain_rates(gas, history[k], kappa, nu);
    const double dt = history[k].t - history[k - 1].t;
    integral += 0.5 * ((prev.nu + prev.kappa) + (cur.nu + cur.kappa)) * dt;
    prev = cur;
  }
  // Zero-flux ends: the boundary term kappa theta_x / (tau theta) vanishes.
  return total_entropy(gas, history.back()) - total_entropy(gas, history.front()) - integral;
}

CancellationResult cancellation_residual(const GasModel& gas, const GridState& st,
                                         const ContactWave& wave, double eps, double kappa,
                                         double nu, CutoffFn cutoff) {
  CancellationResult out;
  const int n = st.n_cells();
  const double dx = st.dx;
  const double p_bar = wave.p_bar;
  const double v_bar = wave.v_bar;

  std::vector<double> p(n), dv(n), vc(n), sig(n);
  for (int i = 0; i < n; ++i) {
    dv[i] = (st.v[i + 1] - st.v[i]) / dx;
    vc[i] = center_velocity(st, i);
    p[i] = gas.p_e(st.tau[i]) + st.theta[i] * gas.p_theta(st.tau[i]);
    sig[i] = nu * dv[i] / st.tau[i];
  }

  // Cell-centered assembly with product-rule stencils for the compound flux
  // derivatives: a flux-difference assembly telescopes to the boundary in
  // exact arithmetic, so it cannot measure the quadrature-level residual the
  // refinement study tracks.
  double sum = 0.0;
  for (int i = 1; i < n - 1; ++i) {
    const double d_sig = (sig[i + 1] - sig[i - 1]) / (2.0 * dx);
    const double d_p = (p[i + 1] - p[i - 1]) / (2.0 * dx);
    const double d_th = (st.theta[i + 1] - st.theta[i - 1]) / (2.0 * dx);
    const double dd_th = (st.theta[i + 1] - 2.0 * st.theta[i] + st.theta[i - 1]) / (dx * dx);
    const double d_tau = (st.tau[i + 1] - st.tau[i - 1]) / (2.0 * dx);
    const double tau = st.tau[i];
    const double d_heat = kappa * (dd_th / tau - d_th * d_tau / (tau * tau));
    const double d_adv = dv[i] * sig[i] + vc[i] * d_sig;
    const double d_pv = p[i] * dv[i] + vc[i] * d_p;
    const double bracket = p_bar * dv[i] - v_bar * (d_sig - d_p) + d_heat + d_adv - d_pv;
    const double x = st.cell_center(i);
    sum += (cutoff(x / eps) + cutoff(-x / eps)) * bracket * dx;
  }
  out.residual = -sum;

  const int outer = std::max(1, n / 10);
  const auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(b));
  };
  for (int i = 0; i < outer && out.farfield_ok; ++i) {
    if (!close(st.tau[i], wave.left.tau) || !close(st.theta[i], wave.left.theta) ||
        !close(vc[i], v_bar)) {
      out.farfield_ok = false;
    }
    const int k = n - 1 - i;
    if (!close(st.tau[k], wave.right.tau) || !close(st.theta[k], wave.right.theta) ||
        !close(vc[k], v_bar)) {
      out.farfield_ok = false;
    }
  }
  return out;
}

GronwallReport gronwall_monitor(std::span<const DiagnosticsRecord> records,
                                const ContactWave& wave, const solver::RunConfig& cfg) {
  GronwallReport rep;
  if (records.empty()) return rep;
  const double min_th = std::min(wave.left.theta, wave.right.theta);
  const double e1_0 = records[0].E1;
  if (cfg.T > 0.0 && records.size() >= 2) {
    double max_gap = 0.0;
    for (size_t k = 1; k < records.size(); ++k) {
      max_gap = std::max(max_gap, records[k].t - records[k - 1].t);
    }
    rep.sample_density_ok = max_gap <= cfg.T / 50.0 + 1e-12;
  }
  const double c1 = cfg.c1 > 0.0 ? cfg.c1 : 2.0 / std::min(wave.left.tau, wave.right.tau);
  const double eps = cfg.effective_eps();
  const double dx = cfg.N > 0 ? 2.0 * cfg.L / cfg.N : 0.0;
  rep.rows.reserve(records.size());
  for (const auto& r : records) {
    GronwallRow row;
    row.t = r.t;
    row.lhs = 0.5 * r.E + 0.25 * min_th * (r.D_nu + r.D_kappa);
    row.rhs_direct = e1_0 + r.coupling_direct;
    row.slack_direct = row.rhs_direct - row.lhs;
    row.rhs_bounded = e1_0 + r.coupling_majorant;
    row.slack_bounded = row.rhs_bounded - row.lhs;
    row.coupling_direct = r.coupling_direct;
    row.coupling_majorant = r.coupling_majorant;
    row.coupling_slack = r.coupling_majorant - r.coupling_direct;
    row.e1_slack = r.e1_slack;
    row.itau_small = r.itau_small;
    row.itau_small_bound = c1 * (2.0 * eps + 3.0 * dx) * r.t;
    row.itau_tail = r.itau_tail;
    row.volume_brackets_integral = r.volume_brackets_integral;
    rep.rows.push_back(row);
  }
  return rep;
}

ContactMonitor::ContactMonitor(const GasModel& gas, const ContactWave& wave,
                               const solver::RunConfig& cfg, MonitorOptions opt)
    : gas_(gas),
      wave_(wave),
      cfg_(cfg),
      eps_(opt.eps > 0.0 ? opt.eps : cfg.effective_eps()),
      c1_(opt.c1 > 0.0 ? opt.c1 : 2.0 / std::min(wave.left.tau, wave.right.tau)),
      per_step_entropy_(opt.per_step_entropy),
      cancellation_at_samples_(opt.cancellation_at_samples) {
  min_entropy_slack_ = std::numeric_limits<double>::infinity();
}

ContactMonitor::Rates ContactMonitor::compute_rates(const GridState& st) const {
  Rates out;
  const int n = st.n_cells();
  const double dx = st.dx;
  const double tl = wave_.left.theta;
  const double tr = wave_.right.theta;
  const double min_th = std::min(tl, tr);
  const double dth_lr = tl - tr;
  const double cauchy_coef = 9.0 * dth_lr * dth_lr / (16.0 * min_th);
  const double kappa = cfg_.kappa;
  const double nu = cfg_.nu;

  for (int i = 0; i < n; ++i) {
    const double dv = (st.v[i + 1] - st.v[i]) / dx;
    const double r = nu * dv * dv / (st.tau[i] * st.theta[i]) * dx;
    out.diss.nu_plain += r;
    out.diss.weighted += cutoff_weight(st.cell_center(i), eps_, tl, tr) * r;
  }
  double prev_w = cutoff_weight(st.cell_center(0), eps_, tl, tr);
  for (int j = 1; j < n; ++j) {
    const double dth = (st.theta[j] - st.theta[j - 1]) / dx;
    const double tau_e = 0.5 * (st.tau[j - 1] + st.tau[j]);
    const double th_e = 0.5 * (st.theta[j - 1] + st.theta[j]);
    const double rk = kappa * dth * dth / (tau_e * th_e * th_e) * dx;
    const double xj = st.edge_pos(j);
    out.diss.kappa_plain += rk;
    out.diss.weighted += cutoff_weight(xj, eps_, tl, tr) * rk;

    const double w = cutoff_weight(st.cell_center(j), eps_, tl, tr);
    out.coupling += (w - prev_w) * kappa * dth / (tau_e * th_e);
    prev_w = w;

    if (std::abs(xj) <= eps_ + dx) {
      out.kappa_layer += rk;
      if (1.0 / tau_e <= c1_) {
        out.itau_small += dx / tau_e;
      } else {
        out.itau_tail += dx / tau_e;
      }
    }
  }
  out.majorant = 0.25 * min_th * out.kappa_layer +
                 cauchy_coef * kappa / (eps_ * eps_) * (out.itau_small + out.itau_tail);
  for (int i = 0; i < n; ++i) {
    const FluidPoint ref = sample_contact(wave_, st.cell_center(i), st.t);
    out.volume_brackets += thermo::volume_brackets(gas_, st.tau[i], ref) * dx;
  }
  return out;
}

void ContactMonitor::ensure_baseline(const GridState& st) {
  if (have_baseline_) return;
  have_baseline_ = true;
  vol0_ = total_volume(st);
  mom0_ = total_momentum(st);
  ene0_ = total_energy(gas_, st);

  const int n = st.n_cells();
  double abs_e = 0.0;
  double c_max = 0.0;
  for (int i = 0; i < n; ++i) {
    abs_e += std::abs(gas_.elastic_potential(st.tau[i]) + gas_.thermal_energy(st.theta[i]));
    const double pt = gas_.p_theta(st.tau[i]);
    const double mod = -gas_.p_e_prime(st.tau[i]) - st.theta[i] * gas_.p_theta_prime(st.tau[i]) +
                       st.theta[i] * pt * pt / gas_.c_v(st.theta[i]);
    if (mod > 0.0) c_max = std::max(c_max, st.tau[i] * std::sqrt(mod));
  }
  double kin = 0.25 * (st.v[0] * st.v[0] + st.v[n] * st.v[n]);
  for (int j = 1; j < n; ++j) kin += 0.5 * st.v[j] * st.v[j];
  ene_scale_ = std::max(abs_e * st.dx + kin * st.dx, 1e-30);
  mom_scale_ = std::max((n * st.dx) * std::max(std::abs(wave_.v_bar), c_max), 1e-30);
}

void ContactMonitor::on_step(const GridState& before, const GridState& after, double dt) {
  ensure_baseline(before);
  if (!have_rates_) {
    prev_rates_ = compute_rates(before);
    have_rates_ = true;
  }
  const Rates now = compute_rates(after);
  const auto trap = [dt](double a, double b) { return 0.5 * (a + b) * dt; };
  acc_.D_nu += trap(prev_rates_.diss.nu_plain, now.diss.nu_plain);
  acc_.D_kappa += trap(prev_rates_.diss.kappa_plain, now.diss.kappa_plain);
  acc_.D_weighted += trap(prev_rates_.diss.weighted, now.diss.weighted);
  acc_.D_kappa_layer += trap(prev_rates_.kappa_layer, now.kappa_layer);
  acc_.coupling_direct += trap(prev_rates_.coupling, now.coupling);
  acc_.coupling_majorant += trap(prev_rates_.majorant, now.majorant);
  acc_.itau_small += trap(prev_rates_.itau_small, now.itau_small);
  acc_.itau_tail += trap(prev_rates_.itau_tail, now.itau_tail);
  acc_.volume_brackets_integral += trap(prev_rates_.volume_brackets, now.volume_brackets);
  prev_rates_ = now;

  // Conservation audits.
  const double dvol = total_volume(after) - total_volume(before);
  const double expected = dt * (before.v[before.n_cells()] - before.v[0]);
  max_volume_dev_ = std::max(max_volume_dev_, std::abs(dvol - expected) / std::abs(vol0_));
  const double mom = total_momentum(after);
  max_momentum_dev_ =
      std::max(max_momentum_dev_, std::abs(mom - total_momentum(before)) / mom_scale_);
  momentum_drift_ = std::max(momentum_drift_, std::abs(mom - mom0_) / mom_scale_);
  energy_drift_ =
      std::max(energy_drift_, std::abs(total_energy(gas_, after) - ene0_) / ene_scale_);
  if (per_step_entropy_) {
    const double slack = total_entropy(gas_, after) - total_entropy(gas_, before);
    min_entropy_slack_ = std::min(min_entropy_slack_, slack);
  }
}

DiagnosticsRecord ContactMonitor::on_sample(const GridState& st) {
  ensure_baseline(st);
  DiagnosticsRecord r = acc_;
  r.t = st.t;
  r.E = entropy_functional(gas_, st, wave_);
  r.E1 = cutoff_functional(gas_, st, wave_, eps_);
  r.e1_slack = r.E1 - 0.5 * r.E;
  r.min_tau = *std::min_element(st.tau.begin(), st.tau.end());
  r.min_theta = *std::min_element(st.theta.begin(), st.theta.end());
  r.E_over_sqrt_kappa =
      cfg_.kappa > 0.0 ? r.E / std::sqrt(cfg_.kappa) : std::numeric_limits<double>::quiet_NaN();
  if (cancellation_at_samples_) {
    r.cancel_residual =
        cancellation_residual(gas_, st, wave_, eps_, cfg_.kappa, cfg_.nu).residual;
  }

  const double entropy_now = total_entropy(gas_, st);
  const double diss_now = r.D_nu + r.D_kappa;
  if (!have_first_sample_) {
    have_first_sample_ = true;
    e1_initial_ = r.E1;
    r.entropy_residual = 0.0;
  } else {
    r.entropy_residual = (entropy_now - prev_sample_entropy_) - (diss_now - prev_sample_diss_);
  }
  prev_sample_entropy_ = entropy_now;
  prev_sample_diss_ = diss_now;

  const double min_th = std::min(wave_.left.theta, wave_.right.theta);
  const double lhs = 0.5 * r.E + 0.25 * min_th * diss_now;
  r.gronwall_slack = (e1_initial_ + r.coupling_direct) - lhs;
  r.gronwall_slack_bounded = (e1_initial_ + r.coupling_majorant) - lhs;

  // Far-field guard: the outer 10% of cells must still be the pure states.
  const int n = st.n_cells();
  const int outer = std::max(1, n / 10);
  const auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(b));
  };
  for (int i = 0; i < outer && farfield_ok_; ++i) {
    const int k = n - 1 - i;
    if (!close(st.tau[i], wave_.left.tau) || !close(st.theta[i], wave_.left.theta) ||
        !close(center_velocity(st, i), wave_.v_bar) || !close(st.tau[k], wave_.right.tau) ||
        !close(st.theta[k], wave_.right.theta) || !close(center_velocity(st, k), wave_.v_bar)) {
      farfield_ok_ = false;
    }
  }
  return r;
}

void write_diagnostics_csv(std::ostream& os, std::span<const DiagnosticsRecord> records) {
  os << "t,E,E1,Dnu,Dkappa,entropy_residual,cancel_residual,e1_slack,gronwall_slack,"
        "min_tau,min_theta,E_over_sqrtkappa\n";
  char buf[512];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.t, r.E, r.E1, r.D_nu, r.D_kappa, r.entropy_residual, r.cancel_residual,
                  r.e1_slack, r.gronwall_slack, r.min_tau, r.min_theta, r.E_over_sqrt_kappa);
    os << buf;
  }
}

}  // namespace nsf1d::diag
