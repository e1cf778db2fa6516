#include "nsf1d/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsf1d/tridiagonal.hpp"

namespace nsf1d::solver {

void solve_symmetric_tridiagonal(std::span<const double> diag, std::span<const double> off,
                                 std::span<double> x, std::vector<double>& scratch) {
  const int n = static_cast<int>(diag.size());
  scratch.resize(n);
  double pivot = diag[0];
  if (!(pivot > 0.0)) throw SolverError("tridiagonal solve: non-positive pivot", 0);
  scratch[0] = 0.0;
  x[0] /= pivot;
  for (int i = 1; i < n; ++i) {
    const double c = off[i - 1] / pivot;
    scratch[i] = c;
    pivot = diag[i] - off[i - 1] * c;
    if (!(pivot > 0.0)) throw SolverError("tridiagonal solve: non-positive pivot", i);
    x[i] = (x[i] - off[i - 1] * x[i - 1]) / pivot;
  }
  for (int i = n - 2; i >= 0; --i) {
    x[i] -= scratch[i + 1] * x[i + 1];
  }
}

void RunConfig::validate() const {
  if (N < 8 || N % 2 != 0) throw std::invalid_argument("config: N must be even and >= 8");
  if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("config: cfl must be in (0,1)");
  if (!(tau_floor > 0.0 && theta_floor > 0.0)) {
    throw std::invalid_argument("config: positivity floors must be positive");
  }
  if (!(L > 0.0) || !(T >= 0.0)) throw std::invalid_argument("config: L > 0 and T >= 0 required");
  if (kappa < 0.0 || nu < 0.0) throw std::invalid_argument("config: kappa, nu must be >= 0");
  if (sample_times.empty()) throw std::invalid_argument("config: sample_times must be nonempty");
  double prev = -1.0;
  for (double ts : sample_times) {
    if (!(ts >= 0.0 && ts <= T * (1.0 + 1e-12)) || ts <= prev) {
      throw std::invalid_argument("config: sample_times must increase within [0, T]");
    }
    prev = ts;
  }
}

double RunConfig::effective_eps() const {
  if (eps > 0.0) return eps;
  if (kappa > 0.0) return std::sqrt(kappa);
  return delta > 0.0 ? delta : 1.0;
}

std::vector<double> uniform_samples(double T, int count) {
  if (T <= 0.0) return {0.0};
  if (count <= 1) return {T};
  std::vector<double> ts(count);
  for (int k = 0; k < count; ++k) ts[k] = T * k / double(count - 1);
  ts.back() = T;
  return ts;
}

GridState init_grid(const RunConfig& cfg, const riemann::InitialProfile& profile) {
  cfg.validate();
  GridState st;
  st.dx = 2.0 * cfg.L / cfg.N;
  st.x0 = -cfg.L;
  st.t = 0.0;
  st.tau.resize(cfg.N);
  st.theta.resize(cfg.N);
  st.v.resize(cfg.N + 1);
  for (int i = 0; i < cfg.N; ++i) {
    const auto pt = profile(st.cell_center(i));
    st.tau[i] = pt.tau;
    st.theta[i] = pt.theta;
  }
  for (int j = 0; j <= cfg.N; ++j) {
    st.v[j] = profile(st.edge_pos(j)).v;
  }
  return st;
}

double stable_dt(const thermo::GasModel& gas, const GridState& st, const RunConfig& cfg) {
  const int n = st.n_cells();
  double dt = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double tau = st.tau[i];
    const double th = st.theta[i];
    const double pt = gas.p_theta(tau);
    // Isentropic pressure modulus -dp/dtau|_s.
    const double mod = -gas.p_e_prime(tau) - th * gas.p_theta_prime(tau) +
                       th * pt * pt / gas.c_v(th);
    if (mod > 0.0) {
      const double c = tau * std::sqrt(mod);
      dt = std::min(dt, st.dx / c);
    }
    dt = std::min(dt, st.dx * st.dx * tau / (2.0 * cfg.nu + 1e-300));
  }
  return cfg.cfl * dt;
}

void step_inplace(const thermo::GasModel& gas, GridState& st, double dt, const RunConfig& cfg,
                  StepStats* stats, bool check_dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  if (check_dt && dt > stable_dt(gas, st, cfg) * (1.0 + 1e-9)) {
    throw std::invalid_argument("step: dt exceeds the stability limit");
  }
  const int n = st.n_cells();
  const double dx = st.dx;

  // Cell pressures and viscous stress at t^n.
  static thread_local std::vector<double> q, dv_old, dv_new, cv, pt_n, sigma_n, diag_, off_, rhs,
      scratch;
  q.resize(n);
  dv_old.resize(n);
  dv_new.resize(n);
  cv.resize(n);
  pt_n.resize(n);
  sigma_n.resize(n);
  for (int i = 0; i < n; ++i) {
    dv_old[i] = (st.v[i + 1] - st.v[i]) / dx;
    pt_n[i] = gas.p_theta(st.tau[i]);
    sigma_n[i] = cfg.nu * dv_old[i] / st.tau[i];
    q[i] = gas.p_e(st.tau[i]) + st.theta[i] * pt_n[i] - sigma_n[i];
    cv[i] = gas.c_v(st.theta[i]);
  }

  // Momentum on interior edges; boundary edges stay Dirichlet.
  for (int j = 1; j < n; ++j) {
    st.v[j] -= dt / dx * (q[j] - q[j - 1]);
  }

  // Volume transport with the new velocities (exact discrete identity).
  for (int i = 0; i < n; ++i) {
    dv_new[i] = (st.v[i + 1] - st.v[i]) / dx;
    st.tau[i] += dt * dv_new[i];
    if (st.tau[i] < cfg.tau_floor) {
      st.tau[i] = cfg.tau_floor;
      if (stats) ++stats->floor_hits_tau;
    }
  }

  // Temperature: explicit work and viscous heating against the new velocity
  // divergence (the same divergence the volume update uses; a time-centered
  // divergence here is von Neumann unstable), implicit heat diffusion with
  // edge-averaged volume.
  diag_.resize(n);
  off_.resize(n - 1);
  rhs.resize(n);
  for (int i = 0; i < n; ++i) {
    const double work = -st.theta[i] * pt_n[i] * dv_new[i];
    const double heating = sigma_n[i] * dv_new[i];
    rhs[i] = cv[i] / dt * st.theta[i] + work + heating;
    diag_[i] = cv[i] / dt;
  }
  for (int j = 1; j < n; ++j) {
    const double tau_edge = 0.5 * (st.tau[j - 1] + st.tau[j]);
    const double a = cfg.kappa / (dx * dx * tau_edge);
    diag_[j - 1] += a;
    diag_[j] += a;
    off_[j - 1] = -a;
  }
  solve_symmetric_tridiagonal(diag_, off_, rhs, scratch);
  for (int i = 0; i < n; ++i) {
    st.theta[i] = rhs[i];
    if (st.theta[i] < cfg.theta_floor) {
      st.theta[i] = cfg.theta_floor;
      if (stats) ++stats->floor_hits_theta;
    }
  }
  st.t += dt;
}

GridState step(const thermo::GasModel& gas, const GridState& st, double dt,
               const RunConfig& cfg) {
  GridState out = st;
  step_inplace(gas, out, dt, cfg, nullptr, true);
  return out;
}

RunResult run(const thermo::GasModel& gas, const RunConfig& cfg,
              const riemann::InitialProfile& profile, RunObserver& observer) {
  cfg.validate();
  RunResult res;
  GridState st = init_grid(cfg, profile);
  res.under_resolved = cfg.delta > 0.0 && st.dx > cfg.delta / 8.0;

  GridState prev = st;
  StepStats stats;
  for (double ts : cfg.sample_times) {
    while (st.t < ts - 1e-14 * std::max(1.0, ts)) {
      const double dt = std::min(stable_dt(gas, st, cfg), ts - st.t);
      prev = st;
      step_inplace(gas, st, dt, cfg, &stats, false);
      ++res.steps;
      observer.on_step(prev, st, dt);
    }
    st.t = ts;  // land exactly, the last step was clipped to the gap
    auto rec = observer.on_sample(st);
    rec.floor_hits = stats.floor_hits_tau + stats.floor_hits_theta;
    res.samples.push_back(RunSample{st, std::move(rec)});
  }
  res.floor_hits_tau = stats.floor_hits_tau;
  res.floor_hits_theta = stats.floor_hits_theta;
  return res;
}

}  // namespace nsf1d::solver
