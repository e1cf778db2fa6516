#pragma once

#include <stdexcept>
#include <vector>

#include "nsf1d/records.hpp"
#include "nsf1d/riemann.hpp"
#include "nsf1d/thermo.hpp"

namespace nsf1d::solver {

/// Numerical failure inside a time step, carrying the offending cell.
struct SolverError : std::runtime_error {
  int cell;
  SolverError(const std::string& what, int cell_) : std::runtime_error(what), cell(cell_) {}
};

/// Staggered Lagrangian snapshot: tau and theta live on the N cells, the
/// velocity on the N+1 edges. x0 is the coordinate of edge 0 so that edge j
/// sits at x0 + j dx and cell i at x0 + (i + 1/2) dx.
struct GridState {
  std::vector<double> tau;
  std::vector<double> theta;
  std::vector<double> v;
  double dx = 0.0;
  double x0 = 0.0;
  double t = 0.0;

  int n_cells() const { return static_cast<int>(tau.size()); }
  double cell_center(int i) const { return x0 + (i + 0.5) * dx; }
  double edge_pos(int j) const { return x0 + j * dx; }
};

struct RunConfig {
  double kappa = 0.0;  ///< heat conductivity, >= 0
  double nu = 0.0;     ///< viscosity, >= 0
  double L = 1.0;      ///< domain half-width
  int N = 0;           ///< cell count, >= 8 and even
  double T = 0.0;      ///< final time
  double delta = 0.0;  ///< initial layer width (<= 0: no layer declared)
  double cfl = 0.8;
  std::vector<double> sample_times;  ///< increasing, within [0, T]
  double tau_floor = 1e-10;
  double theta_floor = 1e-10;
  double eps = 0.0;  ///< diagnostics layer width; <= 0 selects sqrt(kappa)
  double c1 = 0.0;   ///< tail split constant; <= 0 selects 2/min(tau_L, tau_R)

  void validate() const;
  double effective_eps() const;
};

/// Uniformly spaced sample times 0 = t_0 < ... < t_{n-1} = T.
std::vector<double> uniform_samples(double T, int count);

GridState init_grid(const RunConfig& cfg, const riemann::InitialProfile& profile);

/// cfl * min over cells of [ dx / c_i , dx^2 tau_i / (2 nu) ] with the
/// Lagrangian sound speed c_i = tau sqrt(-dp/dtau at frozen entropy).
double stable_dt(const thermo::GasModel& gas, const GridState& st, const RunConfig& cfg);

struct StepStats {
  long floor_hits_tau = 0;
  long floor_hits_theta = 0;
};

/// One step of the staggered scheme: explicit momentum with central pressure
/// gradient and viscous stress, exact discrete volume transport with the new
/// velocities, temperature update with explicit work/heating and backward
/// Euler heat diffusion (symmetric tridiagonal solve). Boundary edges are
/// Dirichlet, the heat flux vanishes at both ends.
void step_inplace(const thermo::GasModel& gas, GridState& st, double dt, const RunConfig& cfg,
                  StepStats* stats = nullptr, bool check_dt = true);

/// Pure variant of step_inplace; requires dt <= stable_dt.
GridState step(const thermo::GasModel& gas, const GridState& st, double dt,
               const RunConfig& cfg);

/// Observer of a run. on_step sees consecutive states, on_sample is called at
/// every sample time (after the step lands exactly on it) and produces the
/// record stored with the snapshot. Observers must not mutate solver state.
struct RunObserver {
  virtual void on_step(const GridState& /*before*/, const GridState& /*after*/, double /*dt*/) {}
  virtual diag::DiagnosticsRecord on_sample(const GridState& st) = 0;
  virtual ~RunObserver() = default;
};

/// Observer that records nothing; convenient for solver-only studies.
struct NullObserver : RunObserver {
  diag::DiagnosticsRecord on_sample(const GridState& st) override {
    diag::DiagnosticsRecord r;
    r.t = st.t;
    return r;
  }
};

struct RunSample {
  GridState state;
  diag::DiagnosticsRecord record;
};

struct RunResult {
  std::vector<RunSample> samples;
  long floor_hits_tau = 0;
  long floor_hits_theta = 0;
  bool under_resolved = false;  ///< declared layer thinner than 8 cells
  long steps = 0;
};

/// Integrates from 0 to T, stepping at the stability limit and clipping the
/// final partial step to land exactly on each sample time. Deterministic for
/// a fixed configuration.
RunResult run(const thermo::GasModel& gas, const RunConfig& cfg,
              const riemann::InitialProfile& profile, RunObserver& observer);

}  // namespace nsf1d::solver
