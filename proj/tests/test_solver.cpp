#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "nsf1d/solver.hpp"
#include "nsf1d/tridiagonal.hpp"
#include "test_util.hpp"

using namespace nsf1d;
using namespace nsf1d::solver;
using thermo::FluidPoint;

namespace {

RunConfig basic_config(int n, double kappa = 0.0, double nu = 0.0) {
  RunConfig cfg;
  cfg.N = n;
  cfg.kappa = kappa;
  cfg.nu = nu;
  cfg.L = 1.0;
  cfg.T = 0.0;
  cfg.sample_times = {0.0};
  return cfg;
}

}  // namespace

TEST_CASE("tridiagonal solve") {
  const std::vector<double> diag{2.0, 2.0, 2.0, 2.0};
  const std::vector<double> off{-1.0, -1.0, -1.0};
  const std::vector<double> x_true{1.0, 2.0, 3.0, 4.0};
  std::vector<double> rhs(4);
  rhs[0] = diag[0] * x_true[0] + off[0] * x_true[1];
  rhs[1] = off[0] * x_true[0] + diag[1] * x_true[1] + off[1] * x_true[2];
  rhs[2] = off[1] * x_true[1] + diag[2] * x_true[2] + off[2] * x_true[3];
  rhs[3] = off[2] * x_true[2] + diag[3] * x_true[3];
  std::vector<double> scratch;
  solve_symmetric_tridiagonal(diag, off, rhs, scratch);
  for (int i = 0; i < 4; ++i) CHECK(rhs[i] == doctest::Approx(x_true[i]).epsilon(1e-14));

  const std::vector<double> bad_diag{1.0, 0.5};
  const std::vector<double> bad_off{-1.0};
  std::vector<double> b{1.0, 1.0};
  CHECK_THROWS_AS(solve_symmetric_tridiagonal(bad_diag, bad_off, b, scratch), SolverError);
}

TEST_CASE("config validation") {
  RunConfig cfg = basic_config(8);
  CHECK_NOTHROW(cfg.validate());
  cfg.N = 7;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = basic_config(8);
  cfg.cfl = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = basic_config(8);
  cfg.sample_times = {0.0, -1.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("init_grid geometry") {
  const auto cfg = basic_config(8);
  const auto profile = [](double x) { return FluidPoint{1.0 + 0.1 * x, 0.2 * x, 2.0}; };
  const auto st = init_grid(cfg, profile);
  CHECK(st.dx == doctest::Approx(0.25).epsilon(1e-16));
  CHECK(st.cell_center(0) == doctest::Approx(-0.875).epsilon(1e-16));
  CHECK(st.cell_center(7) == doctest::Approx(0.875).epsilon(1e-16));
  CHECK(st.tau[0] == doctest::Approx(1.0 - 0.0875).epsilon(1e-15));
  CHECK(st.v[0] == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(st.v[8] == doctest::Approx(0.2).epsilon(1e-15));

  const auto flat = init_grid(cfg, [](double) { return FluidPoint{1.5, 0.3, 0.7}; });
  for (double tau : flat.tau) CHECK(tau == 1.5);
  for (double v : flat.v) CHECK(v == 0.3);
}

TEST_CASE("stable_dt formula") {
  const auto gas = thermo::make_ideal_gas(1.0, 1.0);
  auto cfg = basic_config(8);
  auto st = init_grid(cfg, [](double) { return FluidPoint{1.0, 0.0, 1.0}; });

  // Constant unit state: modulus = R theta/tau^2 + theta (R/tau)^2 / c_v = 2.
  const double expect = cfg.cfl * st.dx / std::sqrt(2.0);
  CHECK(stable_dt(gas, st, cfg) == doctest::Approx(expect).epsilon(1e-14));

  // Independent of kappa (implicit diffusion).
  cfg.kappa = 10.0;
  CHECK(stable_dt(gas, st, cfg) == doctest::Approx(expect).epsilon(1e-14));

  // Large viscosity binds through the dx^2 term.
  cfg.nu = 50.0;
  CHECK(stable_dt(gas, st, cfg) ==
        doctest::Approx(cfg.cfl * st.dx * st.dx / (2.0 * cfg.nu)).epsilon(1e-12));
}

TEST_CASE("constant state is a fixed point of the step") {
  const auto gas = thermo::make_ideal_gas(1.0, 1.5);
  const auto cfg = basic_config(16, 0.3, 0.2);
  const auto st = init_grid(cfg, [](double) { return FluidPoint{1.2, 0.4, 0.8}; });
  const double dt = 0.5 * stable_dt(gas, st, cfg);
  const auto out = step(gas, st, dt, cfg);
  CHECK(out.t == doctest::Approx(dt));
  for (int i = 0; i < 16; ++i) {
    CHECK(out.tau[i] == st.tau[i]);
    CHECK(out.theta[i] == doctest::Approx(st.theta[i]).epsilon(2e-15));
  }
  for (int j = 0; j <= 16; ++j) CHECK(out.v[j] == st.v[j]);
}

TEST_CASE("dt guard") {
  const auto gas = thermo::make_ideal_gas(1.0, 1.5);
  const auto cfg = basic_config(8);
  const auto st = init_grid(cfg, [](double) { return FluidPoint{1.0, 0.0, 1.0}; });
  CHECK_THROWS_AS(step(gas, st, 2.0 * stable_dt(gas, st, cfg), cfg), std::invalid_argument);
}

TEST_CASE("discrete volume and momentum identities") {
  const auto gas = thermo::make_ideal_gas(1.0, 1.5);
  auto cfg = basic_config(64, 1e-3, 1e-3);
  const auto profile = [](double x) {
    const double b = std::exp(-25.0 * x * x);
    return FluidPoint{1.0 + 0.3 * b, 0.0, 1.0 + 0.2 * b};
  };
  auto st = init_grid(cfg, profile);
  const double vol0 = std::accumulate(st.tau.begin(), st.tau.end(), 0.0) * st.dx;
  for (int s = 0; s < 50; ++s) {
    const double dt = stable_dt(gas, st, cfg);
    const double vol_before = std::accumulate(st.tau.begin(), st.tau.end(), 0.0) * st.dx;
    double mom_before = 0.5 * (st.v.front() + st.v.back());
    for (int j = 1; j < 64; ++j) mom_before += st.v[j];
    mom_before *= st.dx;
    step_inplace(gas, st, dt, cfg);
    const double vol_after = std::accumulate(st.tau.begin(), st.tau.end(), 0.0) * st.dx;
    double mom_after = 0.5 * (st.v.front() + st.v.back());
    for (int j = 1; j < 64; ++j) mom_after += st.v[j];
    mom_after *= st.dx;
    const double expected = dt * (st.v.back() - st.v.front());
    CHECK(std::abs(vol_after - vol_before - expected) <= 1e-13 * vol0);
    CHECK(std::abs(mom_after - mom_before) <= 1e-12);
  }
}

TEST_CASE("positivity floors trigger and are counted") {
  const auto gas = thermo::make_ideal_gas(1.0, 1.5);
  auto cfg = basic_config(8);
  cfg.tau_floor = 1e-3;
  GridState st;
  st.dx = 0.25;
  st.x0 = -1.0;
  st.tau.assign(8, 2e-3);
  st.theta.assign(8, 1.0);
  st.v.assign(9, 0.0);
  for (int j = 0; j <= 8; ++j) st.v[j] = -0.1 * j;  // strong compression everywhere
  StepStats stats;
  step_inplace(gas, st, 1e-2, cfg, &stats, false);
  CHECK(stats.floor_hits_tau > 0);
  for (double tau : st.tau) CHECK(tau >= cfg.tau_floor);
}

TEST_CASE("run lands exactly on sample times") {
  const auto gas = thermo::make_ideal_gas(1.0, 1.5);
  auto cfg = basic_config(16, 1e-3, 0.0);
  cfg.T = 0.05;
  cfg.sample_times = {0.0, 0.0317, 0.05};
  const auto profile = [](double x) {
    const double b = std::exp(-25.0 * x * x);
    return FluidPoint{1.0 + 0.2 * b, 0.0, 1.0 + 0.1 * b};
  };
  NullObserver obs;
  const auto rr = run(gas, cfg, profile, obs);
  REQUIRE(rr.samples.size() == 3);
  CHECK(rr.samples[0].state.t == 0.0);
  CHECK(rr.samples[1].state.t == 0.0317);
  CHECK(rr.samples[2].state.t == 0.05);
  CHECK(rr.samples[0].state.tau == init_grid(cfg, profile).tau);
  CHECK(rr.floor_hits_tau == 0);

  // sample_times = {0} only: no steps taken.
  cfg.sample_times = {0.0};
  const auto only_init = run(gas, cfg, profile, obs);
  CHECK(only_init.steps == 0);
  CHECK(only_init.samples.size() == 1);
}

TEST_CASE("uniform sample times") {
  CHECK(uniform_samples(0.2, 3) == std::vector<double>{0.0, 0.1, 0.2});
  CHECK(uniform_samples(0.2, 1) == std::vector<double>{0.2});
  CHECK(uniform_samples(0.0, 51) == std::vector<double>{0.0});
}

TEST_CASE("under-resolution is flagged as a warning") {
  const auto gas = thermo::make_ideal_gas(1.0, 1.5);
  auto cfg = basic_config(16, 1e-4, 0.0);
  cfg.T = 0.0;
  cfg.delta = 0.01;  // dx = 0.125 >> delta/8
  NullObserver obs;
  const auto rr = run(gas, cfg, [](double) { return FluidPoint{1.0, 0.0, 1.0}; }, obs);
  CHECK(rr.under_resolved);
}
