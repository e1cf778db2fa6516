#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "nsf1d/thermo.hpp"
#include "test_util.hpp"

using namespace nsf1d::thermo;

namespace {

GasModel example_elastic() { return make_ideal_elastic_gas(1.0, 1.5, 1.0, 2.0); }

// Relative entropy straight from the definition s(U|U_bar) = s(U) - s(U_bar)
// - ds(U_bar).(U - U_bar) in the conserved variables; the bracket form in the
// library must agree.
double red_from_definition(const GasModel& gas, const FluidPoint& pt, const FluidPoint& ref) {
  const double ds_tau = pressure(gas, ref) / ref.theta;
  const double ds_v = -ref.v / ref.theta;
  const double ds_E = 1.0 / ref.theta;
  const double E_pt = internal_energy(gas, pt) + 0.5 * pt.v * pt.v;
  const double E_ref = internal_energy(gas, ref) + 0.5 * ref.v * ref.v;
  const double srel = entropy(gas, pt) - entropy(gas, ref) - ds_tau * (pt.tau - ref.tau) -
                      ds_v * (pt.v - ref.v) - ds_E * (E_pt - E_ref);
  return -ref.theta * srel;
}

}  // namespace

TEST_CASE("pressure on the built-in models") {
  const auto ideal = make_ideal_gas(1.0, 1.5);
  CHECK(pressure(ideal, {2.0, 0.0, 3.0}) == doctest::Approx(1.5).epsilon(1e-15));

  const auto elastic = example_elastic();
  CHECK(pressure(elastic, {1.0, 0.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-15));

  CHECK_THROWS_AS(pressure(ideal, {-1.0, 0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(pressure(ideal, {1.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("increasing elastic pressure is rejected at construction") {
  GasModelSpec bad;
  bad.p_e = [](double tau) { return tau; };
  bad.p_theta = [](double tau) { return 1.0 / tau; };
  bad.c_v = [](double) { return 1.0; };
  CHECK_THROWS_AS(GasModel(std::move(bad)), std::invalid_argument);
}

TEST_CASE("internal energy") {
  const auto ideal = make_ideal_gas(1.0, 1.5);  // theta_ref = 0: Q = c_v theta
  CHECK(internal_energy(ideal, {5.0, 0.0, 2.0}) == doctest::Approx(3.0).epsilon(1e-15));

  const auto elastic = example_elastic();  // P_e anchored at infinity: P_e = 1/tau
  CHECK(internal_energy(elastic, {2.0, 0.0, 2.0}) == doctest::Approx(3.5).epsilon(1e-15));

  CHECK(internal_energy(ideal, {3.0, 0.0, 1.0}) == internal_energy(ideal, {3.0, 7.0, 1.0}));
}

TEST_CASE("entropy with unit references") {
  const auto gas = make_ideal_gas(1.0, 1.0, 1.0, 1.0);
  CHECK(entropy(gas, {1.0, 0.0, 1.0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(entropy(gas, {1.0, 0.0, std::exp(1.0)}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(entropy(gas, {std::exp(1.0), 0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("relative entropy density basics") {
  const auto gas = make_ideal_gas(1.0, 1.0);
  const FluidPoint ref{1.5, 0.3, 2.0};
  CHECK(relative_entropy_density(gas, ref, ref) == doctest::Approx(0.0).epsilon(1e-15));

  FluidPoint moved = ref;
  moved.v = ref.v + 2.0;
  CHECK(relative_entropy_density(gas, moved, ref) == doctest::Approx(2.0).epsilon(1e-14));

  // Q-bracket only: theta = 2 against theta_bar = 1 with c_v = 1.
  const FluidPoint hot{1.0, 0.0, 2.0};
  const FluidPoint cold{1.0, 0.0, 1.0};
  const double expected = 1.0 - std::log(2.0);
  CHECK(relative_entropy_density(gas, hot, cold) == doctest::Approx(expected).epsilon(1e-13));
  // Cross-check the Q-bracket by quadrature of c_v/z.
  const double quad = 1.0 * (2.0 - 1.0) -
                      1.0 * testutil::composite_simpson([](double z) { return 1.0 / z; }, 1.0, 2.0);
  CHECK(std::abs(expected - quad) < 1e-12);
}

TEST_CASE("bracket form agrees with the relative entropy definition") {
  const GasModel models[] = {make_ideal_gas(1.0, 1.5, 1.0, 1.0), example_elastic(),
                             make_thermal_power_gas(0.7, 2.0, 1.2)};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ut(0.4, 2.5);
  std::uniform_real_distribution<double> uv(-1.5, 1.5);
  for (const auto& gas : models) {
    for (int k = 0; k < 500; ++k) {
      const FluidPoint pt{ut(rng), uv(rng), ut(rng)};
      const FluidPoint ref{ut(rng), uv(rng), ut(rng)};
      const double a = relative_entropy_density(gas, pt, ref);
      const double b = red_from_definition(gas, pt, ref);
      CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("relative entropy flux density") {
  const auto gas = make_ideal_gas(1.0, 1.5);
  const FluidPoint ref{2.0, 0.5, 1.5};
  CHECK(relative_entropy_flux_density(gas, ref, ref) == doctest::Approx(0.0).epsilon(1e-15));

  // v_bar = 0, p_bar = 1, theta_bar = 1: flux reduces to -v (p - p_bar).
  const FluidPoint still{1.0, 0.0, 1.0};
  const FluidPoint moving{1.0, 1.0, 2.0};  // p = 2
  CHECK(relative_entropy_flux_density(gas, moving, still) ==
        doctest::Approx(-1.0).epsilon(1e-14));

  // Component-wise oracle.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ut(0.4, 2.5);
  std::uniform_real_distribution<double> uv(-1.5, 1.5);
  for (int k = 0; k < 500; ++k) {
    const FluidPoint pt{ut(rng), uv(rng), ut(rng)};
    const FluidPoint rf{ut(rng), uv(rng), ut(rng)};
    const double p = pressure(gas, pt);
    const double pb = pressure(gas, rf);
    const double f_pt[3] = {-pt.v, p, p * pt.v};
    const double f_rf[3] = {-rf.v, pb, pb * rf.v};
    const double ds[3] = {pb / rf.theta, -rf.v / rf.theta, 1.0 / rf.theta};
    double dot = 0.0;
    for (int c = 0; c < 3; ++c) dot += ds[c] * (f_pt[c] - f_rf[c]);
    CHECK(std::abs(relative_entropy_flux_density(gas, pt, rf) + dot) < 1e-12);
  }
}

TEST_CASE("nonnegativity and identity of the relative entropy") {
  const GasModel models[] = {make_ideal_gas(1.0, 1.5), example_elastic(),
                             make_thermal_power_gas(1.0, 2.0, 1.5)};
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> ulog(std::log(0.3), std::log(3.0));
  std::uniform_real_distribution<double> uv(-2.0, 2.0);
  for (const auto& gas : models) {
    for (int k = 0; k < 2000; ++k) {
      const FluidPoint pt{std::exp(ulog(rng)), uv(rng), std::exp(ulog(rng))};
      const FluidPoint ref{std::exp(ulog(rng)), uv(rng), std::exp(ulog(rng))};
      const double red = relative_entropy_density(gas, pt, ref);
      CHECK(red >= -1e-12);
      CHECK(relative_entropy_density(gas, pt, pt) <= 1e-14);
      const double sep = std::max({std::abs(pt.tau - ref.tau), std::abs(pt.v - ref.v),
                                   std::abs(pt.theta - ref.theta)});
      if (sep > 1e-3) CHECK(red > 1e-9);
    }
  }
}

TEST_CASE("potential and derivative consistency") {
  const GasModel models[] = {make_ideal_gas(0.8, 1.5), example_elastic(),
                             make_thermal_power_gas(1.3, 2.5, 0.9)};
  for (const auto& gas : models) {
    for (int k = 0; k < 100; ++k) {
      const double tau = 0.1 * std::pow(100.0, k / 99.0);
      const double h = 1e-6 * tau;
      const double dpe =
          -(gas.elastic_potential(tau + h) - gas.elastic_potential(tau - h)) / (2.0 * h);
      const double dpt =
          -(gas.thermal_potential(tau + h) - gas.thermal_potential(tau - h)) / (2.0 * h);
      CHECK(testutil::rel_err(dpe, gas.p_e(tau)) < 1e-6);
      CHECK(testutil::rel_err(dpt, gas.p_theta(tau)) < 1e-6);

      const double th = 0.1 * std::pow(100.0, k / 99.0);
      const double h2 = 1e-6 * th;
      const double dq = (gas.thermal_energy(th + h2) - gas.thermal_energy(th - h2)) / (2.0 * h2);
      CHECK(testutil::rel_err(dq, gas.c_v(th)) < 1e-6);
    }
  }
}

TEST_CASE("second law in each variable") {
  const auto gas = example_elastic();
  for (int k = 0; k < 50; ++k) {
    const double tau = 0.3 * std::pow(10.0, k / 49.0);
    const double th = 0.4 * std::pow(5.0, k / 49.0);
    const auto s = [&](double t2, double th2) { return entropy(gas, {t2, 0.0, th2}); };
    const double h = 1e-6 * th;
    const double ds_dth = (s(tau, th + h) - s(tau, th - h)) / (2.0 * h);
    CHECK(testutil::rel_err(th * ds_dth, gas.c_v(th)) < 1e-6);
    const double h2 = 1e-6 * tau;
    const double ds_dtau = (s(tau + h2, th) - s(tau - h2, th)) / (2.0 * h2);
    CHECK(testutil::rel_err(ds_dtau, gas.p_theta(tau)) < 1e-6);
  }
}

TEST_CASE("quadratic expansion near the reference") {
  const auto gas = make_ideal_gas(1.0, 1.5);
  const FluidPoint ref{1.3, 0.2, 0.9};
  const double dir[3] = {0.4, -0.5, 0.8};
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const double h = std::pow(2.0, -k);
    const FluidPoint pt{ref.tau + h * dir[0], ref.v + h * dir[1], ref.theta + h * dir[2]};
    const double dist2 = h * h * (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    const double ratio = relative_entropy_density(gas, pt, ref) / dist2;
    CHECK(ratio > 0.0);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo < 3.0);
}

TEST_CASE("numeric-fallback potentials match the closed forms") {
  GasModelSpec numeric;
  numeric.p_e = [](double tau) { return std::pow(tau, -2.0); };
  numeric.p_theta = [](double tau) { return 1.0 / tau; };
  numeric.c_v = [](double) { return 1.5; };
  numeric.tau_ref = 1.0;
  numeric.tau_ref_elastic = std::numeric_limits<double>::infinity();
  numeric.theta_ref = 1.0;
  const GasModel fallback(std::move(numeric));
  const GasModel closed = make_ideal_elastic_gas(1.0, 1.5, 1.0, 2.0, 1.0, 1.0);
  for (double tau : {0.3, 0.7, 1.0, 2.4, 9.0}) {
    CHECK(std::abs(fallback.elastic_potential(tau) - closed.elastic_potential(tau)) < 1e-8);
    CHECK(std::abs(fallback.thermal_potential(tau) - closed.thermal_potential(tau)) < 1e-8);
  }
  for (double th : {0.5, 1.0, 1.7, 4.0}) {
    CHECK(std::abs(fallback.thermal_energy(th) - closed.thermal_energy(th)) < 1e-8);
    CHECK(std::abs(fallback.entropy_heat(th) - closed.entropy_heat(th)) < 1e-8);
  }
}

TEST_CASE("relative quantities ignore the integration constants") {
  const auto a = make_ideal_gas(1.0, 1.5, 1.0, 1.0);
  const auto b = make_ideal_gas(1.0, 1.5, 2.0, 2.0);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ut(0.4, 2.5);
  for (int k = 0; k < 200; ++k) {
    const FluidPoint pt{ut(rng), 0.1, ut(rng)};
    const FluidPoint ref{ut(rng), -0.2, ut(rng)};
    const double ra = relative_entropy_density(a, pt, ref);
    const double rb = relative_entropy_density(b, pt, ref);
    CHECK(std::abs(ra - rb) < 1e-12 * std::max(1.0, std::abs(ra)));
  }
}

TEST_CASE("tail ratio bound") {
  const FluidPoint ref{1.0, 0.0, 1.0};
  const auto elastic = example_elastic();
  const auto finite = tail_ratio_bound(elastic, ref, 10.0, 1e-6);
  CHECK(std::isfinite(finite.sup));
  CHECK(!finite.diverges);

  const auto ideal = make_ideal_gas(1.0, 1.5);
  const auto log_only = tail_ratio_bound(ideal, ref, 10.0, 1e-6);
  CHECK(log_only.diverges);

  const auto point = tail_ratio_bound(elastic, ref, 10.0, 0.1);  // degenerate window
  CHECK(point.sup == doctest::Approx(point.ratio_at_window_end));
  CHECK(!point.diverges);

  CHECK_THROWS_AS(tail_ratio_bound(elastic, ref, 0.5, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(tail_ratio_bound(elastic, ref, 10.0, 0.2), std::invalid_argument);
}
