#include "nsf1d/thermo.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "nsf1d/quadrature.hpp"

namespace nsf1d::thermo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) {
    g[i] = std::exp(a + (b - a) * i / double(n - 1));
  }
  return g;
}

double central_slope(const ScalarFn& f, double x) {
  const double h = 1e-5 * x;
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

void require_valid(const FluidPoint& p) {
  if (!valid(p)) {
    throw std::domain_error("fluid point requires tau > 0 and theta > 0");
  }
}

GasModel::GasModel(GasModelSpec spec) : spec_(std::move(spec)) {
  if (!spec_.p_e || !spec_.p_theta || !spec_.c_v) {
    throw std::invalid_argument("gas model needs p_e, p_theta and c_v");
  }
  if (spec_.gamma != 0.0 && spec_.gamma < 2.0) {
    throw std::invalid_argument("declared growth exponent must be >= 2");
  }

  // Fill missing potentials with quadrature from the declared references.
  if (!spec_.elastic_potential) {
    const ScalarFn pe = spec_.p_e;
    const double ref = spec_.tau_ref_elastic;
    if (ref == kInf) {
      spec_.elastic_potential = [pe](double tau) {
        return adaptive_simpson_to_infinity(pe, tau);
      };
    } else {
      spec_.elastic_potential = [pe, ref](double tau) {
        return -adaptive_simpson(pe, ref, tau);
      };
    }
  }
  if (!spec_.thermal_potential) {
    const ScalarFn pt = spec_.p_theta;
    const double ref = spec_.tau_ref;
    if (ref == kInf) {
      spec_.thermal_potential = [pt](double tau) {
        return adaptive_simpson_to_infinity(pt, tau);
      };
    } else {
      spec_.thermal_potential = [pt, ref](double tau) {
        return -adaptive_simpson(pt, ref, tau);
      };
    }
  }
  if (!spec_.thermal_energy) {
    if (spec_.theta_ref <= 0.0) {
      throw std::invalid_argument("theta_ref = 0 requires a closed-form thermal energy");
    }
    const ScalarFn cv = spec_.c_v;
    const double ref = spec_.theta_ref;
    spec_.thermal_energy = [cv, ref](double theta) {
      return adaptive_simpson(cv, ref, theta);
    };
  }
  if (!spec_.entropy_heat) {
    const ScalarFn cv = spec_.c_v;
    const double ref = spec_.theta_ref > 0.0 ? spec_.theta_ref : 1.0;
    spec_.entropy_heat = [cv, ref](double theta) {
      return adaptive_simpson([&cv](double z) { return cv(z) / z; }, ref, theta);
    };
  }

  // Admissibility sweep: positivity and monotonicity of the pressure pieces,
  // positivity of the specific heat. 10^3 points per decade-spanning window.
  const auto taus = log_grid(1e-4, 1e4, 1000);
  for (double tau : taus) {
    const double pe = spec_.p_e(tau);
    const double pt = spec_.p_theta(tau);
    if (!(pe >= -1e-12 * (1.0 + std::abs(pe)))) {
      throw std::invalid_argument("p_e must be nonnegative (violated at tau=" +
                                  std::to_string(tau) + ")");
    }
    if (!(pt >= -1e-12 * (1.0 + std::abs(pt)))) {
      throw std::invalid_argument("p_theta must be nonnegative (violated at tau=" +
                                  std::to_string(tau) + ")");
    }
    const double se = spec_.p_e_prime ? spec_.p_e_prime(tau) : central_slope(spec_.p_e, tau);
    const double st =
        spec_.p_theta_prime ? spec_.p_theta_prime(tau) : central_slope(spec_.p_theta, tau);
    const double tol_e = 1e-7 * (1.0 + std::abs(pe) / tau);
    const double tol_t = 1e-7 * (1.0 + std::abs(pt) / tau);
    if (se > tol_e) {
      throw std::invalid_argument("p_e must be non-increasing (violated at tau=" +
                                  std::to_string(tau) + ")");
    }
    if (st > tol_t) {
      throw std::invalid_argument("p_theta must be non-increasing (violated at tau=" +
                                  std::to_string(tau) + ")");
    }
  }
  for (double th : log_grid(1e-4, 1e4, 1000)) {
    if (!(spec_.c_v(th) > 0.0)) {
      throw std::invalid_argument("c_v must be positive (violated at theta=" +
                                  std::to_string(th) + ")");
    }
  }

  // Reference conventions, for finite references only.
  if (spec_.tau_ref_elastic != kInf &&
      std::abs(spec_.elastic_potential(spec_.tau_ref_elastic)) > 1e-9) {
    throw std::invalid_argument("P_e must vanish at its reference volume");
  }
  if (spec_.tau_ref != kInf && std::abs(spec_.thermal_potential(spec_.tau_ref)) > 1e-9) {
    throw std::invalid_argument("P_theta must vanish at its reference volume");
  }
  const double qref = spec_.theta_ref > 0.0 ? spec_.theta_ref : 1e-8;
  if (std::abs(spec_.thermal_energy(qref)) > 1e-6) {
    throw std::invalid_argument("Q must vanish at its reference temperature");
  }
}

double GasModel::p_e_prime(double tau) const {
  if (spec_.p_e_prime) return spec_.p_e_prime(tau);
  return central_slope(spec_.p_e, tau);
}

double GasModel::p_theta_prime(double tau) const {
  if (spec_.p_theta_prime) return spec_.p_theta_prime(tau);
  return central_slope(spec_.p_theta, tau);
}

double pressure(const GasModel& gas, const FluidPoint& pt) {
  require_valid(pt);
  return gas.p_e(pt.tau) + pt.theta * gas.p_theta(pt.tau);
}

double internal_energy(const GasModel& gas, const FluidPoint& pt) {
  require_valid(pt);
  return gas.elastic_potential(pt.tau) + gas.thermal_energy(pt.theta);
}

double entropy(const GasModel& gas, const FluidPoint& pt) {
  require_valid(pt);
  return gas.entropy_heat(pt.theta) - gas.thermal_potential(pt.tau);
}

double volume_brackets(const GasModel& gas, double tau, const FluidPoint& ref) {
  if (!(tau > 0.0)) throw std::domain_error("volume_brackets: tau must be positive");
  require_valid(ref);
  const double dtau = tau - ref.tau;
  const double thermal =
      gas.thermal_potential(tau) - gas.thermal_potential(ref.tau) + gas.p_theta(ref.tau) * dtau;
  const double elastic =
      gas.elastic_potential(tau) - gas.elastic_potential(ref.tau) + gas.p_e(ref.tau) * dtau;
  return ref.theta * thermal + elastic;
}

double relative_entropy_density(const GasModel& gas, const FluidPoint& pt,
                                const FluidPoint& ref) {
  require_valid(pt);
  require_valid(ref);
  const double vol = volume_brackets(gas, pt.tau, ref);
  const double heat = gas.thermal_energy(pt.theta) - gas.thermal_energy(ref.theta) -
                      ref.theta * (gas.entropy_heat(pt.theta) - gas.entropy_heat(ref.theta));
  const double dv = pt.v - ref.v;
  return vol + heat + 0.5 * dv * dv;
}

double relative_entropy_flux_density(const GasModel& gas, const FluidPoint& pt,
                                     const FluidPoint& ref) {
  const double p = pressure(gas, pt);
  const double pb = pressure(gas, ref);
  const double dv = pt.v - ref.v;
  const double dp = p - pb;
  // ds(ref) = (pb, -v_ref, 1)/theta_ref against f(U)-f(ref) = (-dv, dp, pv - pb v_ref).
  return -((pb / ref.theta) * (-dv) - (ref.v / ref.theta) * dp +
           (p * pt.v - pb * ref.v) / ref.theta);
}

TailRatioBound tail_ratio_bound(const GasModel& gas, const FluidPoint& ref, double c1,
                                double tau_min, int points, double divergence_factor) {
  require_valid(ref);
  if (!(c1 > 0.0) || !(tau_min > 0.0) || points < 1) {
    throw std::invalid_argument("tail_ratio_bound: c1, tau_min and points must be positive");
  }
  const double hi = 1.0 / c1;
  if (!(hi < ref.tau)) {
    throw std::invalid_argument("tail_ratio_bound: window must exclude the reference volume");
  }
  if (tau_min > hi) {
    throw std::invalid_argument("tail_ratio_bound: tau_min must not exceed 1/c1");
  }

  const auto ratio = [&](double tau) { return (1.0 / tau) / volume_brackets(gas, tau, ref); };

  TailRatioBound out;
  if (tau_min == hi) {
    out.sup = out.ratio_at_tau_min = out.ratio_at_window_end = ratio(hi);
    return out;
  }
  const auto grid = log_grid(tau_min, hi, std::max(points, 2));
  for (double tau : grid) out.sup = std::max(out.sup, ratio(tau));
  out.ratio_at_tau_min = ratio(tau_min);
  out.ratio_at_window_end = ratio(hi);
  out.diverges = out.ratio_at_tau_min > divergence_factor * out.ratio_at_window_end;
  return out;
}

GasModel make_ideal_gas(double R, double c_v, double tau_ref, double theta_ref) {
  if (!(R > 0.0) || !(c_v > 0.0) || !(tau_ref > 0.0) || theta_ref < 0.0) {
    throw std::invalid_argument("ideal gas needs R > 0, c_v > 0, tau_ref > 0, theta_ref >= 0");
  }
  GasModelSpec s;
  s.name = "ideal";
  s.p_e = [](double) { return 0.0; };
  s.p_e_prime = [](double) { return 0.0; };
  s.p_theta = [R](double tau) { return R / tau; };
  s.p_theta_prime = [R](double tau) { return -R / (tau * tau); };
  s.c_v = [c_v](double) { return c_v; };
  s.elastic_potential = [](double) { return 0.0; };
  s.thermal_potential = [R, tau_ref](double tau) { return -R * std::log(tau / tau_ref); };
  s.thermal_energy = [c_v, theta_ref](double theta) { return c_v * (theta - theta_ref); };
  const double sref = theta_ref > 0.0 ? theta_ref : 1.0;
  s.entropy_heat = [c_v, sref](double theta) { return c_v * std::log(theta / sref); };
  s.tau_ref = tau_ref;
  s.tau_ref_elastic = tau_ref;
  s.theta_ref = theta_ref;
  return GasModel(std::move(s));
}

GasModel make_ideal_elastic_gas(double R, double c_v, double A, double gamma, double tau_ref,
                                double theta_ref) {
  if (!(A > 0.0) || !(gamma >= 2.0)) {
    throw std::invalid_argument("ideal_elastic needs A > 0 and gamma >= 2");
  }
  GasModelSpec s;
  s.name = "ideal_elastic";
  s.p_e = [A, gamma](double tau) { return A * std::pow(tau, -gamma); };
  s.p_e_prime = [A, gamma](double tau) { return -A * gamma * std::pow(tau, -gamma - 1.0); };
  s.p_theta = [R](double tau) { return R / tau; };
  s.p_theta_prime = [R](double tau) { return -R / (tau * tau); };
  s.c_v = [c_v](double) { return c_v; };
  // Integrable elastic tail: anchor P_e at tau = +inf.
  s.elastic_potential = [A, gamma](double tau) {
    return A * std::pow(tau, 1.0 - gamma) / (gamma - 1.0);
  };
  s.thermal_potential = [R, tau_ref](double tau) { return -R * std::log(tau / tau_ref); };
  s.thermal_energy = [c_v, theta_ref](double theta) { return c_v * (theta - theta_ref); };
  const double sref = theta_ref > 0.0 ? theta_ref : 1.0;
  s.entropy_heat = [c_v, sref](double theta) { return c_v * std::log(theta / sref); };
  s.tau_ref = tau_ref;
  s.tau_ref_elastic = std::numeric_limits<double>::infinity();
  s.theta_ref = theta_ref;
  s.gamma = gamma;
  return GasModel(std::move(s));
}

GasModel make_thermal_power_gas(double B, double gamma, double c_v, double theta_ref) {
  if (!(B > 0.0) || !(gamma >= 2.0)) {
    throw std::invalid_argument("thermal_power needs B > 0 and gamma >= 2");
  }
  GasModelSpec s;
  s.name = "thermal_power";
  s.p_e = [](double) { return 0.0; };
  s.p_e_prime = [](double) { return 0.0; };
  s.p_theta = [B, gamma](double tau) { return B * std::pow(tau, -gamma); };
  s.p_theta_prime = [B, gamma](double tau) { return -B * gamma * std::pow(tau, -gamma - 1.0); };
  s.c_v = [c_v](double) { return c_v; };
  s.elastic_potential = [](double) { return 0.0; };
  s.thermal_potential = [B, gamma](double tau) {
    return B * std::pow(tau, 1.0 - gamma) / (gamma - 1.0);
  };
  s.thermal_energy = [c_v, theta_ref](double theta) { return c_v * (theta - theta_ref); };
  const double sref = theta_ref > 0.0 ? theta_ref : 1.0;
  s.entropy_heat = [c_v, sref](double theta) { return c_v * std::log(theta / sref); };
  s.tau_ref = std::numeric_limits<double>::infinity();
  s.tau_ref_elastic = 1.0;
  s.theta_ref = theta_ref;
  s.gamma = gamma;
  return GasModel(std::move(s));
}

}  // namespace nsf1d::thermo
