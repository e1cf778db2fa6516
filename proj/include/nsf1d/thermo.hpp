#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace nsf1d::thermo {

/// A pointwise fluid state in Lagrangian variables.
struct FluidPoint {
  double tau = 1.0;    ///< specific volume, > 0
  double v = 0.0;      ///< velocity
  double theta = 1.0;  ///< absolute temperature, > 0
};

inline bool valid(const FluidPoint& p) noexcept { return p.tau > 0.0 && p.theta > 0.0; }

/// Throws std::domain_error unless tau > 0 and theta > 0.
void require_valid(const FluidPoint& p);

using ScalarFn = std::function<double(double)>;

/// Ingredients of a Feireisl-type state equation p = p_e(tau) + theta p_theta(tau),
/// e = P_e(tau) + Q(theta). Closed-form potentials and exact derivatives are
/// optional; missing pieces fall back to adaptive quadrature / finite differences.
struct GasModelSpec {
  std::string name = "custom";

  ScalarFn p_e;      ///< elastic pressure, >= 0, non-increasing
  ScalarFn p_theta;  ///< thermal pressure coefficient, >= 0, non-increasing
  ScalarFn c_v;      ///< specific heat, > 0

  ScalarFn p_e_prime;      ///< optional exact derivative
  ScalarFn p_theta_prime;  ///< optional exact derivative

  ScalarFn elastic_potential;  ///< P_e(tau), vanishing at tau_ref_elastic
  ScalarFn thermal_potential;  ///< P_theta(tau), vanishing at tau_ref
  ScalarFn thermal_energy;     ///< Q(theta), vanishing at theta_ref
  ScalarFn entropy_heat;       ///< integral of c_v(z)/z, vanishing at the entropy reference

  // Integration-constant conventions. Constants cancel in every relative
  // quantity; they are fixed only so absolute outputs are reproducible.
  double tau_ref = 1.0;          ///< reference for P_theta (may be +inf for integrable tails)
  double tau_ref_elastic = 1.0;  ///< reference for P_e (may be +inf)
  double theta_ref = 1.0;        ///< reference for Q; 0 allowed only with closed-form Q
  // When theta_ref == 0 the entropy integral uses 1 as its reference instead.

  double gamma = 0.0;  ///< declared small-tau growth exponent (0 when none); >= 2 if set
};

/// Immutable state-equation family. Construction validates positivity and the
/// monotonicity conditions p_e' <= 0, p_theta' <= 0 on a logarithmic grid and
/// rejects inadmissible models. All member functions are pure and thread-safe.
class GasModel {
 public:
  explicit GasModel(GasModelSpec spec);

  const std::string& name() const { return spec_.name; }
  double gamma() const { return spec_.gamma; }
  double tau_ref() const { return spec_.tau_ref; }
  double theta_ref() const { return spec_.theta_ref; }

  double p_e(double tau) const { return spec_.p_e(tau); }
  double p_theta(double tau) const { return spec_.p_theta(tau); }
  double c_v(double theta) const { return spec_.c_v(theta); }

  double p_e_prime(double tau) const;
  double p_theta_prime(double tau) const;

  double elastic_potential(double tau) const { return spec_.elastic_potential(tau); }
  double thermal_potential(double tau) const { return spec_.thermal_potential(tau); }
  double thermal_energy(double theta) const { return spec_.thermal_energy(theta); }
  double entropy_heat(double theta) const { return spec_.entropy_heat(theta); }

 private:
  GasModelSpec spec_;
};

/// p = p_e(tau) + theta p_theta(tau).
double pressure(const GasModel& gas, const FluidPoint& pt);

/// e = P_e(tau) + Q(theta). Independent of velocity.
double internal_energy(const GasModel& gas, const FluidPoint& pt);

/// s = int c_v(z)/z dz - P_theta(tau).
double entropy(const GasModel& gas, const FluidPoint& pt);

/// The tau-only part of the relative entropy integrand:
///   theta_ref*(P_theta(tau) - P_theta(tau_ref) + p_theta(tau_ref)(tau - tau_ref))
/// + (P_e(tau) - P_e(tau_ref) + p_e(tau_ref)(tau - tau_ref)).
double volume_brackets(const GasModel& gas, double tau, const FluidPoint& ref);

/// Integrand of the entropy functional: -theta_bar * s(U|U_bar) written out in
/// the bracket form. Nonnegative under the monotonicity conditions, zero iff
/// pt == ref for strictly monotone models.
double relative_entropy_density(const GasModel& gas, const FluidPoint& pt, const FluidPoint& ref);

/// Relative entropy flux q(U;U_bar) = -ds(U_bar) . (f(U) - f(U_bar)) with
/// f(U) = (-v, p, pv) and ds taken in the conserved variables (tau, v, E),
/// i.e. ds(U_bar) = (p_bar/theta_bar, -v_bar/theta_bar, 1/theta_bar).
double relative_entropy_flux_density(const GasModel& gas, const FluidPoint& pt,
                                     const FluidPoint& ref);

struct TailRatioBound {
  double sup = 0.0;               ///< max of (1/tau) / volume_brackets over the window
  bool diverges = false;          ///< ratio at tau_min exceeds the window-end ratio by the factor
  double ratio_at_tau_min = 0.0;
  double ratio_at_window_end = 0.0;
};

/// Scans (1/tau) / volume_brackets(tau) over a logarithmic grid on
/// [tau_min, 1/c1]. A finite, non-diverging bound is the quantitative content
/// of the small-volume growth conditions on the pressure tail.
TailRatioBound tail_ratio_bound(const GasModel& gas, const FluidPoint& ref, double c1,
                                double tau_min, int points = 512,
                                double divergence_factor = 10.0);

// Built-in model catalog. theta_ref = 0 selects the Q = c_v * theta convention
// for constant specific heat (entropy reference stays at 1).
GasModel make_ideal_gas(double R, double c_v, double tau_ref = 1.0, double theta_ref = 0.0);
GasModel make_ideal_elastic_gas(double R, double c_v, double A, double gamma,
                                double tau_ref = 1.0, double theta_ref = 0.0);
GasModel make_thermal_power_gas(double B, double gamma, double c_v, double theta_ref = 0.0);

}  // namespace nsf1d::thermo
