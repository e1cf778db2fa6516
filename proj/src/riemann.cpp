#include "nsf1d/riemann.hpp"

#include <cmath>
#include <string>

#include "nsf1d/cutoff.hpp"

namespace nsf1d::riemann {

using thermo::FluidPoint;
using thermo::GasModel;

ContactWave make_contact(const GasModel& gas, const FluidPoint& left, double tau_right) {
  thermo::require_valid(left);
  if (!(tau_right > 0.0)) {
    throw std::domain_error("make_contact: tau_right must be positive");
  }
  ContactWave wave;
  wave.left = left;
  wave.v_bar = left.v;
  wave.p_bar = thermo::pressure(gas, left);
  if (tau_right == left.tau) {
    wave.right = left;
    return wave;
  }
  const double pt = gas.p_theta(tau_right);
  if (!(pt > 0.0)) {
    throw std::invalid_argument(
        "make_contact: p_theta vanishes at tau_right, no thermal degree of freedom");
  }
  const double theta_right = (wave.p_bar - gas.p_e(tau_right)) / pt;
  if (!(theta_right > 0.0)) {
    throw InadmissibleStateError("make_contact: solved right temperature is not positive");
  }
  wave.right = FluidPoint{tau_right, left.v, theta_right};
  return wave;
}

FluidPoint sample_contact(const ContactWave& wave, double x, double t) noexcept {
  return x <= wave.v_bar * t ? wave.left : wave.right;
}

void validate(const GasModel& gas, const ContactWave& wave) {
  if (wave.left.v != wave.right.v || wave.left.v != wave.v_bar) {
    throw InadmissibleStateError("contact wave: velocities must match exactly");
  }
  const double pl = thermo::pressure(gas, wave.left);
  const double pr = thermo::pressure(gas, wave.right);
  const double tol = 1e-12 * std::max(1.0, wave.p_bar);
  if (std::abs(pl - pr) > tol || std::abs(pl - wave.p_bar) > tol) {
    throw InadmissibleStateError("contact wave: pressure mismatch " +
                                 std::to_string(std::abs(pl - pr)));
  }
}

InitialProfile well_prepared_init(const GasModel& gas, const ContactWave& wave, double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("well_prepared_init: delta must be positive");
  }
  const FluidPoint left = wave.left;
  const FluidPoint right = wave.right;
  const double p_bar = wave.p_bar;
  const double v_bar = wave.v_bar;

  auto profile = [gas, left, right, p_bar, v_bar, delta](double x) -> FluidPoint {
    const double u = x / delta;
    if (u <= -1.0) return left;
    if (u >= 1.0) return right;
    const double tau = left.tau + (right.tau - left.tau) * (1.0 - diag::eta(u));
    const double pt = gas.p_theta(tau);
    if (!(pt > 0.0)) {
      throw InadmissibleStateError("well_prepared_init: p_theta vanishes inside the layer");
    }
    const double theta = (p_bar - gas.p_e(tau)) / pt;
    if (!(theta > 0.0)) {
      throw InadmissibleStateError("well_prepared_init: isobaric layer temperature not positive");
    }
    return FluidPoint{tau, v_bar, theta};
  };

  // Probe the layer once so inadmissible profiles fail at construction.
  for (int i = 0; i <= 1000; ++i) {
    profile(-delta + 2.0 * delta * i / 1000.0);
  }
  return profile;
}

}  // namespace nsf1d::riemann
