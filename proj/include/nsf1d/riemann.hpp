#pragma once

#include <functional>
#include <stdexcept>

#include "nsf1d/thermo.hpp"

namespace nsf1d::riemann {

/// Thrown when a requested state or profile would have non-positive volume
/// or temperature.
struct InadmissibleStateError : std::domain_error {
  using std::domain_error::domain_error;
};

/// An admissible contact discontinuity: shared velocity and pressure, free
/// jumps in specific volume and temperature.
struct ContactWave {
  thermo::FluidPoint left;
  thermo::FluidPoint right;
  double v_bar = 0.0;
  double p_bar = 0.0;
};

/// Builds the contact with the given left state and right volume; the right
/// temperature solves p_e(tau_R) + theta_R p_theta(tau_R) = p_bar.
ContactWave make_contact(const thermo::GasModel& gas, const thermo::FluidPoint& left,
                         double tau_right);

/// The piecewise Riemann solution: left state for x < v_bar t, right for
/// x > v_bar t, left on the interface by convention.
thermo::FluidPoint sample_contact(const ContactWave& wave, double x, double t) noexcept;

/// Checks the contact invariants (equal velocities, pressure match to 1e-12
/// relative); throws InadmissibleStateError on violation.
void validate(const thermo::GasModel& gas, const ContactWave& wave);

using InitialProfile = std::function<thermo::FluidPoint(double)>;

/// Mollified initial datum: tau interpolates the jump through the cutoff
/// profile over a layer of width delta, the velocity is uniformly v_bar, and
/// theta is solved pointwise so the layer is exactly isobaric at p_bar.
/// Returns the pure half states for |x| >= delta.
InitialProfile well_prepared_init(const thermo::GasModel& gas, const ContactWave& wave,
                                  double delta);

}  // namespace nsf1d::riemann
