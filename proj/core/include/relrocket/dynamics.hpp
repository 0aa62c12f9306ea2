#pragma once

#include "relrocket/types.hpp"

namespace relrocket {

// Closed-form dynamics of a rocket propelled by mass ejection, classical and
// special-relativistic, one spatial dimension, Earth-frame kinematics.
//
// Sign conventions: vbar > 0 and mdot < 0 (mass loss) produce a > 0.
// Classical operations take dm/dt (Earth frame); relativistic operations take
// dm/dtau (rocket frame) -- the frames must not be mixed.

// Classical acceleration  a = -e^{v/vbar} * (vbar/m0) * dm/dt.
// Requires params.model == Classical.
double classical_accel(double v, double mdot, const RocketParams& params);

// Classical mass law  m = m0 * e^{-v/vbar}; strictly decreasing in v.
double classical_mass(double v, const RocketParams& params);

// Relativistic acceleration in the Earth frame, velocity form:
//   a = -vbar * (dm/dtau) / (m0 * [(c-v)/(c+v)]^{c/2vbar} * [1 - v^2/c^2]^{-3/2}).
// Requires |v| < c*(1 - 1e-12); model Relativistic or Photon.
double rel_accel(double v, double mdot_tau, const RocketParams& params);

// Relativistic acceleration, mass form:
//   a = -8*vbar * (dm/dtau) / (m * [R^{vbar/c} + R^{-vbar/c}]^3),  R = m/m0.
// Agrees with rel_accel when m and v are linked by mass_ratio_from_velocity.
// Requires 0 < m <= m0.
double rel_accel_mass_form(double m, double mdot_tau, const RocketParams& params);

// Velocity reached from rest after burning down to mass ratio R = m(tau)/m(0):
//   v/c = (1 - R^{2vbar/c}) / (1 + R^{2vbar/c}) = -tanh((vbar/c) * ln R).
// Accepts any ratio > 0; ratios above 1 (mass gain) map to v < 0.
double velocity_from_mass_ratio(double ratio, const RocketParams& params);

// Inverse closed form  m(tau)/m(0) = [(c-v)/(c+v)]^{c/2vbar} = e^{-(c/vbar) atanh(v/c)}.
// Exact inverse of velocity_from_mass_ratio; requires |v| < c*(1 - 1e-12).
double mass_ratio_from_velocity(double v, const RocketParams& params);

// Time-dilation rate dtau/dt = sqrt(1 - v^2/c^2) in (0, 1].
double proper_time_rate(double v, double c);

namespace detail {

// ln of the mass-ratio power [(c-v)/(c+v)]^{c/2vbar}, evaluated in log space
// so vbar << c (exponents ~1e4) cannot overflow or underflow a double.
double log_mass_ratio(double v, const RocketParams& params);

// ln of gamma^3 = -3/2 * ln(1 - v^2/c^2).
double log_gamma3(double v, double c);

// Throws SpeedLimitError unless |v| < c*(1 - kSpeedGuard); DomainError on non-finite v.
void require_subluminal(double v, double c);

void require_finite(double x, const char* what);

} // namespace detail

} // namespace relrocket
