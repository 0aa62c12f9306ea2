#pragma once

#include <array>

#include "relrocket/types.hpp"

namespace relrocket {

// Exact feedback linearization of the rocket plants. The state-dependent input
// transformation u = g(v) * w turns both the classical and the relativistic
// plant into the double integrator  pdot = v, vdot = b*w  with b = -vbar/m0.

// The linearized triple: A = [[0,1],[0,0]], B = [0, b], C = [1, 0].
struct LinearStateSpace {
    std::array<std::array<double, 2>, 2> A{{{0.0, 1.0}, {0.0, 0.0}}};
    std::array<double, 2> B{0.0, 0.0};
    std::array<double, 2> C{1.0, 0.0};

    double b() const { return B[1]; }
};

// Multiplier g > 0 such that the physical input is u = g * w.
struct CompensatorGain {
    double value = 1.0;
};

// Gain of the linearizing transformation at velocity v:
//   Classical:            g = e^{-v/vbar}
//   Relativistic/Photon:  g = [(c-v)/(c+v)]^{c/2vbar} * [1 - v^2/c^2]^{-3/2}
// (photon exhaust is the vbar = c case, ratio exponent 1/2).
CompensatorGain compensator_gain(double v, const RocketParams& params);

// Physical mass rate that realizes the virtual input w at velocity v: u = g(v)*w.
// For relativistic models u is dm/dtau (rocket frame); classical, dm/dt.
double to_physical(double w, double v, const RocketParams& params);

// Inverse transformation w = u / g(v); exact inverse of to_physical.
double to_virtual(double u, double v, const RocketParams& params);

// The (A, B, C) triple of the linearized plant, B = [0, -vbar/m0].
LinearStateSpace linearized_system(const RocketParams& params);

namespace detail {
// ln g(v); shared by the gain, its inverse, and the controllers.
double log_compensator_gain(double v, const RocketParams& params);
} // namespace detail

} // namespace relrocket
