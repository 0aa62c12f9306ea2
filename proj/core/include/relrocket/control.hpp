#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <utility>

#include "relrocket/types.hpp"

namespace relrocket {

// Control laws for the linearized rocket: pole-placement state feedback,
// output feedback, PID, and finite-time minimum-energy steering. Each law is
// designed on the double integrator and pushed through the compensator gain,
// so the physical command is a mass rate u (dm/dtau for relativistic models).

// State-feedback gain row K = [k1, k2]; w = -K*x.
struct GainVector {
    double k1 = 0.0; // position gain
    double k2 = 0.0; // velocity gain
};

struct PIDGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
};

// Error-integrator state threaded through pid_control calls; caller owns it.
// integral_limit (optional anti-windup clamp on |integral|) is off by default.
struct PIDState {
    double integral = 0.0;
    double prev_error = 0.0;
    double reference = 0.0;
    bool primed = false; // first call seeds prev_error without advancing
    double integral_limit = std::numeric_limits<double>::infinity();

    void reset() {
        integral = 0.0;
        prev_error = 0.0;
        primed = false;
    }
};

// Open-loop virtual input for finite-time steering, linear in time:
//   w(s) = c0 + c1*s  on [t0, T].
struct SteeringPlan {
    double t0 = 0.0;
    double T = 0.0;
    double c0 = 0.0;
    double c1 = 0.0;

    double eval(double s) const { return c0 + c1 * s; }
};

// Small symmetric 2x2 helper used for the controllability Gramian.
struct Mat2 {
    double m00 = 0.0, m01 = 0.0;
    double m10 = 0.0, m11 = 0.0;

    double det() const { return m00 * m11 - m01 * m10; }
};

// Gains placing the closed-loop eigenvalues of A - B*K at the requested pair.
// The double integrator gives char. poly s^2 + b*k2*s + b*k1, matched by
// coefficient comparison (exact, no numerics). Poles must be closed under
// conjugation (a complex pair or two reals).
GainVector place_poles(const RocketParams& params,
                       const std::array<std::complex<double>, 2>& poles);

// Compensated state feedback u = g(v) * (-K*x); same code path as to_physical.
double state_feedback(const KinematicState& x, const GainVector& K,
                      const RocketParams& params);

// Compensated output feedback u = g(ydot) * l(y). The derivative dy/dt is the
// state velocity supplied by the caller, never a numerical difference.
double output_feedback(double y, double ydot, const std::function<double(double)>& law,
                       const RocketParams& params);

// Compensated PID term without integrator bookkeeping:
//   u = [(c-edot)/(c+edot)]^{c/2vbar} [1-edot^2/c^2]^{-3/2} (kp*e + ki*integral + kd*edot)
// (classical models use e^{-edot/vbar}). The bracket equals 1 whenever edot = 0.
double pid_output(double e, double integral, double e_dot, const PIDGains& gains,
                  const RocketParams& params);

// One PID sample step: advances the integral by the trapezoidal rule over dt
// (Earth time), then evaluates pid_output. Returns (u, updated state).
std::pair<double, PIDState> pid_control(double e, PIDState state, double e_dot,
                                        const PIDGains& gains, double dt,
                                        const RocketParams& params);

// Finite-horizon controllability Gramian of the linearized plant:
//   W(t0,T) = b^2 * [[D^3/3, D^2/2], [D^2/2, D]],  D = T - t0.
// Symmetric positive definite for D > 0.
Mat2 controllability_gramian(const RocketParams& params, double t0, double T);

// Minimum-energy open-loop input steering x0 to xT over [t0, T] in linear
// coordinates: w(s) = B' e^{A'(T-s)} W^{-1} (xT - e^{A(T-t0)} x0).
// Endpoints must satisfy |v| < c for relativistic models.
SteeringPlan min_energy_steering(const KinematicState& x0, const KinematicState& xT,
                                 double t0, double T, const RocketParams& params);

// True iff the state is reachable: |v| < c for relativistic models, always
// for the classical one.
bool is_relativistically_reachable(const KinematicState& x, const RocketParams& params);

} // namespace relrocket
