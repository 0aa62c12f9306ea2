#include "relrocket/control.hpp"

#include <algorithm>
#include <cmath>

#include "relrocket/dynamics.hpp"
#include "relrocket/errors.hpp"
#include "relrocket/linearize.hpp"

namespace relrocket {

GainVector place_poles(const RocketParams& params,
                       const std::array<std::complex<double>, 2>& poles) {
    const double b = params.linear_b();
    if (b == 0.0)
        throw DomainError("place_poles: b = -vbar/m0 is zero, plant not controllable");

    const auto& p1 = poles[0];
    const auto& p2 = poles[1];
    if (!std::isfinite(p1.real()) || !std::isfinite(p1.imag()) ||
        !std::isfinite(p2.real()) || !std::isfinite(p2.imag()))
        throw DomainError("place_poles: non-finite pole");

    // conjugate closure: imaginary parts must cancel
    const double scale = std::max({1.0, std::abs(p1), std::abs(p2)});
    if (std::abs(p1.imag() + p2.imag()) > 1e-12 * scale)
        throw DomainError("place_poles: poles are not closed under conjugation");

    // desired s^2 - (p1+p2)s + p1*p2  vs  s^2 + b*k2*s + b*k1
    const double sum = p1.real() + p2.real();
    const double prod = (p1 * p2).real();
    return GainVector{prod / b, -sum / b};
}

double state_feedback(const KinematicState& x, const GainVector& K,
                      const RocketParams& params) {
    const double w = -(K.k1 * x.p + K.k2 * x.v);
    return to_physical(w, x.v, params);
}

double output_feedback(double y, double ydot, const std::function<double(double)>& law,
                       const RocketParams& params) {
    detail::require_finite(y, "output y");
    if (!law)
        throw DomainError("output_feedback: empty law");
    return to_physical(law(y), ydot, params);
}

double pid_output(double e, double integral, double e_dot, const PIDGains& gains,
                  const RocketParams& params) {
    detail::require_finite(e, "error");
    detail::require_finite(integral, "integral");
    // the bracket is the compensator-gain formula evaluated at e_dot
    const double comp = compensator_gain(e_dot, params).value;
    return comp * (gains.kp * e + gains.ki * integral + gains.kd * e_dot);
}

std::pair<double, PIDState> pid_control(double e, PIDState state, double e_dot,
                                        const PIDGains& gains, double dt,
                                        const RocketParams& params) {
    detail::require_finite(e, "error");
    if (!(dt > 0.0))
        throw DomainError("pid_control: dt must be positive");
    if (state.primed) {
        state.integral += 0.5 * dt * (state.prev_error + e);
        state.integral = std::clamp(state.integral, -state.integral_limit,
                                    state.integral_limit);
    }
    state.prev_error = e;
    state.primed = true;
    return {pid_output(e, state.integral, e_dot, gains, params), state};
}

Mat2 controllability_gramian(const RocketParams& params, double t0, double T) {
    detail::require_finite(t0, "t0");
    detail::require_finite(T, "T");
    if (T <= t0)
        throw DomainError("controllability_gramian: horizon must satisfy T > t0");
    const double b = params.linear_b();
    const double d = T - t0;
    const double b2 = b * b;
    Mat2 w;
    w.m00 = b2 * d * d * d / 3.0;
    w.m01 = b2 * d * d / 2.0;
    w.m10 = w.m01;
    w.m11 = b2 * d;
    return w;
}

SteeringPlan min_energy_steering(const KinematicState& x0, const KinematicState& xT,
                                 double t0, double T, const RocketParams& params) {
    if (!is_relativistically_reachable(x0, params) ||
        !is_relativistically_reachable(xT, params))
        throw UnreachableError("min_energy_steering: endpoint with |v| >= c is not reachable");
    const Mat2 w = controllability_gramian(params, t0, T);
    const double b = params.linear_b();

    // drift term e^{A(T-t0)} x0 = (p0 + D*v0, v0)
    const double d = T - t0;
    const double dp = xT.p - (x0.p + d * x0.v);
    const double dv = xT.v - x0.v;

    // eta = W^{-1} (xT - e^{AD} x0), 2x2 inverse via the determinant
    const double det = w.det();
    const double eta1 = (w.m11 * dp - w.m01 * dv) / det;
    const double eta2 = (-w.m10 * dp + w.m00 * dv) / det;

    // w(s) = b * [eta1 * (T - s) + eta2]
    SteeringPlan plan;
    plan.t0 = t0;
    plan.T = T;
    plan.c0 = b * (eta1 * T + eta2);
    plan.c1 = -b * eta1;
    return plan;
}

bool is_relativistically_reachable(const KinematicState& x, const RocketParams& params) {
    if (params.model() == Model::Classical)
        return true;
    return std::isfinite(x.v) && std::abs(x.v) < params.c();
}

} // namespace relrocket
