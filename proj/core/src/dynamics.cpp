#include "relrocket/dynamics.hpp"

#include <cmath>
#include <string>

#include "relrocket/errors.hpp"

namespace relrocket {

namespace detail {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x))
        throw DomainError(std::string(what) + ": non-finite value");
}

void require_subluminal(double v, double c) {
    require_finite(v, "velocity");
    if (std::abs(v) >= c * (1.0 - kSpeedGuard))
        throw SpeedLimitError("velocity at or beyond the light-speed guard c*(1 - 1e-12)");
}

double log_mass_ratio(double v, const RocketParams& params) {
    // ln [(c-v)/(c+v)]^{c/2vbar} = -(c/vbar) * atanh(v/c)
    return -2.0 * params.ratio_exponent() * std::atanh(v / params.c());
}

double log_gamma3(double v, double c) {
    const double r = v / c;
    // 1 - r^2 factored as (1-r)(1+r) keeps precision as |v| -> c
    return -1.5 * (std::log1p(-r) + std::log1p(r));
}

} // namespace detail

double classical_accel(double v, double mdot, const RocketParams& params) {
    if (params.model() != Model::Classical)
        throw DomainError("classical_accel: params are not a classical model");
    detail::require_finite(v, "velocity");
    detail::require_finite(mdot, "mdot");
    return -std::exp(v / params.vbar()) * (params.vbar() / params.m0()) * mdot;
}

double classical_mass(double v, const RocketParams& params) {
    if (params.model() != Model::Classical)
        throw DomainError("classical_mass: params are not a classical model");
    detail::require_finite(v, "velocity");
    return params.m0() * std::exp(-v / params.vbar());
}

double rel_accel(double v, double mdot_tau, const RocketParams& params) {
    if (!params.relativistic())
        throw DomainError("rel_accel: params are not a relativistic model");
    detail::require_subluminal(v, params.c());
    detail::require_finite(mdot_tau, "mdot_tau");
    // denominator m0 * ratio^k * gamma^3 assembled in log space
    const double log_denom =
        detail::log_mass_ratio(v, params) + detail::log_gamma3(v, params.c());
    return -(params.vbar() / params.m0()) * mdot_tau * std::exp(-log_denom);
}

double rel_accel_mass_form(double m, double mdot_tau, const RocketParams& params) {
    if (!params.relativistic())
        throw DomainError("rel_accel_mass_form: params are not a relativistic model");
    detail::require_finite(m, "mass");
    detail::require_finite(mdot_tau, "mdot_tau");
    if (m <= 0.0 || m > params.m0())
        throw DomainError("rel_accel_mass_form: mass must lie in (0, m0]");
    // bracket = R^q + R^{-q} = 2 cosh(q ln R) with q = vbar/c
    const double q = params.vbar() / params.c();
    const double z = q * std::log(m / params.m0());
    if (std::abs(z) <= 200.0) {
        const double bracket = 2.0 * std::cosh(z);
        return -8.0 * params.vbar() * mdot_tau / (m * bracket * bracket * bracket);
    }
    // cube would overflow; assemble the denominator in log space
    const double log_bracket = std::abs(z) + std::log1p(std::exp(-2.0 * std::abs(z)));
    return -8.0 * params.vbar() * mdot_tau * std::exp(-(std::log(m) + 3.0 * log_bracket));
}

double velocity_from_mass_ratio(double ratio, const RocketParams& params) {
    if (!params.relativistic())
        throw DomainError("velocity_from_mass_ratio: params are not a relativistic model");
    detail::require_finite(ratio, "ratio");
    if (ratio <= 0.0)
        throw DomainError("velocity_from_mass_ratio: ratio must be positive");
    // v/c = (1 - R^{2vbar/c}) / (1 + R^{2vbar/c}) = -tanh((vbar/c) ln R)
    return -params.c() * std::tanh(std::log(ratio) * (params.vbar() / params.c()));
}

double mass_ratio_from_velocity(double v, const RocketParams& params) {
    if (!params.relativistic())
        throw DomainError("mass_ratio_from_velocity: params are not a relativistic model");
    detail::require_subluminal(v, params.c());
    return std::exp(detail::log_mass_ratio(v, params));
}

double proper_time_rate(double v, double c) {
    detail::require_subluminal(v, c);
    const double r = v / c;
    return std::sqrt((1.0 - r) * (1.0 + r));
}

} // namespace relrocket
