#pragma once

#include <string>

namespace relrocket {

// Fraction of c at which operations refuse to evaluate: |v| >= c*(1 - kSpeedGuard)
// is rejected so the gamma^3 factor stays finite.
inline constexpr double kSpeedGuard = 1e-12;

// Speed of light in SI units [m/s].
inline constexpr double kLightSpeedSi = 299792458.0;

enum class Model {
    Classical,    // Newtonian rocket equation, single time axis
    Relativistic, // special-relativistic rocket equation, proper-time mass ejection
    Photon,       // relativistic with vbar = c exactly (photon exhaust)
};

std::string to_string(Model model);

// Physical parameters of the vehicle. Immutable after construction;
// the constructor validates and caches the exponent c/(2*vbar) used by
// every fractional-power evaluation.
class RocketParams {
public:
    // Throws DomainError unless m0 > m_dry >= 0, 0 < vbar <= c, c > 0,
    // and (model == Photon) => vbar == c exactly.
    RocketParams(Model model, double m0, double vbar, double c, double m_dry = 0.0);

    // Natural units: c = 1.
    static RocketParams natural(Model model, double m0, double vbar, double m_dry = 0.0);

    // SI units: c = 299792458 m/s.
    static RocketParams si(Model model, double m0, double vbar, double m_dry = 0.0);

    // Photon rocket: vbar forced to c.
    static RocketParams photon(double m0, double c = 1.0, double m_dry = 0.0);

    Model model() const { return model_; }
    double m0() const { return m0_; }
    double vbar() const { return vbar_; }
    double c() const { return c_; }
    double m_dry() const { return m_dry_; }
    bool relativistic() const { return model_ != Model::Classical; }

    // Exponent c/(2*vbar) of the mass-ratio power law (1/2 for a photon rocket).
    double ratio_exponent() const { return ratio_exponent_; }

    // Input gain of the linearized plant: b = -vbar/m0 (always negative).
    double linear_b() const { return -vbar_ / m0_; }

private:
    Model model_;
    double m0_;
    double vbar_;
    double c_;
    double m_dry_;
    double ratio_exponent_;
};

// Earth-frame position/velocity pair x(t) = [p; v].
struct KinematicState {
    double p = 0.0; // position [m], Earth frame
    double v = 0.0; // velocity [m/s], Earth frame
};

// Paired clocks: Earth time t and rocket proper time tau.
// Along a trajectory started at t = tau = 0, tau <= t (proper time runs slow).
struct FrameClock {
    double t = 0.0;   // [s], Earth frame
    double tau = 0.0; // [s], rocket frame
};

} // namespace relrocket
