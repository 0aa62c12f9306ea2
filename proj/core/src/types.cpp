#include "relrocket/types.hpp"

#include <cmath>

#include "relrocket/errors.hpp"

namespace relrocket {

std::string to_string(Model model) {
    switch (model) {
        case Model::Classical: return "classical";
        case Model::Relativistic: return "relativistic";
        case Model::Photon: return "photon";
    }
    return "?";
}

RocketParams::RocketParams(Model model, double m0, double vbar, double c, double m_dry)
    : model_(model), m0_(m0), vbar_(vbar), c_(c), m_dry_(m_dry) {
    if (!std::isfinite(m0) || !std::isfinite(vbar) || !std::isfinite(c) || !std::isfinite(m_dry))
        throw DomainError("RocketParams: non-finite parameter");
    if (c <= 0.0)
        throw DomainError("RocketParams: c must be positive");
    if (m_dry < 0.0)
        throw DomainError("RocketParams: m_dry must be non-negative");
    if (m0 <= m_dry)
        throw DomainError("RocketParams: m0 must exceed m_dry");
    if (vbar <= 0.0 || vbar > c)
        throw DomainError("RocketParams: vbar must lie in (0, c]");
    if (model == Model::Photon && vbar != c)
        throw DomainError("RocketParams: photon model requires vbar == c");
    ratio_exponent_ = 0.5 * c_ / vbar_;
}

RocketParams RocketParams::natural(Model model, double m0, double vbar, double m_dry) {
    return RocketParams(model, m0, vbar, 1.0, m_dry);
}

RocketParams RocketParams::si(Model model, double m0, double vbar, double m_dry) {
    return RocketParams(model, m0, vbar, kLightSpeedSi, m_dry);
}

RocketParams RocketParams::photon(double m0, double c, double m_dry) {
    return RocketParams(Model::Photon, m0, c, c, m_dry);
}

} // namespace relrocket
