#include "relrocket/linearize.hpp"

#include <cmath>

#include "relrocket/dynamics.hpp"
#include "relrocket/errors.hpp"

namespace relrocket {

namespace detail {

double log_compensator_gain(double v, const RocketParams& params) {
    if (params.model() == Model::Classical) {
        require_finite(v, "velocity");
        return -v / params.vbar();
    }
    require_subluminal(v, params.c());
    return log_mass_ratio(v, params) + log_gamma3(v, params.c());
}

} // namespace detail

CompensatorGain compensator_gain(double v, const RocketParams& params) {
    return CompensatorGain{std::exp(detail::log_compensator_gain(v, params))};
}

double to_physical(double w, double v, const RocketParams& params) {
    detail::require_finite(w, "virtual input");
    return compensator_gain(v, params).value * w;
}

double to_virtual(double u, double v, const RocketParams& params) {
    detail::require_finite(u, "mass rate");
    return u / compensator_gain(v, params).value;
}

LinearStateSpace linearized_system(const RocketParams& params) {
    LinearStateSpace ss;
    ss.B[1] = params.linear_b();
    return ss;
}

} // namespace relrocket
