#include "relrocket/controllers.hpp"

#include "relrocket/errors.hpp"
#include "relrocket/linearize.hpp"

namespace relrocket {

OutputFeedbackController OutputFeedbackController::proportional(double kp, double reference,
                                                                const RocketParams& params) {
    return OutputFeedbackController(
        [kp, reference](double y, double) { return kp * (reference - y); }, params);
}

OutputFeedbackController OutputFeedbackController::pd(double kp, double kd, double reference,
                                                      const RocketParams& params) {
    return OutputFeedbackController(
        [kp, kd, reference](double y, double ydot) { return kp * (reference - y) - kd * ydot; },
        params);
}

PidController::PidController(const PIDGains& gains, double reference,
                             const RocketParams& params, double reference_rate)
    : gains_(gains), r0_(reference), rdot_(reference_rate), params_(params) {
    state_.reference = reference;
}

void PidController::begin_step(double t, const SimState& s, double dt) {
    const double e = reference_at(t) - s.kin.p;
    const double e_dot = rdot_ - s.kin.v;
    auto [u, next] = pid_control(e, state_, e_dot, gains_, dt, params_);
    (void)u;
    state_ = next;
}

double PidController::command(double t, const SimState& s) const {
    const double e = reference_at(t) - s.kin.p;
    const double e_dot = rdot_ - s.kin.v;
    return pid_output(e, state_.integral, e_dot, gains_, params_);
}

std::optional<double> PidController::virtual_command(double t, const KinematicState& x) const {
    const double e = reference_at(t) - x.p;
    const double e_dot = rdot_ - x.v;
    return gains_.kp * e + gains_.ki * state_.integral + gains_.kd * e_dot;
}

double OpenLoopController::command(double t, const SimState& s) const {
    if (!schedule_)
        throw DomainError("OpenLoopController: empty schedule");
    const double value = schedule_(t);
    return input_ == Input::Virtual ? to_physical(value, s.kin.v, params_) : value;
}

std::optional<double> OpenLoopController::virtual_command(double t, const KinematicState&) const {
    if (input_ != Input::Virtual)
        return std::nullopt; // raw mass rate has no state-free virtual equivalent
    return schedule_(t);
}

} // namespace relrocket
