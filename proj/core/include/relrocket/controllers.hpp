#pragma once

#include <functional>

#include "relrocket/control.hpp"
#include "relrocket/linearize.hpp"
#include "relrocket/simulate.hpp"

namespace relrocket {

// Concrete Controller implementations wiring the control laws into the
// simulator. Each one also reports the virtual input it would emit on the
// linearized plant so a run can be checked against its linear twin.

class ZeroController final : public Controller {
public:
    double command(double, const SimState&) const override { return 0.0; }
    std::optional<double> virtual_command(double, const KinematicState&) const override {
        return 0.0;
    }
};

// u = g(v) * (-K x)
class StateFeedbackController final : public Controller {
public:
    StateFeedbackController(const GainVector& K, const RocketParams& params)
        : K_(K), params_(params) {}

    double command(double, const SimState& s) const override {
        return state_feedback(s.kin, K_, params_);
    }
    std::optional<double> virtual_command(double, const KinematicState& x) const override {
        return -(K_.k1 * x.p + K_.k2 * x.v);
    }

private:
    GainVector K_;
    RocketParams params_;
};

// u = g(v) * law(y, ydot) with y = p, ydot = v taken from the state.
class OutputFeedbackController final : public Controller {
public:
    using Law = std::function<double(double y, double ydot)>;

    OutputFeedbackController(Law law, const RocketParams& params)
        : law_(std::move(law)), params_(params) {}

    // w = kp * (r - y)
    static OutputFeedbackController proportional(double kp, double reference,
                                                 const RocketParams& params);
    // w = kp * (r - y) - kd * ydot
    static OutputFeedbackController pd(double kp, double kd, double reference,
                                       const RocketParams& params);

    double command(double, const SimState& s) const override {
        return to_physical(law_(s.kin.p, s.kin.v), s.kin.v, params_);
    }
    std::optional<double> virtual_command(double, const KinematicState& x) const override {
        return law_(x.p, x.v);
    }

private:
    Law law_;
    RocketParams params_;
};

// Compensated PID against reference r(t) = r0 + rdot*t. The integral advances
// by the trapezoidal rule once per accepted step (begin_step); the stage
// evaluations use the frozen integral with stage-local P and D terms.
// e_dot = rdot - v (the state velocity, never a numerical difference).
class PidController final : public Controller {
public:
    PidController(const PIDGains& gains, double reference, const RocketParams& params,
                  double reference_rate = 0.0);

    void set_integral_limit(double limit) { state_.integral_limit = limit; }
    const PIDState& pid_state() const { return state_; }

    void begin_step(double t, const SimState& s, double dt) override;
    double command(double t, const SimState& s) const override;
    std::optional<double> virtual_command(double t, const KinematicState& x) const override;
    bool exactly_linearizing() const override { return false; }

private:
    double reference_at(double t) const { return r0_ + rdot_ * t; }

    PIDGains gains_;
    PIDState state_;
    double r0_;
    double rdot_;
    RocketParams params_;
};

// Open-loop schedule in Earth time. Virtual input is pushed through the
// compensator; a mass-rate schedule is applied verbatim.
class OpenLoopController final : public Controller {
public:
    enum class Input { Virtual, MassRate };

    OpenLoopController(Input input, std::function<double(double t)> schedule,
                       const RocketParams& params)
        : input_(input), schedule_(std::move(schedule)), params_(params) {}

    double command(double t, const SimState& s) const override;
    std::optional<double> virtual_command(double t, const KinematicState&) const override;
    bool exactly_linearizing() const override { return input_ == Input::Virtual; }

private:
    Input input_;
    std::function<double(double)> schedule_;
    RocketParams params_;
};

// Executes a minimum-energy steering plan; w = 0 outside [t0, T].
class SteeringController final : public Controller {
public:
    SteeringController(const SteeringPlan& plan, const RocketParams& params)
        : plan_(plan), params_(params) {}

    double command(double t, const SimState& s) const override {
        return to_physical(w_at(t), s.kin.v, params_);
    }
    std::optional<double> virtual_command(double t, const KinematicState&) const override {
        return w_at(t);
    }

private:
    double w_at(double t) const {
        return (t >= plan_.t0 && t <= plan_.T) ? plan_.eval(t) : 0.0;
    }

    SteeringPlan plan_;
    RocketParams params_;
};

} // namespace relrocket
