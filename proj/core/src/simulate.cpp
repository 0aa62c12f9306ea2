#include "relrocket/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "relrocket/control.hpp"
#include "relrocket/dynamics.hpp"
#include "relrocket/errors.hpp"
#include "relrocket/linearize.hpp"

namespace relrocket {

std::string to_string(EventKind kind) {
    switch (kind) {
        case EventKind::SpeedLimitAbort: return "speed_limit_abort";
        case EventKind::MassDepleted: return "mass_depleted";
        case EventKind::InputClamped: return "input_clamped";
    }
    return "?";
}

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw DomainError("SimConfig: dt must be positive");
    if (!(horizon >= dt) || !std::isfinite(horizon))
        throw DomainError("SimConfig: horizon must be at least dt");
    if (!(abort_eps > 0.0) || abort_eps > 1e-6)
        throw DomainError("SimConfig: abort_eps must lie in (0, 1e-6]");
    if (zoh_period < 0.0 || !std::isfinite(zoh_period))
        throw DomainError("SimConfig: zoh_period must be non-negative");
}

bool Trajectory::ended_early() const {
    for (const auto& e : events)
        if (e.kind == EventKind::SpeedLimitAbort || e.kind == EventKind::MassDepleted)
            return true;
    return false;
}

Derivatives derivatives(const SimState& state, double u, const RocketParams& params) {
    detail::require_finite(u, "mass rate");
    Derivatives d;
    d.dp = state.kin.v;
    if (params.relativistic()) {
        d.dv = rel_accel(state.kin.v, u, params);
        d.dtau = proper_time_rate(state.kin.v, params.c());
        d.dm = u * d.dtau; // commanded dm/dtau converted to Earth-time flow
    } else {
        d.dv = classical_accel(state.kin.v, u, params);
        d.dtau = 1.0;
        d.dm = u;
    }
    return d;
}

namespace {

double effective_guard(const RocketParams& params, double abort_eps) {
    return params.c() * (1.0 - std::max(abort_eps, kSpeedGuard));
}

bool beyond_guard(const SimState& s, const RocketParams& params, double limit) {
    return params.relativistic() && std::abs(s.kin.v) >= limit;
}

struct StageEval {
    Derivatives d;
    bool clamped = false;
    bool aborted = false;
};

StageEval eval_stage(const SimState& s, double t, const Controller& ctl,
                     const RocketParams& params, SimMode mode, double dt,
                     double limit) {
    StageEval out;
    if (beyond_guard(s, params, limit)) {
        out.aborted = true;
        return out;
    }
    SimState stage = s;
    stage.clock.t = t;
    double u = ctl.command(t, stage);
    if (mode == SimMode::Physical) {
        const double floor = std::min(-(s.m - params.m_dry()) / dt, 0.0);
        const double clamped_u = std::clamp(u, floor, 0.0);
        out.clamped = clamped_u != u;
        u = clamped_u;
    }
    out.d = derivatives(stage, u, params);
    return out;
}

SimState advance(const SimState& s, const Derivatives& d, double h) {
    SimState n = s;
    n.clock.t += h;
    n.clock.tau += h * d.dtau;
    n.kin.p += h * d.dp;
    n.kin.v += h * d.dv;
    n.m += h * d.dm;
    return n;
}

// Mass floor treated as reached once the remaining margin is negligible;
// the rate clamp alone would only approach m_dry asymptotically.
bool depleted(const SimState& s, const RocketParams& params) {
    return s.m - params.m_dry() <= 1e-12 * (params.m0() - params.m_dry());
}

} // namespace

StepResult step_rk4(const SimState& state, const Controller& controller, double dt,
                    const RocketParams& params, SimMode mode, double abort_eps) {
    if (!(dt > 0.0))
        throw DomainError("step_rk4: dt must be positive");
    const double limit = effective_guard(params, abort_eps);
    const double t0 = state.clock.t;

    StepResult res;
    res.next = state;
    const StageEval k1 = eval_stage(state, t0, controller, params, mode, dt, limit);
    if (k1.aborted) { res.terminal = EventKind::SpeedLimitAbort; return res; }
    const StageEval k2 = eval_stage(advance(state, k1.d, 0.5 * dt), t0 + 0.5 * dt,
                                    controller, params, mode, dt, limit);
    if (k2.aborted) { res.terminal = EventKind::SpeedLimitAbort; return res; }
    const StageEval k3 = eval_stage(advance(state, k2.d, 0.5 * dt), t0 + 0.5 * dt,
                                    controller, params, mode, dt, limit);
    if (k3.aborted) { res.terminal = EventKind::SpeedLimitAbort; return res; }
    const StageEval k4 = eval_stage(advance(state, k3.d, dt), t0 + dt,
                                    controller, params, mode, dt, limit);
    if (k4.aborted) { res.terminal = EventKind::SpeedLimitAbort; return res; }

    Derivatives sum;
    sum.dp = (k1.d.dp + 2.0 * k2.d.dp + 2.0 * k3.d.dp + k4.d.dp) / 6.0;
    sum.dv = (k1.d.dv + 2.0 * k2.d.dv + 2.0 * k3.d.dv + k4.d.dv) / 6.0;
    sum.dm = (k1.d.dm + 2.0 * k2.d.dm + 2.0 * k3.d.dm + k4.d.dm) / 6.0;
    sum.dtau = (k1.d.dtau + 2.0 * k2.d.dtau + 2.0 * k3.d.dtau + k4.d.dtau) / 6.0;

    res.next = advance(state, sum, dt);
    res.completed = true;
    res.clamped = k1.clamped || k2.clamped || k3.clamped || k4.clamped;
    if (beyond_guard(res.next, params, limit))
        res.terminal = EventKind::SpeedLimitAbort;
    else if (mode == SimMode::Physical && depleted(res.next, params))
        res.terminal = EventKind::MassDepleted;
    return res;
}

namespace {

// Latches the inner controller's command between refresh instants.
class ZohAdapter final : public Controller {
public:
    ZohAdapter(Controller& inner, double period) : inner_(inner), period_(period) {}

    void begin_step(double t, const SimState& s, double dt) override {
        inner_.begin_step(t, s, dt);
        if (!primed_ || t >= next_refresh_ - 1e-12 * period_) {
            held_ = inner_.command(t, s);
            next_refresh_ = t + period_;
            primed_ = true;
        }
    }

    double command(double, const SimState&) const override { return held_; }

    std::optional<double> virtual_command(double t, const KinematicState& x) const override {
        return inner_.virtual_command(t, x);
    }

private:
    Controller& inner_;
    double period_;
    double held_ = 0.0;
    double next_refresh_ = 0.0;
    bool primed_ = false;
};

} // namespace

Trajectory run_closed_loop(const RocketParams& params, const SimState& initial,
                           const SimConfig& config, Controller& controller) {
    config.validate();
    if (!is_relativistically_reachable(initial.kin, params))
        throw UnreachableError("run_closed_loop: initial state with |v| >= c is not reachable");
    if (params.relativistic())
        detail::require_subluminal(initial.kin.v, params.c());

    ZohAdapter zoh(controller, config.zoh_period);
    Controller& ctl = config.zoh_period > 0.0 ? static_cast<Controller&>(zoh) : controller;

    const double v_init = initial.kin.v;
    const double m_init = initial.m;
    const auto n_steps = static_cast<long long>(std::llround(config.horizon / config.dt));

    Trajectory traj;
    traj.samples.reserve(static_cast<size_t>(n_steps) + 1);

    auto log_sample = [&](const SimState& s) {
        TrajectorySample smp;
        smp.state = s;
        double u = ctl.command(s.clock.t, s);
        if (config.mode == SimMode::Physical) {
            const double floor = std::min(-(s.m - params.m_dry()) / config.dt, 0.0);
            u = std::clamp(u, floor, 0.0);
        }
        smp.u = u;
        smp.gain = compensator_gain(s.kin.v, params).value;
        smp.w = u / smp.gain;
        smp.residual = consistency_residual(s, params, v_init, m_init);
        traj.samples.push_back(smp);
    };

    SimState s = initial;
    ctl.begin_step(s.clock.t, s, config.dt);
    log_sample(s);

    bool was_clamped = false;
    for (long long i = 0; i < n_steps; ++i) {
        StepResult res = step_rk4(s, ctl, config.dt, params, config.mode, config.abort_eps);
        if (res.clamped && !was_clamped)
            traj.events.push_back({s.clock.t, EventKind::InputClamped});
        was_clamped = res.clamped;

        if (!res.completed) {
            // aborted at a stage: the step never happened, end at the last good sample
            traj.events.push_back({s.clock.t, EventKind::SpeedLimitAbort});
            break;
        }

        s = res.next;
        s.clock.t = initial.clock.t + static_cast<double>(i + 1) * config.dt;
        if (res.terminal == EventKind::SpeedLimitAbort) {
            // the crossing state may sit beyond the dynamics guard; log the event only
            traj.events.push_back({s.clock.t, EventKind::SpeedLimitAbort});
            break;
        }
        ctl.begin_step(s.clock.t, s, config.dt);
        log_sample(s);
        if (res.terminal == EventKind::MassDepleted) {
            traj.events.push_back({s.clock.t, EventKind::MassDepleted});
            break;
        }
    }
    return traj;
}

double consistency_residual(const SimState& state, const RocketParams& params,
                            double v_initial, double m_initial) {
    if (m_initial == 0.0)
        throw DomainError("consistency_residual: m_initial must be nonzero");
    double log_ratio_rel;
    if (params.relativistic()) {
        log_ratio_rel = detail::log_mass_ratio(state.kin.v, params) -
                        detail::log_mass_ratio(v_initial, params);
    } else {
        log_ratio_rel = -(state.kin.v - v_initial) / params.vbar();
    }
    return state.m / m_initial - std::exp(log_ratio_rel);
}

} // namespace relrocket
