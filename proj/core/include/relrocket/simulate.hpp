#pragma once

#include <optional>
#include <vector>

#include "relrocket/types.hpp"

namespace relrocket {

// Fixed-step RK4 integration of the closed- or open-loop rocket in Earth time,
// with joint bookkeeping of proper time and mass. Runs are single-threaded and
// deterministic: identical inputs produce identical trajectories.

// Augmented integration state spanning both frames.
struct SimState {
    FrameClock clock;   // (t, tau)
    KinematicState kin; // (p, v)
    double m = 0.0;     // current total mass [kg]
};

enum class SimMode {
    Ideal,    // commanded mass rate applied verbatim, any sign (the bare algebra)
    Physical, // u clamped to mass loss, run stops at the dry-mass floor
};

enum class EventKind {
    SpeedLimitAbort, // |v| crossed c*(1 - abort_eps); run ended
    MassDepleted,    // Physical mode, m reached m_dry; run ended
    InputClamped,    // Physical mode, commanded u began binding against a clamp
};

std::string to_string(EventKind kind);

// Tolerances consumed by the invariant monitors (scenario `verify`).
struct Tolerances {
    double residual = 1e-8;        // |mass-velocity consistency residual|
    double roundtrip = 1e-12;      // compensator round trip, relative
    double classical_limit = 1e-4; // low-speed classical agreement, relative
    double linearization = 1e-8;   // nonlinear vs linear trajectory, absolute
    double convergence_low = 12.0; // accepted band for the error ratio under
    double convergence_high = 20.0; // dt halving (4th order ~ 16x)
};

struct SimConfig {
    double dt = 1e-3;       // Earth-frame step [s]
    double horizon = 1.0;   // run length [s]
    SimMode mode = SimMode::Ideal;
    double abort_eps = 1e-12; // abort when |v| >= c*(1 - abort_eps); in (0, 1e-6]
    double zoh_period = 0.0;  // > 0: hold the commanded u between samples of
                              // this period instead of re-evaluating per stage
    Tolerances tol;

    // Throws DomainError unless dt > 0, horizon >= dt, abort_eps in (0, 1e-6].
    void validate() const;
};

// One logged integration sample.
struct TrajectorySample {
    SimState state;
    double u = 0.0;        // applied mass rate at the sample state
    double w = 0.0;        // virtual-input equivalent u / gain
    double gain = 1.0;     // compensator gain at the sample velocity
    double residual = 0.0; // mass-velocity consistency residual
};

struct TrajectoryEvent {
    double t = 0.0;
    EventKind kind{};
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<TrajectoryEvent> events;

    const SimState& terminal() const { return samples.back().state; }
    bool ended_early() const;
};

// Input provider re-evaluated at every RK4 stage. Stateful controllers (PID,
// zero-order hold) advance in begin_step, called once per accepted step before
// the stage evaluations; command() must be pure given the frozen state.
class Controller {
public:
    virtual ~Controller() = default;
    virtual void begin_step(double /*t*/, const SimState& /*s*/, double /*dt*/) {}
    virtual double command(double t, const SimState& s) const = 0;
    // w this law would emit on the linearized plant; nullopt when the
    // controller commands a raw mass rate with no virtual-input equivalent.
    virtual std::optional<double> virtual_command(double /*t*/,
                                                  const KinematicState& /*x*/) const {
        return std::nullopt;
    }
    // True when command() == g(v) * virtual_command() identically, i.e. the
    // closed loop reduces exactly to the double integrator. The PID law
    // evaluates its bracket at e_dot rather than v, so it does not.
    virtual bool exactly_linearizing() const { return true; }
};

// Joint time derivatives of (p, v, m, tau) under commanded mass rate u.
// Relativistic models: dv/dt from the velocity-form rocket equation,
// dtau/dt = sqrt(1 - v^2/c^2), dm/dt = u * dtau/dt (u is dm/dtau).
// Classical: u is dm/dt directly and tau tracks t.
struct Derivatives {
    double dp = 0.0;
    double dv = 0.0;
    double dm = 0.0;
    double dtau = 0.0;
};

Derivatives derivatives(const SimState& state, double u, const RocketParams& params);

struct StepResult {
    SimState next;
    bool completed = false; // false: aborted at a stage, next == input state
    bool clamped = false;   // a Physical-mode clamp bound during this step
    std::optional<EventKind> terminal;
};

// One classical RK4 step over (p, v, m, tau) with the controller re-evaluated
// at each stage. Physical mode clamps the commanded u into
// [-(m - m_dry)/dt, 0]. The effective abort threshold is
// max(abort_eps, 1e-12) because the dynamics reject |v| beyond the 1e-12 guard.
StepResult step_rk4(const SimState& state, const Controller& controller, double dt,
                    const RocketParams& params, SimMode mode, double abort_eps = 1e-12);

// Integrates horizon/dt steps (or stops at a terminal event) and logs every
// sample with applied input, gain and consistency residual. InputClamped is
// recorded when a clamp starts binding, terminal events when the run ends.
Trajectory run_closed_loop(const RocketParams& params, const SimState& initial,
                           const SimConfig& config, Controller& controller);

// Deviation from the closed-form mass-velocity relation, generalized to an
// arbitrary start by ratio composition:
//   (m / m_init) - ratio(v) / ratio(v_init)
// with ratio = [(c-v)/(c+v)]^{c/2vbar} (classical models use e^{-v/vbar}).
// Zero along exact trajectories of the plant.
double consistency_residual(const SimState& state, const RocketParams& params,
                            double v_initial, double m_initial);

} // namespace relrocket
