#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "relrocket/controllers.hpp"
#include "relrocket/dynamics.hpp"
#include "relrocket/errors.hpp"
#include "relrocket/linearize.hpp"
#include "relrocket/scenario.hpp"

namespace relrocket {

using nlohmann::json;

namespace {

using Verdict = CheckResult::Verdict;

CheckResult skipped(std::string name, std::string note) {
    CheckResult r;
    r.name = std::move(name);
    r.verdict = Verdict::Skipped;
    r.note = std::move(note);
    return r;
}

CheckResult judged(std::string name, bool ok, std::string measured, std::string tolerance,
                   std::string note = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    r.measured = std::move(measured);
    r.tolerance = std::move(tolerance);
    r.note = std::move(note);
    return r;
}

CheckResult check_speed_limit(const Trajectory& traj, const RocketParams& params) {
    if (!params.relativistic())
        return skipped("speed_limit", "classical model");
    double worst = 0.0;
    for (const auto& s : traj.samples)
        worst = std::max(worst, std::abs(s.state.kin.v) / params.c());
    return judged("speed_limit", worst < 1.0, "max |v|/c = " + format_double(worst),
                  "< 1");
}

CheckResult check_residual(const Trajectory& traj, const RocketParams& params,
                           const Tolerances& tol) {
    if (!params.relativistic())
        return skipped("consistency_residual", "classical model");
    double worst = 0.0;
    for (const auto& s : traj.samples)
        worst = std::max(worst, std::abs(s.residual));
    return judged("consistency_residual", worst <= tol.residual,
                  "max |residual| = " + format_double(worst),
                  "<= " + format_double(tol.residual));
}

CheckResult check_mass_monotonicity(const Trajectory& traj, const RocketParams& params,
                                    SimMode mode) {
    if (mode != SimMode::Physical)
        return skipped("mass_monotonicity", "ideal mode permits signed mass rates");
    double depleted_at = std::numeric_limits<double>::infinity();
    for (const auto& e : traj.events)
        if (e.kind == EventKind::MassDepleted)
            depleted_at = std::min(depleted_at, e.t);
    bool ok = true;
    for (size_t i = 0; i + 1 < traj.samples.size() && ok; ++i)
        ok = traj.samples[i + 1].state.m <= traj.samples[i].state.m + 1e-15 * params.m0();
    for (const auto& s : traj.samples)
        if (s.state.clock.t < depleted_at && !(s.state.m > params.m_dry()))
            ok = false;
    return judged("mass_monotonicity", ok, ok ? "non-increasing, above m_dry" : "violated",
                  "m non-increasing; m > m_dry before depletion");
}

CheckResult check_proper_time_lag(const Trajectory& traj) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& s : traj.samples)
        worst = std::max(worst, s.state.clock.tau - s.state.clock.t);
    const double slack = 1e-12 * (1.0 + std::abs(traj.samples.back().state.clock.t));
    return judged("proper_time_lag", worst <= slack,
                  "max (tau - t) = " + format_double(worst), "<= 0");
}

CheckResult check_roundtrip(const Trajectory& traj, const RocketParams& params,
                            const Tolerances& tol) {
    double worst = 0.0;
    for (const auto& s : traj.samples) {
        const double w2 = to_virtual(to_physical(s.w, s.state.kin.v, params),
                                     s.state.kin.v, params);
        worst = std::max(worst, std::abs(w2 - s.w) / (1.0 + std::abs(s.w)));
    }
    return judged("roundtrip_diffeomorphism", worst <= tol.roundtrip,
                  "max rel error = " + format_double(worst),
                  "<= " + format_double(tol.roundtrip));
}

CheckResult check_classical_limit(const RocketParams& params, const Tolerances& tol) {
    if (!params.relativistic())
        return skipped("classical_limit", "scenario already classical");
    // low-speed corner: v/c <= 1e-3 and v/vbar <= 10
    const double v = std::min(1e-3 * params.c(), 10.0 * params.vbar());
    const RocketParams classical(Model::Classical, params.m0(), params.vbar(), params.c(),
                                 params.m_dry());
    const double a_rel = rel_accel(v, -1.0, params);
    const double a_cl = classical_accel(v, -1.0, classical);
    const double rel_err = std::abs(a_rel - a_cl) / std::abs(a_cl);
    return judged("classical_limit", rel_err <= tol.classical_limit,
                  "rel difference = " + format_double(rel_err) + " at v = " +
                      format_double(v),
                  "<= " + format_double(tol.classical_limit));
}

// Twin run of the linearized plant under the same virtual-input law.
CheckResult check_linearization(const Scenario& scenario, const Trajectory& traj) {
    if (scenario.sim.zoh_period > 0.0)
        return skipped("linearization_exactness", "zero-order hold breaks stage equivalence");
    auto ctl = build_controller(scenario);
    if (!ctl->exactly_linearizing())
        return skipped("linearization_exactness",
                       "controller has no exact virtual-input inverse");
    const double b = scenario.params.linear_b();
    const double dt = scenario.sim.dt;
    KinematicState x = scenario.initial.kin;
    double worst = 0.0;

    auto w_at = [&](double t, const KinematicState& xs) {
        auto w = ctl->virtual_command(t, xs);
        return w ? *w : 0.0;
    };
    const double t0 = scenario.initial.clock.t;
    for (size_t i = 0; i + 1 < traj.samples.size(); ++i) {
        const double t = t0 + static_cast<double>(i) * dt;
        SimState probe;
        probe.clock = {t, t};
        probe.kin = x;
        probe.m = scenario.initial.m;
        ctl->begin_step(t, probe, dt);
        worst = std::max({worst, std::abs(x.p - traj.samples[i].state.kin.p),
                          std::abs(x.v - traj.samples[i].state.kin.v)});
        // RK4 on pdot = v, vdot = b*w(t, x)
        const double k1v = b * w_at(t, x);
        const KinematicState x2{x.p + 0.5 * dt * x.v, x.v + 0.5 * dt * k1v};
        const double k2v = b * w_at(t + 0.5 * dt, x2);
        const KinematicState x3{x.p + 0.5 * dt * x2.v, x.v + 0.5 * dt * k2v};
        const double k3v = b * w_at(t + 0.5 * dt, x3);
        const KinematicState x4{x.p + dt * x3.v, x.v + dt * k3v};
        const double k4v = b * w_at(t + dt, x4);
        x.p += dt / 6.0 * (x.v + 2.0 * x2.v + 2.0 * x3.v + x4.v);
        x.v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    if (!traj.samples.empty()) {
        const auto& last = traj.samples.back();
        worst = std::max({worst, std::abs(x.p - last.state.kin.p),
                          std::abs(x.v - last.state.kin.v)});
    }
    return judged("linearization_exactness", worst <= scenario.sim.tol.linearization,
                  "max |nonlinear - linear| = " + format_double(worst),
                  "<= " + format_double(scenario.sim.tol.linearization));
}

double terminal_distance(const SimState& a, const SimState& b) {
    return std::max({std::abs(a.kin.p - b.kin.p), std::abs(a.kin.v - b.kin.v),
                     std::abs(a.m - b.m), std::abs(a.clock.tau - b.clock.tau)});
}

CheckResult check_convergence(const Scenario& scenario, const Trajectory& base,
                              const Tolerances& tol) {
    if (base.ended_early())
        return skipped("convergence_order", "run ended on a terminal event");
    if (const auto* pid = std::get_if<PidSpec>(&scenario.controller);
        pid && pid->gains.ki != 0.0)
        return skipped("convergence_order",
                       "PID integral advances by the trapezoidal rule (2nd order), "
                       "so the closed loop cannot shrink at 4th order");
    auto rerun = [&](double dt) {
        Scenario s = scenario;
        s.sim.dt = dt;
        auto ctl = build_controller(s);
        return run_closed_loop(s.params, s.initial, s.sim, *ctl);
    };
    const Trajectory half = rerun(scenario.sim.dt / 2.0);
    const Trajectory ref = rerun(scenario.sim.dt / 16.0);
    if (half.ended_early() || ref.ended_early())
        return skipped("convergence_order", "refined run ended on a terminal event");

    const double e1 = terminal_distance(base.terminal(), ref.terminal());
    const double e2 = terminal_distance(half.terminal(), ref.terminal());
    const SimState& t = ref.terminal();
    const double scale = 1.0 + std::max({std::abs(t.kin.p), std::abs(t.kin.v),
                                         std::abs(t.m), std::abs(t.clock.tau)});
    if (e2 <= 1e-12 * scale)
        return judged("convergence_order", true,
                      "errors " + format_double(e1) + " / " + format_double(e2),
                      "ratio in [" + format_double(tol.convergence_low) + ", " +
                          format_double(tol.convergence_high) + "]",
                      "truncation already at the rounding floor");
    const double ratio = e1 / e2;
    return judged("convergence_order",
                  ratio >= tol.convergence_low && ratio <= tol.convergence_high,
                  "error ratio under dt halving = " + format_double(ratio),
                  "in [" + format_double(tol.convergence_low) + ", " +
                      format_double(tol.convergence_high) + "]");
}

} // namespace

bool RunReport::any_failed() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.verdict == Verdict::Fail; });
}

ExecuteResult execute(const Scenario& scenario, bool write_output) {
    ExecuteResult result;
    auto ctl = build_controller(scenario, &result.report.designed);
    result.trajectory =
        run_closed_loop(scenario.params, scenario.initial, scenario.sim, *ctl);

    const Trajectory& traj = result.trajectory;
    RunReport& rep = result.report;
    rep.terminal = traj.terminal();
    rep.events = traj.events;
    rep.checks.push_back(check_speed_limit(traj, scenario.params));
    rep.checks.push_back(check_residual(traj, scenario.params, scenario.sim.tol));
    rep.checks.push_back(check_mass_monotonicity(traj, scenario.params, scenario.sim.mode));
    rep.checks.push_back(check_proper_time_lag(traj));
    rep.checks.push_back(skipped("linearization_exactness", "evaluated by `verify`"));
    rep.checks.push_back(skipped("convergence_order", "evaluated by `verify`"));
    rep.exit_code = traj.ended_early() ? 2 : 0;

    if (write_output)
        write_trajectory_file(scenario.output.path, traj, scenario.output.format);
    return result;
}

RunReport verify(const Scenario& scenario) {
    RunReport rep;
    auto ctl = build_controller(scenario, &rep.designed);
    const Trajectory traj =
        run_closed_loop(scenario.params, scenario.initial, scenario.sim, *ctl);
    rep.terminal = traj.terminal();
    rep.events = traj.events;
    rep.checks.push_back(check_speed_limit(traj, scenario.params));
    rep.checks.push_back(check_residual(traj, scenario.params, scenario.sim.tol));
    rep.checks.push_back(check_roundtrip(traj, scenario.params, scenario.sim.tol));
    rep.checks.push_back(check_classical_limit(scenario.params, scenario.sim.tol));
    rep.checks.push_back(check_linearization(scenario, traj));
    rep.checks.push_back(check_convergence(scenario, traj, scenario.sim.tol));
    rep.checks.push_back(check_mass_monotonicity(traj, scenario.params, scenario.sim.mode));
    rep.checks.push_back(check_proper_time_lag(traj));
    rep.exit_code = rep.any_failed() ? 2 : 0;
    return rep;
}

namespace {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Skipped: return "skipped";
    }
    return "?";
}

} // namespace

std::string RunReport::to_text() const {
    std::ostringstream out;
    out << "terminal: t=" << format_double(terminal.clock.t)
        << " tau=" << format_double(terminal.clock.tau)
        << " p=" << format_double(terminal.kin.p) << " v=" << format_double(terminal.kin.v)
        << " m=" << format_double(terminal.m) << "\n";
    if (designed.gains)
        out << "designed gains: K = [" << format_double(designed.gains->k1) << ", "
            << format_double(designed.gains->k2) << "]\n";
    if (designed.plan)
        out << "steering plan: w(s) = " << format_double(designed.plan->c0) << " + "
            << format_double(designed.plan->c1) << "*s on [" << format_double(designed.plan->t0)
            << ", " << format_double(designed.plan->T) << "]\n";
    if (events.empty()) {
        out << "events: none\n";
    } else {
        out << "events:\n";
        for (const auto& e : events)
            out << "  t=" << format_double(e.t) << " " << to_string(e.kind) << "\n";
    }
    out << "checks:\n";
    for (const auto& c : checks) {
        out << "  [" << verdict_name(c.verdict) << "] " << c.name;
        if (!c.measured.empty())
            out << ": " << c.measured;
        if (!c.tolerance.empty())
            out << " (require " << c.tolerance << ")";
        if (!c.note.empty())
            out << " -- " << c.note;
        out << "\n";
    }
    return out.str();
}

std::string RunReport::to_json() const {
    json j;
    j["terminal"] = {{"t", terminal.clock.t},
                     {"tau", terminal.clock.tau},
                     {"p", terminal.kin.p},
                     {"v", terminal.kin.v},
                     {"m", terminal.m}};
    j["events"] = json::array();
    for (const auto& e : events)
        j["events"].push_back({{"t", e.t}, {"kind", to_string(e.kind)}});
    j["checks"] = json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name},
                               {"verdict", verdict_name(c.verdict)},
                               {"measured", c.measured},
                               {"tolerance", c.tolerance},
                               {"note", c.note}});
    if (designed.gains)
        j["designed"]["gains"] = {designed.gains->k1, designed.gains->k2};
    if (designed.plan)
        j["designed"]["steering_plan"] = {{"t0", designed.plan->t0},
                                          {"T", designed.plan->T},
                                          {"c0", designed.plan->c0},
                                          {"c1", designed.plan->c1}};
    j["exit_code"] = exit_code;
    return j.dump(2) + "\n";
}

std::string config_schema() {
    return R"(Scenario configuration (JSON object). Unknown keys are rejected.

{
  "params": {                       required
    "model":  "classical" | "relativistic" | "photon",
    "m0":     number > m_dry        initial total mass [kg],
    "vbar":   number in (0, c]      exhaust speed, rocket frame
                                    (photon: defaults to c and must equal c),
    "m_dry":  number >= 0           dry-mass floor, default 0
  },
  "si_units": bool                  default false; true sets c = 299792458 m/s,
  "c":        number > 0            explicit light speed, exclusive with si_units
                                    (default: natural units, c = 1),
  "initial": {                      optional, defaults p = v = 0
    "p": number, "v": number (|v| < c),
    "m": number > 0                 default: m0 * mass ratio at v
  },
  "controller":                     required, exactly one variant:
    {"type": "state_feedback", "gains": [k1, k2]}
    {"type": "state_feedback", "poles": [p1, p2]}        poles: number or [re, im]
    {"type": "output_feedback", "preset": "proportional" | "pd",
     "kp": number, "kd": number (pd only), "reference": number (default 0)}
    {"type": "pid", "kp": n, "ki": n, "kd": n, "reference": n,
     "reference_rate": n (default 0), "integral_limit": n > 0 (optional)}
    {"type": "open_loop", "input": "virtual" | "mass_rate" (default virtual),
     "value": number  OR  "schedule": [[t, value], ...] (piecewise linear)}
    {"type": "steering", "target": {"p": n, "v": n}, "t0": n (default 0), "T": n > t0},
  "sim": {                          required
    "dt": number > 0                default 1e-3,
    "horizon": number >= dt         required,
    "mode": "ideal" | "physical"    default ideal,
    "abort_eps": number             in (0, 1e-6], default 1e-12,
    "zoh_period": number >= 0       default 0 (re-evaluate controller per RK4 stage),
    "tolerances": {"residual", "roundtrip", "classical_limit", "linearization",
                   "convergence_low", "convergence_high"}   optional overrides
  },
  "output": {                       optional
    "path": string                  default "trajectory.csv",
    "format": "csv" | "json"        default csv
  }
}
)";
}

} // namespace relrocket
