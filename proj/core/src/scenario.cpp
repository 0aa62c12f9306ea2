#include "relrocket/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "relrocket/controllers.hpp"
#include "relrocket/dynamics.hpp"
#include "relrocket/errors.hpp"
#include "relrocket/linearize.hpp"

namespace relrocket {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known)
            throw ConfigError("unknown key '" + it.key() + "'", ctx);
    }
}

const json* find(const json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double get_number(const json& j, const char* key, const std::string& ctx,
                  std::optional<double> fallback = std::nullopt) {
    const json* f = find(j, key);
    if (!f) {
        if (fallback)
            return *fallback;
        throw ConfigError("missing required number", ctx + "." + key);
    }
    if (!f->is_number())
        throw ConfigError("must be a number", ctx + "." + key);
    return f->get<double>();
}

std::string get_string(const json& j, const char* key, const std::string& ctx,
                       std::optional<std::string> fallback = std::nullopt) {
    const json* f = find(j, key);
    if (!f) {
        if (fallback)
            return *fallback;
        throw ConfigError("missing required string", ctx + "." + key);
    }
    if (!f->is_string())
        throw ConfigError("must be a string", ctx + "." + key);
    return f->get<std::string>();
}

bool get_bool(const json& j, const char* key, const std::string& ctx, bool fallback) {
    const json* f = find(j, key);
    if (!f)
        return fallback;
    if (!f->is_boolean())
        throw ConfigError("must be a boolean", ctx + "." + key);
    return f->get<bool>();
}

Model parse_model(const std::string& name) {
    if (name == "classical") return Model::Classical;
    if (name == "relativistic") return Model::Relativistic;
    if (name == "photon") return Model::Photon;
    throw ConfigError("must be 'classical', 'relativistic' or 'photon'", "params.model");
}

std::complex<double> parse_pole(const json& jp, const std::string& ctx) {
    if (jp.is_number())
        return {jp.get<double>(), 0.0};
    if (jp.is_array() && jp.size() == 2 && jp[0].is_number() && jp[1].is_number())
        return {jp[0].get<double>(), jp[1].get<double>()};
    throw ConfigError("pole must be a number or [re, im]", ctx);
}

ControllerSpec parse_controller(const json& j, const RocketParams& params) {
    if (!j.is_object())
        throw ConfigError("must be an object", "controller");
    const std::string type = get_string(j, "type", "controller");

    if (type == "state_feedback") {
        check_keys(j, {"type", "gains", "poles"}, "controller");
        StateFeedbackSpec spec;
        const json* gains = find(j, "gains");
        const json* poles = find(j, "poles");
        if (!!gains == !!poles)
            throw ConfigError("exactly one of 'gains' or 'poles' required", "controller");
        if (gains) {
            if (!gains->is_array() || gains->size() != 2)
                throw ConfigError("must be [k1, k2]", "controller.gains");
            spec.gains = GainVector{(*gains)[0].get<double>(), (*gains)[1].get<double>()};
        } else {
            if (!poles->is_array() || poles->size() != 2)
                throw ConfigError("must be a pair of poles", "controller.poles");
            spec.poles = {parse_pole((*poles)[0], "controller.poles[0]"),
                          parse_pole((*poles)[1], "controller.poles[1]")};
        }
        return spec;
    }
    if (type == "output_feedback") {
        check_keys(j, {"type", "preset", "kp", "kd", "reference"}, "controller");
        OutputFeedbackSpec spec;
        const std::string preset = get_string(j, "preset", "controller", "proportional");
        if (preset == "proportional") {
            spec.preset = OutputFeedbackSpec::Preset::Proportional;
            if (find(j, "kd"))
                throw ConfigError("'kd' is only valid for the pd preset", "controller.kd");
        } else if (preset == "pd") {
            spec.preset = OutputFeedbackSpec::Preset::Pd;
            spec.kd = get_number(j, "kd", "controller");
        } else {
            throw ConfigError("must be 'proportional' or 'pd'", "controller.preset");
        }
        spec.kp = get_number(j, "kp", "controller");
        spec.reference = get_number(j, "reference", "controller", 0.0);
        return spec;
    }
    if (type == "pid") {
        check_keys(j, {"type", "kp", "ki", "kd", "reference", "reference_rate",
                       "integral_limit"},
                   "controller");
        PidSpec spec;
        spec.gains.kp = get_number(j, "kp", "controller", 0.0);
        spec.gains.ki = get_number(j, "ki", "controller", 0.0);
        spec.gains.kd = get_number(j, "kd", "controller", 0.0);
        spec.reference = get_number(j, "reference", "controller", 0.0);
        spec.reference_rate = get_number(j, "reference_rate", "controller", 0.0);
        if (find(j, "integral_limit")) {
            spec.integral_limit = get_number(j, "integral_limit", "controller");
            if (*spec.integral_limit <= 0.0)
                throw ConfigError("must be positive", "controller.integral_limit");
        }
        return spec;
    }
    if (type == "open_loop") {
        check_keys(j, {"type", "input", "value", "schedule"}, "controller");
        OpenLoopSpec spec;
        const std::string input = get_string(j, "input", "controller", "virtual");
        if (input == "virtual")
            spec.input = OpenLoopController::Input::Virtual;
        else if (input == "mass_rate")
            spec.input = OpenLoopController::Input::MassRate;
        else
            throw ConfigError("must be 'virtual' or 'mass_rate'", "controller.input");
        const json* value = find(j, "value");
        const json* schedule = find(j, "schedule");
        if (!!value == !!schedule)
            throw ConfigError("exactly one of 'value' or 'schedule' required", "controller");
        if (value) {
            spec.value = get_number(j, "value", "controller");
        } else {
            if (!schedule->is_array() || schedule->empty())
                throw ConfigError("must be a non-empty array of [t, value]",
                                  "controller.schedule");
            double prev_t = -std::numeric_limits<double>::infinity();
            for (const auto& entry : *schedule) {
                if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                    !entry[1].is_number())
                    throw ConfigError("entries must be [t, value]", "controller.schedule");
                const double t = entry[0].get<double>();
                if (t <= prev_t)
                    throw ConfigError("times must be strictly increasing",
                                      "controller.schedule");
                prev_t = t;
                spec.schedule.emplace_back(t, entry[1].get<double>());
            }
        }
        return spec;
    }
    if (type == "steering") {
        check_keys(j, {"type", "target", "t0", "T"}, "controller");
        SteeringSpec spec;
        const json* target = find(j, "target");
        if (!target || !target->is_object())
            throw ConfigError("missing required object", "controller.target");
        check_keys(*target, {"p", "v"}, "controller.target");
        spec.target.p = get_number(*target, "p", "controller.target", 0.0);
        spec.target.v = get_number(*target, "v", "controller.target", 0.0);
        spec.t0 = get_number(j, "t0", "controller", 0.0);
        spec.T = get_number(j, "T", "controller");
        if (spec.T <= spec.t0)
            throw ConfigError("must exceed t0", "controller.T");
        if (params.relativistic() && std::abs(spec.target.v) >= params.c())
            throw ConfigError("target with |v| >= c is not reachable", "controller.target.v");
        return spec;
    }
    throw ConfigError("unknown controller type '" + type + "'", "controller.type");
}

// piecewise-linear interpolation, held constant outside the table
double interp_schedule(const std::vector<std::pair<double, double>>& table, double t) {
    if (t <= table.front().first)
        return table.front().second;
    if (t >= table.back().first)
        return table.back().second;
    auto hi = std::upper_bound(table.begin(), table.end(), t,
                               [](double x, const auto& e) { return x < e.first; });
    auto lo = hi - 1;
    const double f = (t - lo->first) / (hi->first - lo->first);
    return lo->second + f * (hi->second - lo->second);
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object())
        throw ConfigError("configuration must be a JSON object");
    check_keys(j, {"params", "si_units", "c", "initial", "controller", "sim", "output"},
               "<root>");

    // --- params + unit regime -------------------------------------------
    const json* jp = find(j, "params");
    if (!jp || !jp->is_object())
        throw ConfigError("missing required object", "params");
    check_keys(*jp, {"model", "m0", "vbar", "m_dry"}, "params");

    const bool si = get_bool(j, "si_units", "<root>", false);
    if (find(j, "c") && si)
        throw ConfigError("'c' and 'si_units' are mutually exclusive", "c");
    const double c = find(j, "c") ? get_number(j, "c", "<root>")
                                  : (si ? kLightSpeedSi : 1.0);
    if (!(c > 0.0) || !std::isfinite(c))
        throw ConfigError("must be positive and finite", "c");

    const Model model = parse_model(get_string(*jp, "model", "params"));
    const double m0 = get_number(*jp, "m0", "params");
    const double m_dry = get_number(*jp, "m_dry", "params", 0.0);
    const double vbar = model == Model::Photon ? get_number(*jp, "vbar", "params", c)
                                               : get_number(*jp, "vbar", "params");
    if (!(m0 > 0.0))
        throw ConfigError("must be positive", "params.m0");
    if (m_dry < 0.0)
        throw ConfigError("must be non-negative", "params.m_dry");
    if (m0 <= m_dry)
        throw ConfigError("must exceed m_dry", "params.m0");
    if (!(vbar > 0.0) || vbar > c)
        throw ConfigError("must lie in (0, c]", "params.vbar");
    if (model == Model::Photon && vbar != c)
        throw ConfigError("photon model requires vbar == c", "params.vbar");
    RocketParams params(model, m0, vbar, c, m_dry);

    // --- initial state ---------------------------------------------------
    SimState initial;
    double v0 = 0.0, p0 = 0.0;
    std::optional<double> m_init;
    if (const json* ji = find(j, "initial")) {
        if (!ji->is_object())
            throw ConfigError("must be an object", "initial");
        check_keys(*ji, {"p", "v", "m"}, "initial");
        p0 = get_number(*ji, "p", "initial", 0.0);
        v0 = get_number(*ji, "v", "initial", 0.0);
        if (find(*ji, "m")) {
            m_init = get_number(*ji, "m", "initial");
            if (!(*m_init > 0.0))
                throw ConfigError("must be positive", "initial.m");
        }
    }
    if (params.relativistic() && std::abs(v0) >= c * (1.0 - kSpeedGuard))
        throw ConfigError("must satisfy |v| < c", "initial.v");
    initial.kin = {p0, v0};
    // default mass from the closed-form mass-velocity relation
    initial.m = m_init ? *m_init
                       : (params.relativistic() ? m0 * mass_ratio_from_velocity(v0, params)
                                                : classical_mass(v0, params));

    // --- controller ------------------------------------------------------
    const json* jc = find(j, "controller");
    if (!jc)
        throw ConfigError("missing required object", "controller");
    ControllerSpec controller = parse_controller(*jc, params);

    // --- sim config ------------------------------------------------------
    const json* js = find(j, "sim");
    if (!js || !js->is_object())
        throw ConfigError("missing required object", "sim");
    check_keys(*js, {"dt", "horizon", "mode", "abort_eps", "zoh_period", "tolerances"},
               "sim");
    SimConfig sim;
    sim.dt = get_number(*js, "dt", "sim", 1e-3);
    sim.horizon = get_number(*js, "horizon", "sim");
    const std::string mode = get_string(*js, "mode", "sim", "ideal");
    if (mode == "ideal")
        sim.mode = SimMode::Ideal;
    else if (mode == "physical")
        sim.mode = SimMode::Physical;
    else
        throw ConfigError("must be 'ideal' or 'physical'", "sim.mode");
    sim.abort_eps = get_number(*js, "abort_eps", "sim", 1e-12);
    sim.zoh_period = get_number(*js, "zoh_period", "sim", 0.0);
    if (const json* jt = find(*js, "tolerances")) {
        if (!jt->is_object())
            throw ConfigError("must be an object", "sim.tolerances");
        check_keys(*jt,
                   {"residual", "roundtrip", "classical_limit", "linearization",
                    "convergence_low", "convergence_high"},
                   "sim.tolerances");
        sim.tol.residual = get_number(*jt, "residual", "sim.tolerances", sim.tol.residual);
        sim.tol.roundtrip = get_number(*jt, "roundtrip", "sim.tolerances", sim.tol.roundtrip);
        sim.tol.classical_limit =
            get_number(*jt, "classical_limit", "sim.tolerances", sim.tol.classical_limit);
        sim.tol.linearization =
            get_number(*jt, "linearization", "sim.tolerances", sim.tol.linearization);
        sim.tol.convergence_low =
            get_number(*jt, "convergence_low", "sim.tolerances", sim.tol.convergence_low);
        sim.tol.convergence_high =
            get_number(*jt, "convergence_high", "sim.tolerances", sim.tol.convergence_high);
    }
    try {
        sim.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what(), "sim");
    }

    // --- output ----------------------------------------------------------
    OutputSpec output;
    if (const json* jo = find(j, "output")) {
        if (!jo->is_object())
            throw ConfigError("must be an object", "output");
        check_keys(*jo, {"path", "format"}, "output");
        output.path = get_string(*jo, "path", "output", output.path);
        output.format = trajectory_format_from_string(
            get_string(*jo, "format", "output", "csv"));
    }

    return Scenario{params, initial, std::move(controller), sim, output};
}

std::unique_ptr<Controller> build_controller(const Scenario& scenario, DesignInfo* info) {
    const RocketParams& params = scenario.params;
    return std::visit(
        [&](const auto& spec) -> std::unique_ptr<Controller> {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, StateFeedbackSpec>) {
                GainVector K = spec.gains ? *spec.gains : place_poles(params, *spec.poles);
                if (info)
                    info->gains = K;
                return std::make_unique<StateFeedbackController>(K, params);
            } else if constexpr (std::is_same_v<T, OutputFeedbackSpec>) {
                if (spec.preset == OutputFeedbackSpec::Preset::Proportional)
                    return std::make_unique<OutputFeedbackController>(
                        OutputFeedbackController::proportional(spec.kp, spec.reference,
                                                               params));
                return std::make_unique<OutputFeedbackController>(
                    OutputFeedbackController::pd(spec.kp, spec.kd, spec.reference, params));
            } else if constexpr (std::is_same_v<T, PidSpec>) {
                auto ctl = std::make_unique<PidController>(spec.gains, spec.reference,
                                                           params, spec.reference_rate);
                if (spec.integral_limit)
                    ctl->set_integral_limit(*spec.integral_limit);
                return ctl;
            } else if constexpr (std::is_same_v<T, OpenLoopSpec>) {
                std::function<double(double)> sched;
                if (spec.value) {
                    const double v = *spec.value;
                    sched = [v](double) { return v; };
                } else {
                    auto table = spec.schedule;
                    sched = [table = std::move(table)](double t) {
                        return interp_schedule(table, t);
                    };
                }
                return std::make_unique<OpenLoopController>(spec.input, std::move(sched),
                                                            params);
            } else {
                static_assert(std::is_same_v<T, SteeringSpec>);
                SteeringPlan plan = min_energy_steering(scenario.initial.kin, spec.target,
                                                        spec.t0, spec.T, params);
                if (info)
                    info->plan = plan;
                return std::make_unique<SteeringController>(plan, params);
            }
        },
        scenario.controller);
}

} // namespace relrocket
