#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "relrocket/control.hpp"
#include "relrocket/controllers.hpp"
#include "relrocket/simulate.hpp"
#include "relrocket/trajectory_io.hpp"

namespace relrocket {

// Declarative scenario: JSON in, designed gains + trajectory + report out.
// Unknown keys are rejected, defaults are c = 1 (natural units), mode = ideal,
// dt = 1e-3. See config_schema() for the full document layout.

struct StateFeedbackSpec {
    std::optional<GainVector> gains;
    std::optional<std::array<std::complex<double>, 2>> poles; // designed via place_poles
};

struct OutputFeedbackSpec {
    enum class Preset { Proportional, Pd };
    Preset preset = Preset::Proportional;
    double kp = 0.0;
    double kd = 0.0;
    double reference = 0.0;
};

struct PidSpec {
    PIDGains gains;
    double reference = 0.0;
    double reference_rate = 0.0;
    std::optional<double> integral_limit;
};

struct OpenLoopSpec {
    OpenLoopController::Input input = OpenLoopController::Input::Virtual;
    std::optional<double> value;                          // constant schedule
    std::vector<std::pair<double, double>> schedule;      // piecewise-linear (t, value)
};

struct SteeringSpec {
    KinematicState target;
    double t0 = 0.0;
    double T = 0.0;
};

using ControllerSpec =
    std::variant<StateFeedbackSpec, OutputFeedbackSpec, PidSpec, OpenLoopSpec, SteeringSpec>;

struct OutputSpec {
    std::string path = "trajectory.csv";
    TrajectoryFormat format = TrajectoryFormat::Csv;
};

struct Scenario {
    RocketParams params;
    SimState initial;
    ControllerSpec controller;
    SimConfig sim;
    OutputSpec output;
};

// Gains / plan produced by the design step, echoed into reports.
struct DesignInfo {
    std::optional<GainVector> gains;
    std::optional<SteeringPlan> plan;
};

struct CheckResult {
    enum class Verdict { Pass, Fail, Skipped };
    std::string name;
    Verdict verdict = Verdict::Skipped;
    std::string measured;  // what was observed
    std::string tolerance; // what was required
    std::string note;
};

struct RunReport {
    SimState terminal;
    std::vector<TrajectoryEvent> events;
    std::vector<CheckResult> checks;
    DesignInfo designed;
    int exit_code = 0;

    bool any_failed() const;
    std::string to_text() const;
    std::string to_json() const;
};

// Parses and validates a configuration document. Throws ParseError (malformed
// JSON, with location) or ConfigError (invariant violation, names the field).
Scenario parse_scenario(const std::string& text);

// Instantiates the scenario's controller, running the design operations
// (place_poles, min_energy_steering) when the variant needs them.
std::unique_ptr<Controller> build_controller(const Scenario& scenario,
                                             DesignInfo* info = nullptr);

struct ExecuteResult {
    RunReport report;
    Trajectory trajectory;
};

// Designs, simulates, writes the trajectory artifact, and reports.
// exit_code: 0 on success, 2 when the run ended on a terminal event.
// Pass write_output = false to skip the file artifact.
ExecuteResult execute(const Scenario& scenario, bool write_output = true);

// Runs the invariant suite: speed limit, consistency residual, compensator
// round trip, classical-limit agreement, linearization exactness, convergence
// order, mass monotonicity, proper-time lag. Checks that do not apply to the
// scenario (e.g. relativistic-only checks on a classical model) are reported
// as skipped. exit_code: 0 all pass, 2 any failure.
RunReport verify(const Scenario& scenario);

// Human-readable description of the configuration document.
std::string config_schema();

} // namespace relrocket
