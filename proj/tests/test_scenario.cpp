#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "relrocket/errors.hpp"
#include "relrocket/scenario.hpp"

using namespace relrocket;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kMinimalPid = R"({
  "params": {"model": "relativistic", "m0": 1.0, "vbar": 1.0},
  "controller": {"type": "pid", "kp": -0.01, "kd": -0.2, "reference": 1.0},
  "sim": {"horizon": 5.0}
})";

} // namespace

TEST_CASE("minimal config fills the documented defaults") {
    const Scenario s = parse_scenario(kMinimalPid);
    CHECK(s.params.c() == 1.0); // natural units
    CHECK(s.sim.dt == 1e-3);
    CHECK(s.sim.mode == SimMode::Ideal);
    CHECK(s.sim.abort_eps == 1e-12);
    CHECK(s.initial.kin.p == 0.0);
    CHECK(s.initial.kin.v == 0.0);
    CHECK(s.initial.m == 1.0); // mass ratio at v=0
    CHECK(s.output.path == "trajectory.csv");
    CHECK(s.output.format == TrajectoryFormat::Csv);
    CHECK(std::holds_alternative<PidSpec>(s.controller));
}

TEST_CASE("si_units switches the light speed") {
    const Scenario s = parse_scenario(R"({
      "params": {"model": "relativistic", "m0": 1.0, "vbar": 100.0},
      "si_units": true,
      "controller": {"type": "open_loop", "value": 0.0},
      "sim": {"horizon": 1.0}
    })");
    CHECK(s.params.c() == 299792458.0);
}

TEST_CASE("photon model defaults vbar to c") {
    const Scenario s = parse_scenario(R"({
      "params": {"model": "photon", "m0": 2.0},
      "controller": {"type": "open_loop", "value": -0.1},
      "sim": {"horizon": 1.0}
    })");
    CHECK(s.params.model() == Model::Photon);
    CHECK(s.params.vbar() == 1.0);
    CHECK(s.params.ratio_exponent() == 0.5);
}

TEST_CASE("complex poles parse as [re, im] pairs") {
    const Scenario s = parse_scenario(R"({
      "params": {"model": "relativistic", "m0": 1.0, "vbar": 1.0},
      "controller": {"type": "state_feedback", "poles": [[-0.8, 0.6], [-0.8, -0.6]]},
      "sim": {"horizon": 1.0}
    })");
    DesignInfo info;
    (void)build_controller(s, &info);
    REQUIRE(info.gains.has_value());
    // s^2 + 1.6 s + 1.0 against b = -1: K = [-1.0, -1.6]
    CHECK(info.gains->k1 == doctest::Approx(-1.0));
    CHECK(info.gains->k2 == doctest::Approx(-1.6));
}

TEST_CASE("validation errors name the offending field") {
    // vbar above the light speed
    try {
        parse_scenario(R"({
          "params": {"model": "relativistic", "m0": 1.0, "vbar": 2.0},
          "controller": {"type": "open_loop", "value": 0.0},
          "sim": {"horizon": 1.0}
        })");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "params.vbar");
    }
    // photon model with vbar != c
    try {
        parse_scenario(R"({
          "params": {"model": "photon", "m0": 1.0, "vbar": 0.5},
          "controller": {"type": "open_loop", "value": 0.0},
          "sim": {"horizon": 1.0}
        })");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "params.vbar");
    }
    // initial velocity at the light speed
    CHECK_THROWS_AS(parse_scenario(R"({
      "params": {"model": "relativistic", "m0": 1.0, "vbar": 1.0},
      "initial": {"v": 1.0},
      "controller": {"type": "open_loop", "value": 0.0},
      "sim": {"horizon": 1.0}
    })"),
                    ConfigError);
}

TEST_CASE("unknown keys are rejected, not ignored") {
    CHECK_THROWS_AS(parse_scenario(R"({
      "params": {"model": "relativistic", "m0": 1.0, "vbar": 1.0, "thrust": 3},
      "controller": {"type": "open_loop", "value": 0.0},
      "sim": {"horizon": 1.0}
    })"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({
      "params": {"model": "relativistic", "m0": 1.0, "vbar": 1.0},
      "controller": {"type": "pid", "kp": 1.0, "kP": 2.0},
      "sim": {"horizon": 1.0}
    })"),
                    ConfigError);
}

TEST_CASE("malformed documents raise parse errors with location info") {
    try {
        parse_scenario("{\"params\": ");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("parse error") != std::string::npos);
    }
}

TEST_CASE("pole-placement scenario designs gains and regulates") {
    const Scenario s = parse_scenario(R"({
      "params": {"model": "relativistic", "m0": 1.0, "vbar": 1.0},
      "initial": {"p": 1.0},
      "controller": {"type": "state_feedback", "poles": [-1.0, -1.0]},
      "sim": {"horizon": 20.0},
      "output": {"path": "scenario_test_reg.csv"}
    })");
    const ExecuteResult r = execute(s);
    CHECK(r.report.exit_code == 0);
    REQUIRE(r.report.designed.gains.has_value());
    CHECK(r.report.designed.gains->k1 == doctest::Approx(-1.0));
    CHECK(r.report.designed.gains->k2 == doctest::Approx(-2.0));
    CHECK(std::hypot(r.report.terminal.kin.p, r.report.terminal.kin.v) <= 1e-3);
    std::remove("scenario_test_reg.csv");
}

TEST_CASE("physical-mode propellant exhaustion exits with code 2") {
    const Scenario s = parse_scenario(R"({
      "params": {"model": "relativistic", "m0": 1.0, "vbar": 1.0, "m_dry": 0.6},
      "controller": {"type": "open_loop", "input": "mass_rate", "value": -0.5},
      "sim": {"horizon": 10.0, "mode": "physical"},
      "output": {"path": "scenario_test_dep.csv"}
    })");
    const ExecuteResult r = execute(s);
    CHECK(r.report.exit_code == 2);
    bool saw_depleted = false;
    for (const auto& e : r.report.events)
        saw_depleted |= e.kind == EventKind::MassDepleted;
    CHECK(saw_depleted);
    std::remove("scenario_test_dep.csv");
}

TEST_CASE("steering scenario reaches the target within tolerance") {
    const Scenario s = parse_scenario(R"({
      "params": {"model": "relativistic", "m0": 1.0, "vbar": 1.0},
      "controller": {"type": "steering", "target": {"p": 0.5, "v": 0.0}, "T": 1.0},
      "sim": {"horizon": 1.0},
      "output": {"path": "scenario_test_steer.csv"}
    })");
    const ExecuteResult r = execute(s);
    CHECK(r.report.exit_code == 0);
    REQUIRE(r.report.designed.plan.has_value());
    CHECK(std::abs(r.report.terminal.kin.p - 0.5) <= 1e-4);
    CHECK(std::abs(r.report.terminal.kin.v) <= 1e-4);
    std::remove("scenario_test_steer.csv");
}

TEST_CASE("execute is deterministic: identical configs give identical bytes") {
    const std::string cfg = R"({
      "params": {"model": "relativistic", "m0": 1.0, "vbar": 1.0},
      "controller": {"type": "open_loop", "schedule": [[0.0, -0.2], [2.0, 0.3]]},
      "sim": {"horizon": 2.0},
      "output": {"path": "PATH"}
    })";
    auto run_to = [&](const std::string& path) {
        std::string text = cfg;
        text.replace(text.find("PATH"), 4, path);
        (void)execute(parse_scenario(text));
        return read_file(path);
    };
    const std::string a = run_to("scenario_det_a.csv");
    const std::string b = run_to("scenario_det_b.csv");
    CHECK(a == b);
    CHECK(!a.empty());
    std::remove("scenario_det_a.csv");
    std::remove("scenario_det_b.csv");
}

TEST_CASE("verify: default relativistic scenario passes every applicable check") {
    const Scenario s = parse_scenario(R"({
      "params": {"model": "relativistic", "m0": 1.0, "vbar": 1.0},
      "controller": {"type": "open_loop", "value": -0.2},
      "sim": {"horizon": 2.0}
    })");
    const RunReport rep = verify(s);
    CHECK(rep.exit_code == 0);
    CHECK_FALSE(rep.any_failed());
    int passed = 0;
    for (const auto& c : rep.checks)
        passed += c.verdict == CheckResult::Verdict::Pass;
    CHECK(passed >= 6);
}

TEST_CASE("verify: oversized dt flags the convergence-order check") {
    const Scenario s = parse_scenario(R"({
      "params": {"model": "relativistic", "m0": 1.0, "vbar": 1.0},
      "controller": {"type": "open_loop", "value": -0.45},
      "sim": {"dt": 0.5, "horizon": 2.0}
    })");
    const RunReport rep = verify(s);
    bool convergence_failed = false;
    for (const auto& c : rep.checks)
        if (c.name == "convergence_order")
            convergence_failed = c.verdict == CheckResult::Verdict::Fail;
    CHECK(convergence_failed);
    CHECK(rep.exit_code == 2);
}

TEST_CASE("verify: classical scenario skips the relativistic-only checks") {
    const Scenario s = parse_scenario(R"({
      "params": {"model": "classical", "m0": 2.0, "vbar": 1.0},
      "controller": {"type": "state_feedback", "poles": [-0.5, -0.5]},
      "initial": {"p": 1.0},
      "sim": {"horizon": 5.0}
    })");
    const RunReport rep = verify(s);
    CHECK(rep.exit_code == 0);
    int skipped_rel = 0;
    for (const auto& c : rep.checks)
        if ((c.name == "speed_limit" || c.name == "consistency_residual" ||
             c.name == "classical_limit") &&
            c.verdict == CheckResult::Verdict::Skipped)
            ++skipped_rel;
    CHECK(skipped_rel == 3);
}

TEST_CASE("reports render in text and json") {
    const Scenario s = parse_scenario(kMinimalPid);
    const ExecuteResult r = execute(s, /*write_output=*/false);
    const std::string text = r.report.to_text();
    CHECK(text.find("terminal:") != std::string::npos);
    CHECK(text.find("checks:") != std::string::npos);
    const std::string js = r.report.to_json();
    CHECK(js.find("\"exit_code\"") != std::string::npos);
}

TEST_CASE("schema text mentions every top-level key") {
    const std::string schema = config_schema();
    for (const char* key :
         {"params", "si_units", "initial", "controller", "sim", "output"})
        CHECK(schema.find(key) != std::string::npos);
}
