// relrocket -- scenario runner for the rocket dynamics / control library.
//
// Subcommands:
//   simulate  run the scenario, write the trajectory artifact, print a report
//   design    run the design step only (pole placement / steering plan)
//   verify    run the invariant suite against the scenario
//   schema    print the configuration schema
//
// Exit codes: 0 success, 2 terminal event (simulate) or failed check (verify),
// 1 configuration / runtime error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "relrocket/errors.hpp"
#include "relrocket/scenario.hpp"
#include "relrocket/trajectory_io.hpp"

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw relrocket::IoError("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    long long seed = 0; // reserved: no randomness yet
    bool quiet = false;
    bool json_report = false;
};

relrocket::Scenario load_scenario(const CliOptions& opt) {
    relrocket::Scenario scenario = relrocket::parse_scenario(slurp(opt.config_path));
    if (!opt.out_path.empty())
        scenario.output.path = opt.out_path;
    if (!opt.format.empty())
        scenario.output.format = relrocket::trajectory_format_from_string(opt.format);
    return scenario;
}

void print_report(const relrocket::RunReport& report, const CliOptions& opt) {
    if (opt.quiet)
        return;
    std::cout << (opt.json_report ? report.to_json() : report.to_text());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"relrocket: rocket dynamics, feedback linearization and control"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "scenario JSON path ('-' for stdin)");
    app.add_option("--out", opt.out_path, "trajectory output path (overrides config)");
    app.add_option("--format", opt.format, "csv|json: trajectory format; 'json' also switches the report");
    app.add_option("--seed", opt.seed, "reserved, accepted for forward compatibility");
    app.add_flag("--quiet", opt.quiet, "suppress the report on stdout");

    auto* simulate = app.add_subcommand("simulate", "run the scenario and write the trajectory");
    auto* design = app.add_subcommand("design", "emit designed gains / steering plan only");
    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    auto* schema = app.add_subcommand("schema", "print the configuration schema");
    for (CLI::App* sub : {simulate, design, verify_cmd, schema})
        sub->fallthrough(); // global options may follow the subcommand name

    CLI11_PARSE(app, argc, argv);
    opt.json_report = opt.format == "json";

    try {
        if (schema->parsed()) {
            std::cout << relrocket::config_schema();
            return 0;
        }
        if (opt.config_path.empty())
            throw relrocket::ConfigError("--config is required");

        if (simulate->parsed()) {
            const relrocket::Scenario scenario = load_scenario(opt);
            const relrocket::ExecuteResult result = relrocket::execute(scenario);
            print_report(result.report, opt);
            if (!opt.quiet)
                std::cout << "trajectory: " << scenario.output.path << "\n";
            return result.report.exit_code;
        }
        if (design->parsed()) {
            const relrocket::Scenario scenario = load_scenario(opt);
            relrocket::DesignInfo info;
            (void)relrocket::build_controller(scenario, &info);
            if (!opt.quiet) {
                using relrocket::format_double;
                if (opt.json_report) {
                    std::cout << "{";
                    if (info.gains)
                        std::cout << "\"gains\": [" << format_double(info.gains->k1) << ", "
                                  << format_double(info.gains->k2) << "]";
                    if (info.plan)
                        std::cout << (info.gains ? ", " : "") << "\"steering_plan\": {\"t0\": "
                                  << format_double(info.plan->t0) << ", \"T\": "
                                  << format_double(info.plan->T) << ", \"c0\": "
                                  << format_double(info.plan->c0) << ", \"c1\": "
                                  << format_double(info.plan->c1) << "}";
                    std::cout << "}\n";
                } else if (info.gains) {
                    std::cout << "designed gains: K = [" << format_double(info.gains->k1)
                              << ", " << format_double(info.gains->k2) << "]\n";
                } else if (info.plan) {
                    std::cout << "steering plan: w(s) = " << format_double(info.plan->c0)
                              << " + " << format_double(info.plan->c1) << "*s on ["
                              << format_double(info.plan->t0) << ", "
                              << format_double(info.plan->T) << "]\n";
                } else {
                    std::cout << "nothing to design for this controller type\n";
                }
            }
            return 0;
        }
        if (verify_cmd->parsed()) {
            const relrocket::Scenario scenario = load_scenario(opt);
            const relrocket::RunReport report = relrocket::verify(scenario);
            print_report(report, opt);
            return report.exit_code;
        }
    } catch (const relrocket::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
