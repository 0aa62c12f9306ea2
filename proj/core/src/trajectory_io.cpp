#include "relrocket/trajectory_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "relrocket/errors.hpp"

namespace relrocket {

namespace {

EventKind event_kind_from_string(const std::string& s) {
    if (s == "speed_limit_abort") return EventKind::SpeedLimitAbort;
    if (s == "mass_depleted") return EventKind::MassDepleted;
    if (s == "input_clamped") return EventKind::InputClamped;
    throw ParseError("unknown event kind '" + s + "'");
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ParseError("not a number: '" + s + "'");
    return x;
}

} // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

TrajectoryFormat trajectory_format_from_string(const std::string& name) {
    if (name == "csv") return TrajectoryFormat::Csv;
    if (name == "json") return TrajectoryFormat::Json;
    throw ConfigError("must be 'csv' or 'json'", "format");
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,tau,p,v,m,u,w,gain,residual\n";
    for (const auto& s : traj.samples) {
        out << format_double(s.state.clock.t) << ',' << format_double(s.state.clock.tau)
            << ',' << format_double(s.state.kin.p) << ',' << format_double(s.state.kin.v)
            << ',' << format_double(s.state.m) << ',' << format_double(s.u) << ','
            << format_double(s.w) << ',' << format_double(s.gain) << ','
            << format_double(s.residual) << '\n';
    }
    for (const auto& e : traj.events)
        out << "# event," << format_double(e.t) << ',' << to_string(e.kind) << '\n';
}

void write_trajectory_json(std::ostream& out, const Trajectory& traj) {
    // hand-rolled: nlohmann would re-round the doubles, we need %.17g verbatim
    out << "{\n  \"samples\": [";
    for (size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        out << (i ? ",\n    " : "\n    ") << "{\"t\": " << format_double(s.state.clock.t)
            << ", \"tau\": " << format_double(s.state.clock.tau)
            << ", \"p\": " << format_double(s.state.kin.p)
            << ", \"v\": " << format_double(s.state.kin.v)
            << ", \"m\": " << format_double(s.state.m) << ", \"u\": " << format_double(s.u)
            << ", \"w\": " << format_double(s.w) << ", \"gain\": " << format_double(s.gain)
            << ", \"residual\": " << format_double(s.residual) << "}";
    }
    out << "\n  ],\n  \"events\": [";
    for (size_t i = 0; i < traj.events.size(); ++i) {
        const auto& e = traj.events[i];
        out << (i ? ",\n    " : "\n    ") << "{\"t\": " << format_double(e.t)
            << ", \"kind\": \"" << to_string(e.kind) << "\"}";
    }
    out << "\n  ]\n}\n";
}

void write_trajectory_file(const std::string& path, const Trajectory& traj,
                           TrajectoryFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    if (format == TrajectoryFormat::Csv)
        write_trajectory_csv(out, traj);
    else
        write_trajectory_json(out, traj);
    out.flush();
    if (!out)
        throw IoError("write failed: " + path);
}

Trajectory read_trajectory_csv(std::istream& in) {
    Trajectory traj;
    std::string line;
    if (!std::getline(in, line) || line != "t,tau,p,v,m,u,w,gain,residual")
        throw ParseError("missing or unexpected CSV header");
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::stringstream row(line);
        std::string cell;
        if (line.rfind("# event,", 0) == 0) {
            row.ignore(8);
            std::getline(row, cell, ',');
            const double t = parse_double(cell);
            std::getline(row, cell);
            traj.events.push_back({t, event_kind_from_string(cell)});
            continue;
        }
        double f[9];
        for (double& v : f) {
            if (!std::getline(row, cell, ','))
                throw ParseError("short CSV row: '" + line + "'");
            v = parse_double(cell);
        }
        TrajectorySample s;
        s.state.clock = {f[0], f[1]};
        s.state.kin = {f[2], f[3]};
        s.state.m = f[4];
        s.u = f[5];
        s.w = f[6];
        s.gain = f[7];
        s.residual = f[8];
        traj.samples.push_back(s);
    }
    return traj;
}

Trajectory read_trajectory_json(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    Trajectory traj;
    for (const auto& js : j.at("samples")) {
        TrajectorySample s;
        s.state.clock = {js.at("t").get<double>(), js.at("tau").get<double>()};
        s.state.kin = {js.at("p").get<double>(), js.at("v").get<double>()};
        s.state.m = js.at("m").get<double>();
        s.u = js.at("u").get<double>();
        s.w = js.at("w").get<double>();
        s.gain = js.at("gain").get<double>();
        s.residual = js.at("residual").get<double>();
        traj.samples.push_back(s);
    }
    for (const auto& je : j.at("events"))
        traj.events.push_back(
            {je.at("t").get<double>(), event_kind_from_string(je.at("kind").get<std::string>())});
    return traj;
}

Trajectory read_trajectory_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path);
    // sniff: JSON starts with '{'
    const int first = in.peek();
    if (first == '{')
        return read_trajectory_json(in);
    return read_trajectory_csv(in);
}

} // namespace relrocket
