#pragma once

#include <iosfwd>
#include <string>

#include "relrocket/simulate.hpp"

namespace relrocket {

enum class TrajectoryFormat { Csv, Json };

TrajectoryFormat trajectory_format_from_string(const std::string& name);

// All numbers are written with 17 significant digits (%.17g), so a serialized
// trajectory re-reads bit-exactly and identical runs serialize byte-identically.
//
// CSV columns: t,tau,p,v,m,u,w,gain,residual. Events follow the samples as
// comment lines "# event,<t>,<kind>".
// JSON mirrors Trajectory: {"samples": [{...}], "events": [{...}]}.

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_json(std::ostream& out, const Trajectory& traj);
void write_trajectory_file(const std::string& path, const Trajectory& traj,
                           TrajectoryFormat format);

Trajectory read_trajectory_csv(std::istream& in);
Trajectory read_trajectory_json(std::istream& in);
Trajectory read_trajectory_file(const std::string& path);

// %.17g rendering shared by the writers and the reports.
std::string format_double(double x);

} // namespace relrocket
