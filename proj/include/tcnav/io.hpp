#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tcnav/sim.hpp"

namespace tcnav {

inline constexpr std::string_view kTrajectoryCsvHeader =
    "t,xd_x,xd_y,x,y,theta,px,py,xe_norm,xi,u_v,u_w,dhat,dO_ref,dO_act";

/// One row per logged step, 17 significant digits (lossless for doubles).
std::string trajectory_to_csv(const Trajectory& trajectory);

/// Parses the CSV columns back; fields not exported (tau, depth_ref) stay zero.
std::vector<TrajectoryRow> trajectory_rows_from_csv(std::string_view text);

/// Metrics plus run status as a JSON document.
std::string metrics_to_json(const Metrics& metrics, const Trajectory& trajectory);

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

/// %.17g formatting shared by every writer.
std::string format_double(double value);

}  // namespace tcnav
