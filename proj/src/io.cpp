#include "tcnav/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tcnav {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string trajectory_to_csv(const Trajectory& trajectory) {
  std::string out(kTrajectoryCsvHeader);
  out += '\n';
  for (const TrajectoryRow& r : trajectory.rows) {
    const double fields[] = {r.t,         r.reference.x(), r.reference.y(), r.pose.x,
                             r.pose.y,    r.pose.theta,    r.point.x(),     r.point.y(),
                             r.xe_norm,   r.xi,            r.u.x(),         r.u.y(),
                             r.dhat,      r.clearance_ref, r.clearance_act};
    bool first = true;
    for (const double f : fields) {
      if (!first) out += ',';
      out += format_double(f);
      first = false;
    }
    out += '\n';
  }
  return out;
}

std::vector<TrajectoryRow> trajectory_rows_from_csv(std::string_view text) {
  std::vector<TrajectoryRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryCsvHeader) {
    throw NavError(ErrorKind::kConfig, "trajectory CSV header mismatch");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double f[15];
    const char* p = line.c_str();
    for (int i = 0; i < 15; ++i) {
      char* end = nullptr;
      f[i] = std::strtod(p, &end);
      const char expected = i == 14 ? '\0' : ',';
      if (end == p || *end != expected) {
        throw NavError(ErrorKind::kConfig,
                       "trajectory CSV line " + std::to_string(line_no) + ": bad field " +
                           std::to_string(i + 1));
      }
      p = end + 1;
    }
    TrajectoryRow r;
    r.t = f[0];
    r.reference = Vec2(f[1], f[2]);
    r.pose = Pose{f[3], f[4], f[5]};
    r.point = Vec2(f[6], f[7]);
    r.xe_norm = f[8];
    r.xi = f[9];
    r.u = Vec2(f[10], f[11]);
    r.dhat = f[12];
    r.clearance_ref = f[13];
    r.clearance_act = f[14];
    rows.push_back(r);
  }
  return rows;
}

std::string metrics_to_json(const Metrics& m, const Trajectory& trajectory) {
  nlohmann::ordered_json j;
  j["status"] = to_string(trajectory.status);
  if (!trajectory.diagnostic.empty()) j["diagnostic"] = trajectory.diagnostic;
  j["steps"] = trajectory.rows.size();
  j["path_length_reference"] = m.path_length_reference;
  j["path_length_actual"] = m.path_length_actual;
  j["min_clearance_reference"] = m.min_clearance_reference;
  j["min_clearance_actual"] = m.min_clearance_actual;
  j["min_depth_reference"] = m.min_depth_reference;
  j["max_tracking_error"] = m.max_tracking_error;
  j["max_input_norm"] = m.max_input_norm;
  j["max_reference_speed"] = m.max_reference_speed;
  if (m.settling_time) {
    j["settling_time"] = *m.settling_time;
  } else {
    j["settling_time"] = nullptr;
  }
  j["terminal_goal_distance"] = m.terminal_goal_distance;
  j["tube_violated"] = m.tube_violated;
  j["reached_goal"] = m.reached_goal;
  return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NavError(ErrorKind::kConfig, "cannot write '" + path.string() + "'");
  out << text;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NavError(ErrorKind::kConfig, "cannot read '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace tcnav
