#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcnav/sim.hpp"

namespace tcnav {

enum class PlannerKind { kTangentCone, kTangentConeDiscontinuous, kPotentialField };

/// "tc", "tc-disc", "pf".
const char* to_string(PlannerKind kind);
std::optional<PlannerKind> planner_from_string(std::string_view name);

struct ComparisonEntry {
  std::size_t start_index = 0;
  RunStatus status = RunStatus::kTimedOut;
  std::string error;  ///< set when the run could not start
  Metrics metrics;
  double path_length = 0.0;  ///< of x_d for reference runs, of x for closed-loop runs
  std::vector<double> speed_t;
  std::vector<double> speed;  ///< |tau_d|, decimated
  std::vector<Vec2> path;     ///< decimated
};

struct PlannerAggregate {
  PlannerKind planner = PlannerKind::kTangentCone;
  std::size_t runs = 0;
  std::size_t reached = 0;
  double mean_path_length = 0.0;  ///< over runs that reached the goal; NaN when none did
  double success_rate = 0.0;
  double max_speed = 0.0;
  double max_input_norm = 0.0;
};

/// entries[p][s] is planner p on start s for every p.
struct ComparisonReport {
  std::vector<PlannerKind> planners;
  std::vector<Vec2> starts;
  bool closed_loop = false;
  std::vector<std::vector<ComparisonEntry>> entries;
  std::vector<PlannerAggregate> aggregates;
};

struct CompareOptions {
  bool closed_loop = false;
  unsigned threads = 1;
  std::size_t decimation = 10;  ///< keep every n-th sample of speed and path
};

/// Feeds the same starts to every planner. Throws kConfig on fewer than two
/// planners or duplicates. Failing runs are recorded per row.
ComparisonReport compare(const Scenario& scenario, const std::vector<PlannerKind>& planners,
                         const std::vector<Vec2>& starts, const SimConfig& config,
                         const CompareOptions& options = {});

/// planner,start,start_x,start_y,status,reached_goal,path_length,min_clearance,
/// max_speed,max_input_norm,max_tracking_error,settling_time
std::string comparison_csv(const ComparisonReport& report);

/// planner,mean_path_length,success_rate,max_speed,max_input_norm
std::string aggregate_csv(const ComparisonReport& report);

/// Long format: planner,start,t,speed.
std::string speed_csv(const ComparisonReport& report);

std::string comparison_paths_svg(const World& world, const Vec2& goal,
                                 const ComparisonReport& report);
std::string comparison_speed_svg(const ComparisonReport& report, double alpha);

}  // namespace tcnav
