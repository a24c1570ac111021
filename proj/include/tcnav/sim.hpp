#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcnav/controller.hpp"
#include "tcnav/geometry.hpp"
#include "tcnav/kinematics.hpp"
#include "tcnav/planner.hpp"

namespace tcnav {

enum class Integrator { kEuler, kRk4 };

struct SimConfig {
  double dt = 0.01;
  double duration = 500.0;
  double goal_tol = 0.01;
  Integrator integrator = Integrator::kRk4;
  std::optional<double> input_clamp;   ///< saturate |u| to this value when set
  std::optional<Pose> initial_pose;    ///< default: virtual point on x_d(0), heading 0
  std::uint64_t seed = 1;
  bool project_to_margin = false;      ///< post-step radial correction onto the obstacle margin

  bool operator==(const SimConfig&) const = default;
};

void check_sim_config(const SimConfig& config);

/// One logged sample. Reference-only runs mirror the reference into the
/// actual-state columns (pose at x_d with heading 0, zero error and input).
struct TrajectoryRow {
  double t = 0.0;
  Vec2 reference = Vec2::Zero();
  Pose pose;
  Vec2 point = Vec2::Zero();  ///< virtual control point
  double xe_norm = 0.0;
  double xi = 0.0;
  Vec2 u = Vec2::Zero();
  double dhat = 0.0;
  double clearance_ref = 0.0;  ///< d_O(x_d)
  double clearance_act = 0.0;  ///< d_O(x)
  // Not exported to CSV.
  Vec2 tau = Vec2::Zero();     ///< reference velocity tau_d
  double depth_ref = 0.0;      ///< workspace erosion depth of x_d
};

enum class RunStatus {
  kReachedGoal,
  kTimedOut,
  kTubeViolation,
  kSingularPotential,
  kOutOfDomain,
};

const char* to_string(RunStatus status);

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  Vec2 goal = Vec2::Zero();
  double goal_tol = 0.01;
  double dt = 0.01;
  double tube_radius = 0.0;  ///< 0 when no tube applies
  RunStatus status = RunStatus::kTimedOut;
  std::string diagnostic;
};

struct Metrics {
  double path_length_reference = 0.0;
  double path_length_actual = 0.0;
  double min_clearance_reference = 0.0;
  double min_clearance_actual = 0.0;
  double min_depth_reference = 0.0;
  double max_tracking_error = 0.0;
  double max_input_norm = 0.0;
  double max_reference_speed = 0.0;
  std::optional<double> settling_time;
  double terminal_goal_distance = 0.0;
  bool tube_violated = false;
  bool reached_goal = false;
};

/// Pure planner flow dx_d/dt = tau(x_d). Throws kOutOfDomain when x_d0 is
/// not in X_eps.
Trajectory integrate_reference(const World& world, const PlannerParams& planner,
                               const Vec2& start, const SimConfig& config);

/// Planner, adaptive tube controller and disturbed unicycle co-integrated at
/// step dt. A tube violation ends the run with status kTubeViolation.
Trajectory integrate_closed_loop(const World& world, const PlannerParams& planner,
                                 const ControllerParams& controller, const RobotParams& robot,
                                 const DisturbanceModel& disturbance, const Vec2& start,
                                 const SimConfig& config);

/// Undisturbed potential-field reference flow.
Trajectory pf_reference(const World& world, const PfParams& pf, const Vec2& goal,
                        const Vec2& start, const SimConfig& config);

/// Potential-field plan executed open loop on the disturbed robot:
/// u = R^{-1}(theta) tau_pf(x_d). x_e is the deviation from the undisturbed
/// path; `tube_radius` only feeds the xi diagnostic.
Trajectory pf_closed_loop(const World& world, const PfParams& pf, const Vec2& goal,
                          const RobotParams& robot, const DisturbanceModel& disturbance,
                          const Vec2& start, double tube_radius, const SimConfig& config);

Metrics compute_metrics(const Trajectory& trajectory);

enum class RunMode { kReference, kClosedLoop, kPfReference, kPfClosedLoop };

struct Scenario {
  World world;
  PlannerParams planner;
  PfParams pf;
  ControllerParams controller;
  RobotParams robot;
  DisturbanceModel disturbance;
  Vec2 start = Vec2::Zero();

  bool operator==(const Scenario&) const = default;
};

Trajectory run_scenario(const Scenario& scenario, RunMode mode, const Vec2& start,
                        const SimConfig& config);

struct RunResult {
  Trajectory trajectory;
  Metrics metrics;
  std::string error;  ///< non-empty when the run threw before producing a trajectory

  bool ok() const { return error.empty(); }
};

/// Independent runs, one per start. Results are ordered by input index and
/// do not depend on `threads`; a failing run is recorded, never rethrown.
std::vector<RunResult> batch_run(const Scenario& scenario, RunMode mode,
                                 const std::vector<Vec2>& starts, const SimConfig& config,
                                 unsigned threads = 1);

/// Uniform rejection sampling over X_{eps + extra_clearance}.
std::vector<Vec2> sample_free_starts(const World& world, std::size_t count, std::uint64_t seed,
                                     double extra_clearance = 0.0);

/// Point on the stable manifold of the stationary point behind obstacle i:
/// on the ray from the goal through c_i, `beyond_margin` outside the margin.
Vec2 manifold_start(const PlannerParams& planner, const World& world, std::size_t i,
                    double beyond_margin);

}  // namespace tcnav
