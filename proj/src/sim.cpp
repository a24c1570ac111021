#include "tcnav/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <variant>

namespace tcnav {

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kReachedGoal: return "reached_goal";
    case RunStatus::kTimedOut: return "timed_out";
    case RunStatus::kTubeViolation: return "tube_violation";
    case RunStatus::kSingularPotential: return "singular_potential";
    case RunStatus::kOutOfDomain: return "out_of_domain";
  }
  return "unknown";
}

void check_sim_config(const SimConfig& config) {
  if (!(config.dt > 0.0)) throw NavError(ErrorKind::kConfig, "sim.dt must be > 0");
  if (!(config.duration >= config.dt)) {
    throw NavError(ErrorKind::kConfig, "sim.duration must be >= sim.dt");
  }
  if (!(config.goal_tol > 0.0)) throw NavError(ErrorKind::kConfig, "sim.goal_tol must be > 0");
  if (config.input_clamp && !(*config.input_clamp > 0.0)) {
    throw NavError(ErrorKind::kConfig, "input clamp must be > 0");
  }
}

namespace {

template <class State, class Rate>
State advance(const Rate& rate, double t, const State& y, double dt, Integrator method) {
  if (method == Integrator::kEuler) return State(y + dt * rate(t, y));
  const State k1 = rate(t, y);
  const State k2 = rate(t + 0.5 * dt, State(y + 0.5 * dt * k1));
  const State k3 = rate(t + 0.5 * dt, State(y + 0.5 * dt * k2));
  const State k4 = rate(t + dt, State(y + dt * k3));
  return State(y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

std::size_t step_count(const SimConfig& config) {
  return static_cast<std::size_t>(std::llround(config.duration / config.dt));
}

Vec2 project_onto_margin(const World& world, const Vec2& x) {
  const NearestObstacle nearest = obstacle_distance(world, x);
  if (!nearest.index || nearest.distance >= world.margin) return x;
  const Obstacle& o = world.obstacles[*nearest.index];
  const Vec2 radial = x - o.center;
  const double n = radial.norm();
  if (n == 0.0) return x;
  return o.center + (world.robot_radius + o.radius + world.margin) / n * radial;
}

double clearance_or_inf(const World& world, const Vec2& x) {
  return obstacle_distance(world, x).distance;
}

TrajectoryRow reference_row(const World& world, double t, const Vec2& x_d, const Vec2& tau) {
  TrajectoryRow row;
  row.t = t;
  row.reference = x_d;
  row.pose = Pose{x_d.x(), x_d.y(), 0.0};
  row.point = x_d;
  row.clearance_ref = clearance_or_inf(world, x_d);
  row.clearance_act = row.clearance_ref;
  row.tau = tau;
  row.depth_ref = workspace_erosion_distance(world, x_d);
  return row;
}

void require_start_in_free_space(const World& world, const Vec2& start) {
  if (!in_free_space(world, start, world.margin)) {
    throw NavError(ErrorKind::kOutOfDomain,
                   "start (" + std::to_string(start.x()) + ", " + std::to_string(start.y()) +
                       ") is outside the free space X_eps");
  }
}

RunStatus status_for(const NavError& e) {
  switch (e.kind()) {
    case ErrorKind::kSingularPotential: return RunStatus::kSingularPotential;
    case ErrorKind::kTubeViolation: return RunStatus::kTubeViolation;
    default: return RunStatus::kOutOfDomain;
  }
}

template <class Field>
Trajectory integrate_flow(const World& world, const Field& flow, const Vec2& goal,
                          const Vec2& start, const SimConfig& config, bool project) {
  Trajectory traj;
  traj.goal = goal;
  traj.goal_tol = config.goal_tol;
  traj.dt = config.dt;

  const std::size_t steps = step_count(config);
  auto rate = [&](double, const Vec2& y) -> Vec2 { return flow(y); };
  Vec2 x_d = start;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    Vec2 tau;
    try {
      tau = flow(x_d);
    } catch (const NavError& e) {
      if (k == 0) throw;
      traj.status = status_for(e);
      traj.diagnostic = e.what();
      return traj;
    }
    traj.rows.push_back(reference_row(world, t, x_d, tau));
    if ((x_d - goal).norm() <= config.goal_tol) {
      traj.status = RunStatus::kReachedGoal;
      return traj;
    }
    if (k == steps) break;
    try {
      x_d = advance(rate, t, x_d, config.dt, config.integrator);
    } catch (const NavError& e) {
      traj.status = status_for(e);
      traj.diagnostic = e.what();
      return traj;
    }
    if (project) x_d = project_onto_margin(world, x_d);
  }
  traj.status = RunStatus::kTimedOut;
  return traj;
}

using LoopState = Eigen::Matrix<double, 5, 1>;

Pose pose_of(const LoopState& y) { return Pose{y(2), y(3), y(4)}; }

LoopState initial_loop_state(const RobotParams& robot, const Vec2& start, const SimConfig& config) {
  const Pose pose = config.initial_pose.value_or(pose_from_virtual_point(robot, start, 0.0));
  LoopState y;
  y << start.x(), start.y(), pose.x, pose.y, pose.theta;
  return y;
}

Vec2 clamp_input(const Vec2& u, const SimConfig& config) {
  if (!config.input_clamp) return u;
  const double n = u.norm();
  return n > *config.input_clamp ? Vec2(u * (*config.input_clamp / n)) : u;
}

}  // namespace

Trajectory integrate_reference(const World& world, const PlannerParams& planner,
                               const Vec2& start, const SimConfig& config) {
  check_sim_config(config);
  require_start_in_free_space(world, start);
  const bool project =
      config.project_to_margin || planner.mode == FieldMode::kDiscontinuous;
  return integrate_flow(
      world, [&](const Vec2& x) { return field(planner, world, x); }, planner.goal, start, config,
      project);
}

Trajectory pf_reference(const World& world, const PfParams& pf, const Vec2& goal,
                        const Vec2& start, const SimConfig& config) {
  check_sim_config(config);
  require_start_in_free_space(world, start);
  return integrate_flow(
      world, [&](const Vec2& x) { return pf_field(pf, world, goal, x); }, goal, start, config,
      config.project_to_margin);
}

Trajectory integrate_closed_loop(const World& world, const PlannerParams& planner,
                                 const ControllerParams& controller, const RobotParams& robot,
                                 const DisturbanceModel& disturbance, const Vec2& start,
                                 const SimConfig& config) {
  check_sim_config(config);
  require_start_in_free_space(world, start);

  Trajectory traj;
  traj.goal = planner.goal;
  traj.goal_tol = config.goal_tol;
  traj.dt = config.dt;
  traj.tube_radius = controller.tube_radius;

  const bool project =
      config.project_to_margin || planner.mode == FieldMode::kDiscontinuous;
  const std::size_t steps = step_count(config);
  LoopState y = initial_loop_state(robot, start, config);
  AdaptiveState adaptive{controller.initial_estimate};

  if (transformed_error(controller, virtual_point(robot, pose_of(y)) - start) >= 1.0) {
    throw NavError(ErrorKind::kTubeViolation, "initial position is outside the tube");
  }

  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    const Vec2 x_d = y.head<2>();
    const Pose pose = pose_of(y);
    const Vec2 x = virtual_point(robot, pose);
    const Vec2 x_e = x - x_d;

    TrajectoryRow row;
    row.t = t;
    row.reference = x_d;
    row.pose = pose;
    row.point = x;
    row.xe_norm = x_e.norm();
    row.xi = transformed_error(controller, x_e);
    row.dhat = adaptive.estimate;
    row.clearance_ref = clearance_or_inf(world, x_d);
    row.clearance_act = clearance_or_inf(world, x);
    row.depth_ref = workspace_erosion_distance(world, x_d);

    if (!(row.xi < 1.0)) {
      traj.rows.push_back(row);
      traj.status = RunStatus::kTubeViolation;
      traj.diagnostic = "tracking error left the tube at t = " + std::to_string(t);
      return traj;
    }

    try {
      row.tau = field(planner, world, x_d);
    } catch (const NavError& e) {
      traj.status = status_for(e);
      traj.diagnostic = e.what();
      return traj;
    }

    // Halt at the goal so the heading does not keep drifting under u_d.
    if ((x - planner.goal).norm() <= config.goal_tol) {
      traj.rows.push_back(row);
      traj.status = RunStatus::kReachedGoal;
      return traj;
    }

    const Vec2 u = clamp_input(
        control_law(controller, adaptive, robot.offset, pose.theta, x_e, row.tau), config);
    row.u = u;
    traj.rows.push_back(row);
    if (k == steps) break;

    adaptive = adaptive_update(controller, adaptive, z_vector(controller, x_e), config.dt);

    auto rate = [&](double s, const LoopState& state) -> LoopState {
      const Vec2 tau = field(planner, world, state.head<2>());
      const PoseRate pr = pose_derivative(pose_of(state), u, disturbance(s));
      LoopState dy;
      dy << tau.x(), tau.y(), pr.x, pr.y, pr.theta;
      return dy;
    };
    try {
      y = advance(rate, t, y, config.dt, config.integrator);
    } catch (const NavError& e) {
      traj.status = status_for(e);
      traj.diagnostic = e.what();
      return traj;
    }
    if (project) y.head<2>() = project_onto_margin(world, y.head<2>());
  }
  traj.status = RunStatus::kTimedOut;
  return traj;
}

Trajectory pf_closed_loop(const World& world, const PfParams& pf, const Vec2& goal,
                          const RobotParams& robot, const DisturbanceModel& disturbance,
                          const Vec2& start, double tube_radius, const SimConfig& config) {
  check_sim_config(config);
  require_start_in_free_space(world, start);

  Trajectory traj;
  traj.goal = goal;
  traj.goal_tol = config.goal_tol;
  traj.dt = config.dt;
  traj.tube_radius = tube_radius;

  const std::size_t steps = step_count(config);
  LoopState y = initial_loop_state(robot, start, config);

  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    const Vec2 x_d = y.head<2>();
    const Pose pose = pose_of(y);
    const Vec2 x = virtual_point(robot, pose);
    const Vec2 x_e = x - x_d;

    TrajectoryRow row;
    row.t = t;
    row.reference = x_d;
    row.pose = pose;
    row.point = x;
    row.xe_norm = x_e.norm();
    row.xi = tube_radius > 0.0 ? x_e.squaredNorm() / (tube_radius * tube_radius) : 0.0;
    row.clearance_ref = clearance_or_inf(world, x_d);
    row.clearance_act = clearance_or_inf(world, x);
    row.depth_ref = workspace_erosion_distance(world, x_d);

    try {
      row.tau = pf_field(pf, world, goal, x_d);
    } catch (const NavError& e) {
      if (k == 0) throw;
      traj.status = status_for(e);
      traj.diagnostic = e.what();
      return traj;
    }
    const Vec2 u = clamp_input(rotation_matrix_inverse(robot.offset, pose.theta) * row.tau, config);
    row.u = u;
    traj.rows.push_back(row);

    if ((x_d - goal).norm() <= config.goal_tol) {
      traj.status = RunStatus::kReachedGoal;
      return traj;
    }
    if (k == steps) break;

    auto rate = [&](double s, const LoopState& state) -> LoopState {
      const Vec2 tau = pf_field(pf, world, goal, state.head<2>());
      const PoseRate pr = pose_derivative(pose_of(state), u, disturbance(s));
      LoopState dy;
      dy << tau.x(), tau.y(), pr.x, pr.y, pr.theta;
      return dy;
    };
    try {
      y = advance(rate, t, y, config.dt, config.integrator);
    } catch (const NavError& e) {
      traj.status = status_for(e);
      traj.diagnostic = e.what();
      return traj;
    }
  }
  traj.status = RunStatus::kTimedOut;
  return traj;
}

Metrics compute_metrics(const Trajectory& trajectory) {
  Metrics m;
  const auto& rows = trajectory.rows;
  if (rows.empty()) return m;

  constexpr double inf = std::numeric_limits<double>::infinity();
  m.min_clearance_reference = inf;
  m.min_clearance_actual = inf;
  m.min_depth_reference = inf;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const TrajectoryRow& row = rows[k];
    if (k > 0) {
      m.path_length_reference += (row.reference - rows[k - 1].reference).norm();
      m.path_length_actual += (row.point - rows[k - 1].point).norm();
    }
    m.min_clearance_reference = std::min(m.min_clearance_reference, row.clearance_ref);
    m.min_clearance_actual = std::min(m.min_clearance_actual, row.clearance_act);
    m.min_depth_reference = std::min(m.min_depth_reference, row.depth_ref);
    m.max_tracking_error = std::max(m.max_tracking_error, row.xe_norm);
    m.max_input_norm = std::max(m.max_input_norm, row.u.norm());
    m.max_reference_speed = std::max(m.max_reference_speed, row.tau.norm());
    if (!m.settling_time && (row.point - trajectory.goal).norm() <= trajectory.goal_tol) {
      m.settling_time = row.t;
    }
    if (row.xi >= 1.0) m.tube_violated = true;
  }
  m.terminal_goal_distance = (rows.back().point - trajectory.goal).norm();
  m.tube_violated = m.tube_violated || trajectory.status == RunStatus::kTubeViolation;
  m.reached_goal = trajectory.status == RunStatus::kReachedGoal;
  return m;
}

Trajectory run_scenario(const Scenario& s, RunMode mode, const Vec2& start,
                        const SimConfig& config) {
  switch (mode) {
    case RunMode::kReference:
      return integrate_reference(s.world, s.planner, start, config);
    case RunMode::kClosedLoop:
      return integrate_closed_loop(s.world, s.planner, s.controller, s.robot, s.disturbance, start,
                                   config);
    case RunMode::kPfReference:
      return pf_reference(s.world, s.pf, s.planner.goal, start, config);
    case RunMode::kPfClosedLoop:
      return pf_closed_loop(s.world, s.pf, s.planner.goal, s.robot, s.disturbance, start,
                            s.controller.tube_radius, config);
  }
  throw NavError(ErrorKind::kContractViolation, "unknown run mode");
}

std::vector<RunResult> batch_run(const Scenario& scenario, RunMode mode,
                                 const std::vector<Vec2>& starts, const SimConfig& config,
                                 unsigned threads) {
  std::vector<RunResult> results(starts.size());
  auto run_one = [&](std::size_t i) {
    try {
      results[i].trajectory = run_scenario(scenario, mode, starts[i], config);
      results[i].metrics = compute_metrics(results[i].trajectory);
    } catch (const std::exception& e) {
      results[i].error = e.what();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, starts.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < starts.size(); i = next++) run_one(i);
      });
    }
  }
  return results;
}

std::vector<Vec2> sample_free_starts(const World& world, std::size_t count, std::uint64_t seed,
                                     double extra_clearance) {
  Vec2 lo;
  Vec2 hi;
  if (const auto* rect = std::get_if<RectangleShape>(&world.workspace.shape)) {
    lo = rect->center - rect->half_extents;
    hi = rect->center + rect->half_extents;
  } else {
    const auto& disc = std::get<DiscShape>(world.workspace.shape);
    lo = disc.center - Vec2::Constant(disc.radius);
    hi = disc.center + Vec2::Constant(disc.radius);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(lo.x(), hi.x());
  std::uniform_real_distribution<double> uy(lo.y(), hi.y());
  const double margin = world.margin + extra_clearance;

  std::vector<Vec2> starts;
  starts.reserve(count);
  constexpr std::size_t kMaxDraws = 10'000'000;
  for (std::size_t draws = 0; starts.size() < count; ++draws) {
    if (draws == kMaxDraws) {
      throw NavError(ErrorKind::kDegenerate, "free space too small for rejection sampling");
    }
    const double x = ux(rng);
    const double y = uy(rng);
    const Vec2 p(x, y);
    if (in_free_space(world, p, margin)) starts.push_back(p);
  }
  return starts;
}

Vec2 manifold_start(const PlannerParams& planner, const World& world, std::size_t i,
                    double beyond_margin) {
  const Obstacle& o = world.obstacles.at(i);
  const Vec2 away = o.center - planner.goal;
  const double n = away.norm();
  if (n == 0.0) {
    throw NavError(ErrorKind::kDegenerate, "goal coincides with an obstacle center");
  }
  const double reach = world.robot_radius + o.radius + world.margin + beyond_margin;
  return o.center + reach / n * away;
}

}  // namespace tcnav
