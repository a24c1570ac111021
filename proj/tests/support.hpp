#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "tcnav/controller.hpp"
#include "tcnav/geometry.hpp"
#include "tcnav/kinematics.hpp"
#include "tcnav/planner.hpp"
#include "tcnav/sim.hpp"

namespace tcnav::testing {

// Reference world, built from literals so tests do not depend on the config parser.
inline World table1_world() {
  World w;
  w.workspace = Workspace::rectangle(Vec2::Zero(), Vec2(3.2, 1.7));
  w.obstacles = {
      {Vec2(-2.0, -0.55), 0.10}, {Vec2(-0.9, 0.85), 0.10}, {Vec2(-0.7, -0.5), 0.35},
      {Vec2(-2.1, 0.6), 0.15},   {Vec2(0.4, 0.55), 0.25},  {Vec2(0.7, -0.6), 0.10},
      {Vec2(2.0, -0.6), 0.25},   {Vec2(1.8, 0.7), 0.15},
  };
  w.robot_radius = 0.2;
  w.clearance = 0.2;
  w.margin = 0.1;
  w.influence = 0.2;
  return w;
}

inline PlannerParams table1_planner() {
  PlannerParams p;
  p.alpha = 0.03;
  p.beta = 0.005;
  p.goal = Vec2(2.5, 1.0);
  return p;
}

inline ControllerParams table1_controller() { return ControllerParams{}; }

inline RobotParams table1_robot() { return RobotParams{0.05, 0.2, 1.5}; }

inline DisturbanceModel sinusoidal_disturbance() { return DisturbanceModel::sinusoidal(SinusoidalDisturbance{}); }

inline Scenario table1_scenario() {
  Scenario s;
  s.world = table1_world();
  s.planner = table1_planner();
  s.pf = default_pf_params(s.world);
  s.controller = table1_controller();
  s.robot = table1_robot();
  s.disturbance = sinusoidal_disturbance();
  s.start = Vec2(-2.6, -1.2);
  return s;
}

// Independent oracle for d_O: plain loop over all obstacles.
inline std::pair<double, std::size_t> brute_force_distance(const World& w, const Vec2& x) {
  double best = 1e300;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < w.obstacles.size(); ++i) {
    const double dx = x.x() - w.obstacles[i].center.x();
    const double dy = x.y() - w.obstacles[i].center.y();
    const double d = std::sqrt(dx * dx + dy * dy) - w.robot_radius - w.obstacles[i].radius;
    if (d < best) {
      best = d;
      arg = i;
    }
  }
  return {best, arg};
}

inline Vec2 random_point(std::mt19937_64& rng, const Vec2& lo, const Vec2& hi) {
  std::uniform_real_distribution<double> ux(lo.x(), hi.x());
  std::uniform_real_distribution<double> uy(lo.y(), hi.y());
  const double x = ux(rng);
  const double y = uy(rng);
  return Vec2(x, y);
}

// Central-difference -grad U. The step shrinks with the smallest clearance
// so truncation stays negligible next to the steep rho_0 wall (power 20).
inline Vec2 pf_fd_gradient(const PfParams& pf, const World& w, const Vec2& goal, const Vec2& x) {
  double scale = std::min(1.0, 10.0 * pf_workspace_clearance(pf, w, x));
  for (std::size_t i = 0; i < w.obstacles.size(); ++i) {
    scale = std::min(scale, 10.0 * pf_obstacle_clearance(w, i, x));
  }
  const double h = 1e-6 * scale;
  Vec2 fd;
  for (int k = 0; k < 2; ++k) {
    Vec2 e = Vec2::Zero();
    e(k) = h;
    fd(k) = -(pf_potential(pf, w, goal, x + e) - pf_potential(pf, w, goal, x - e)) / (2.0 * h);
  }
  return fd;
}

}  // namespace tcnav::testing
