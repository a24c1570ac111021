#include "tcnav/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace tcnav {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kContractViolation: return "contract violation";
    case ErrorKind::kSingularBearing: return "singular bearing";
    case ErrorKind::kOutOfDomain: return "out of domain";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kTubeViolation: return "tube violation";
    case ErrorKind::kSingularPotential: return "singular potential";
    case ErrorKind::kConfig: return "config error";
  }
  return "unknown";
}

Workspace Workspace::rectangle(const Vec2& center, const Vec2& half_extents) {
  return Workspace{RectangleShape{center, half_extents}};
}

Workspace Workspace::disc(const Vec2& center, double radius) {
  return Workspace{DiscShape{center, radius}};
}

double Workspace::signed_depth(const Vec2& x) const {
  if (const auto* rect = std::get_if<RectangleShape>(&shape)) {
    const Vec2 q = (x - rect->center).cwiseAbs() - rect->half_extents;
    const double outside = q.cwiseMax(0.0).norm();
    const double inside = std::min(q.maxCoeff(), 0.0);
    return -(outside + inside);
  }
  const auto& disc = std::get<DiscShape>(shape);
  return disc.radius - (x - disc.center).norm();
}

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void check_parameter(ValidationReport& report, bool ok, const std::string& what) {
  if (!ok) {
    Violation v;
    v.kind = ViolationKind::kParameter;
    v.message = what;
    report.violations.push_back(std::move(v));
  }
}

}  // namespace

ValidationReport validate_world(const World& world) {
  ValidationReport report;
  const double r = world.robot_radius;
  const double h = world.clearance;

  if (const auto* rect = std::get_if<RectangleShape>(&world.workspace.shape)) {
    check_parameter(report, rect->half_extents.x() > 0.0 && rect->half_extents.y() > 0.0,
                    "workspace half-extents must be strictly positive");
  } else {
    check_parameter(report, std::get<DiscShape>(world.workspace.shape).radius > 0.0,
                    "workspace radius must be strictly positive");
  }
  check_parameter(report, r > 0.0, "robot radius r must be > 0");
  check_parameter(report, h > 0.0, "clearance h must be > 0");
  check_parameter(report, world.margin > 0.0, "margin eps must be > 0");
  check_parameter(report, world.margin < world.influence,
                  "margin eps must be < influence eps* (got eps=" + fmt_num(world.margin) +
                      ", eps*=" + fmt_num(world.influence) + ")");
  check_parameter(report, world.influence <= h,
                  "influence eps* must be <= clearance h (got eps*=" +
                      fmt_num(world.influence) + ", h=" + fmt_num(h) + ")");

  const auto& obs = world.obstacles;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (!(obs[i].radius > 0.0)) {
      Violation v;
      v.kind = ViolationKind::kParameter;
      v.first = i;
      v.measured = obs[i].radius;
      v.message = "obstacle " + std::to_string(i + 1) + " radius must be > 0";
      report.violations.push_back(std::move(v));
    }
  }

  const double pair_bound = 2.0 * (r + h);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    for (std::size_t j = i + 1; j < obs.size(); ++j) {
      const double sep = (obs[i].center - obs[j].center).norm() - obs[i].radius - obs[j].radius;
      if (!(sep > pair_bound)) {
        Violation v;
        v.kind = ViolationKind::kObstaclePair;
        v.first = i;
        v.second = j;
        v.measured = sep;
        v.required = pair_bound;
        v.message = "obstacles " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                    " are separated by " + fmt_num(sep) + " m, need > 2(r+h) = " +
                    fmt_num(pair_bound) + " m";
        report.violations.push_back(std::move(v));
      } else if (sep - pair_bound < kMarginalSlack) {
        report.warnings.push_back("obstacles " + std::to_string(i + 1) + " and " +
                                  std::to_string(j + 1) + " clear 2(r+h) by less than 1e-9 m");
      }
    }
  }

  const double boundary_bound = 2.0 * r + h;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double sep = world.workspace.signed_depth(obs[i].center) - obs[i].radius;
    if (!(sep > boundary_bound)) {
      Violation v;
      v.kind = ViolationKind::kObstacleBoundary;
      v.first = i;
      v.second = i;
      v.measured = sep;
      v.required = boundary_bound;
      v.message = "obstacle " + std::to_string(i + 1) + " is " + fmt_num(sep) +
                  " m from the workspace boundary, need > 2r+h = " + fmt_num(boundary_bound) +
                  " m";
      report.violations.push_back(std::move(v));
    } else if (sep - boundary_bound < kMarginalSlack) {
      report.warnings.push_back("obstacle " + std::to_string(i + 1) +
                                " clears the boundary bound by less than 1e-9 m");
    }
  }
  return report;
}

double obstacle_clearance(const World& world, std::size_t i, const Vec2& x) {
  const Obstacle& o = world.obstacles.at(i);
  return (x - o.center).norm() - (world.robot_radius + o.radius);
}

NearestObstacle obstacle_distance(const World& world, const Vec2& x) {
  NearestObstacle best{std::numeric_limits<double>::infinity(), std::nullopt};
  for (std::size_t i = 0; i < world.obstacles.size(); ++i) {
    const double beta = obstacle_clearance(world, i, x);
    // strict: ties keep the lowest index
    if (beta < best.distance) {
      best.distance = beta;
      best.index = i;
    }
  }
  return best;
}

double workspace_erosion_distance(const World& world, const Vec2& x) {
  return world.workspace.signed_depth(x) - world.robot_radius;
}

bool in_free_space(const World& world, const Vec2& x, double margin) {
  return workspace_erosion_distance(world, x) >= margin &&
         obstacle_distance(world, x).distance >= margin;
}

Vec2 bearing(const World& world, const Vec2& x) {
  const NearestObstacle nearest = obstacle_distance(world, x);
  if (!nearest.index || nearest.distance > world.influence) {
    throw NavError(ErrorKind::kContractViolation,
                   "bearing requested outside every obstacle influence region");
  }
  const Vec2 to_center = world.obstacles[*nearest.index].center - x;
  const double n = to_center.norm();
  if (n == 0.0) {
    throw NavError(ErrorKind::kSingularBearing, "bearing undefined at an obstacle center");
  }
  return to_center / n;
}

double bump(double d, double eps, double eps_star) {
  if (d <= eps) return 1.0;
  if (d >= eps_star) return 0.0;
  const double s = (eps_star - d) / (eps_star - eps);
  return std::clamp(0.5 * (1.0 - std::cos(std::numbers::pi * s)), 0.0, 1.0);
}

double bump(const World& world, double d) { return bump(d, world.margin, world.influence); }

double bump_derivative(double d, double eps, double eps_star) {
  if (d <= eps || d >= eps_star) return 0.0;
  const double width = eps_star - eps;
  const double s = (eps_star - d) / width;
  return -0.5 * std::numbers::pi / width * std::sin(std::numbers::pi * s);
}

}  // namespace tcnav
