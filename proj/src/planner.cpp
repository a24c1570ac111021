#include "tcnav/planner.hpp"

#include <cmath>
#include <string>
#include <variant>

namespace tcnav {

void check_planner_params(const PlannerParams& params, const World& world) {
  if (!(params.alpha > 0.0)) throw NavError(ErrorKind::kConfig, "planner.alpha must be > 0");
  if (!(params.beta > 0.0)) throw NavError(ErrorKind::kConfig, "planner.beta must be > 0");
  const double depth = workspace_erosion_distance(world, params.goal);
  const double clear = obstacle_distance(world, params.goal).distance;
  if (!(depth > world.margin && clear > world.margin)) {
    throw NavError(ErrorKind::kConfig,
                   "planner.goal must lie in the interior of the free space (workspace depth " +
                       std::to_string(depth) + ", obstacle clearance " + std::to_string(clear) +
                       ", margin " + std::to_string(world.margin) + ")");
  }
}

PfParams default_pf_params(const World& world) {
  PfParams pf;
  const double shrink = world.robot_radius + world.margin;
  if (const auto* rect = std::get_if<RectangleShape>(&world.workspace.shape)) {
    pf.center = rect->center;
    pf.semi_axes = rect->half_extents - Vec2::Constant(shrink);
  } else {
    const auto& disc = std::get<DiscShape>(world.workspace.shape);
    pf.center = disc.center;
    pf.semi_axes = Vec2::Constant(disc.radius - shrink);
  }
  return pf;
}

void check_pf_params(const PfParams& params) {
  if (!(params.k_a > 0.0)) throw NavError(ErrorKind::kConfig, "potential_field.k_a must be > 0");
  if (!(params.k_r >= 0.0)) throw NavError(ErrorKind::kConfig, "potential_field.k_r must be >= 0");
  if (params.exponent < 2 || params.exponent % 2 != 0) {
    throw NavError(ErrorKind::kConfig, "potential_field.exponent must be an even integer >= 2");
  }
  if (!(params.semi_axes.x() > 0.0 && params.semi_axes.y() > 0.0)) {
    throw NavError(ErrorKind::kConfig, "potential_field.semi_axes must be > 0");
  }
}

Vec2 nominal_field(const PlannerParams& params, const Vec2& x) {
  const Vec2 offset = x - params.goal;
  const double gain = params.alpha / std::sqrt(offset.squaredNorm() + params.beta * params.beta);
  return -gain * offset;
}

Mat2 projection_matrix(double phi, const Vec2& b) {
  if (std::abs(b.norm() - 1.0) > 1e-9) {
    throw NavError(ErrorKind::kContractViolation, "projection_matrix needs a unit bearing");
  }
  return Mat2::Identity() - phi * b * b.transpose();
}

Vec2 field(const PlannerParams& params, const World& world, const Vec2& x) {
  const Vec2 nominal = nominal_field(params, x);
  const NearestObstacle nearest = obstacle_distance(world, x);
  if (!nearest.index) return nominal;

  const double d = nearest.distance;
  const bool continuous = params.mode == FieldMode::kContinuous;
  // The discontinuous field only reacts on the boundary itself, so a discrete
  // step can sink into the margin by up to alpha*dt before it is corrected.
  const double slack = continuous ? kDomainSlack : 0.5 * world.margin;
  if (d < world.margin - slack) {
    throw NavError(ErrorKind::kOutOfDomain,
                   "planner evaluated inside the margin of obstacle " +
                       std::to_string(*nearest.index + 1) + " (d_O = " + std::to_string(d) + ")");
  }

  if (continuous ? d >= world.influence : d > world.margin + kBoundaryBand) return nominal;

  const Vec2 b = (world.obstacles[*nearest.index].center - x).normalized();
  if (nominal.dot(b) < 0.0) return nominal;

  const double phi = continuous ? bump(world, d) : 1.0;
  return nominal - phi * b.dot(nominal) * b;
}

Vec2 stationary_point(const PlannerParams& params, const World& world, std::size_t i) {
  const Obstacle& o = world.obstacles.at(i);
  const double dist = (params.goal - o.center).norm();
  if (dist == 0.0) {
    throw NavError(ErrorKind::kDegenerate, "goal coincides with the center of obstacle " +
                                               std::to_string(i + 1));
  }
  const double ratio = (world.robot_radius + o.radius + world.margin) / dist;
  return (1.0 + ratio) * o.center - ratio * params.goal;
}

double pf_workspace_clearance(const PfParams& pf, const World& world, const Vec2& x) {
  const Vec2 d = x - pf.center;
  if (world.workspace.is_rectangle()) {
    return 1.0 - std::pow(d.x() / pf.semi_axes.x(), pf.exponent) -
           std::pow(d.y() / pf.semi_axes.y(), pf.exponent);
  }
  return 1.0 - std::pow(d.norm() / pf.semi_axes.x(), pf.exponent);
}

double pf_obstacle_clearance(const World& world, std::size_t i, const Vec2& x) {
  const Obstacle& o = world.obstacles.at(i);
  const double reach = world.robot_radius + o.radius + world.margin;
  return (x - o.center).squaredNorm() - reach * reach;
}

namespace {

Vec2 pf_workspace_clearance_gradient(const PfParams& pf, const World& world, const Vec2& x) {
  const Vec2 d = x - pf.center;
  const int p = pf.exponent;
  if (world.workspace.is_rectangle()) {
    const double ax = pf.semi_axes.x();
    const double ay = pf.semi_axes.y();
    return Vec2(-p / ax * std::pow(d.x() / ax, p - 1), -p / ay * std::pow(d.y() / ay, p - 1));
  }
  const double a = pf.semi_axes.x();
  return -p * std::pow(d.norm(), p - 2) / std::pow(a, p) * d;
}

}  // namespace

double pf_potential(const PfParams& pf, const World& world, const Vec2& goal, const Vec2& x) {
  const double dist2 = (x - goal).squaredNorm();
  double inverse_sum = 1.0 / pf_workspace_clearance(pf, world, x);
  for (std::size_t i = 0; i < world.obstacles.size(); ++i) {
    inverse_sum += 1.0 / pf_obstacle_clearance(world, i, x);
  }
  return 0.5 * pf.k_a * dist2 + 0.5 * pf.k_r * inverse_sum * dist2;
}

Vec2 pf_field(const PfParams& pf, const World& world, const Vec2& goal, const Vec2& x) {
  const Vec2 offset = x - goal;
  const double dist2 = offset.squaredNorm();

  const double rho0 = pf_workspace_clearance(pf, world, x);
  if (!(rho0 > 0.0)) {
    throw NavError(ErrorKind::kSingularPotential,
                   "potential field singular: workspace clearance rho_0 = " + std::to_string(rho0));
  }
  double inverse_sum = 1.0 / rho0;
  Vec2 inverse_sum_grad = -pf_workspace_clearance_gradient(pf, world, x) / (rho0 * rho0);

  for (std::size_t i = 0; i < world.obstacles.size(); ++i) {
    const double rho = pf_obstacle_clearance(world, i, x);
    if (!(rho > 0.0)) {
      throw NavError(ErrorKind::kSingularPotential,
                     "potential field singular: rho_" + std::to_string(i + 1) + " = " +
                         std::to_string(rho));
    }
    inverse_sum += 1.0 / rho;
    inverse_sum_grad -= 2.0 * (x - world.obstacles[i].center) / (rho * rho);
  }

  const Vec2 grad_att = pf.k_a * offset;
  const Vec2 grad_rep = 0.5 * pf.k_r * (inverse_sum_grad * dist2 + 2.0 * inverse_sum * offset);
  return -(grad_att + grad_rep);
}

}  // namespace tcnav
