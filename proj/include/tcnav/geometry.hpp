#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tcnav/types.hpp"

namespace tcnav {

struct Obstacle {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;  ///< physical radius r_i [m]

  bool operator==(const Obstacle&) const = default;
};

struct RectangleShape {
  Vec2 center = Vec2::Zero();
  Vec2 half_extents = Vec2::Zero();

  bool operator==(const RectangleShape&) const = default;
};

struct DiscShape {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;

  bool operator==(const DiscShape&) const = default;
};

/// Compact convex workspace W*. Only axis-aligned rectangles and discs are
/// supported; both admit an exact signed distance to the complement.
struct Workspace {
  std::variant<RectangleShape, DiscShape> shape;

  static Workspace rectangle(const Vec2& center, const Vec2& half_extents);
  static Workspace disc(const Vec2& center, double radius);

  bool is_rectangle() const { return std::holds_alternative<RectangleShape>(shape); }

  /// Signed distance from x to the complement of W*: positive inside,
  /// negative outside, zero on the boundary.
  double signed_depth(const Vec2& x) const;

  bool operator==(const Workspace&) const = default;
};

struct World {
  Workspace workspace = Workspace::rectangle(Vec2::Zero(), Vec2(1.0, 1.0));
  std::vector<Obstacle> obstacles;
  double robot_radius = 0.0;  ///< r, radius of the circle enclosing the robot
  double clearance = 0.0;     ///< h
  double margin = 0.0;        ///< epsilon
  double influence = 0.0;     ///< epsilon*

  bool operator==(const World&) const = default;
};

enum class ViolationKind {
  kParameter,          // a scalar field is out of range
  kObstaclePair,       // pairwise surface separation <= 2(r+h)
  kObstacleBoundary,   // obstacle-to-boundary separation <= 2r+h
};

struct Violation {
  ViolationKind kind = ViolationKind::kParameter;
  std::size_t first = 0;   // obstacle index (0-based)
  std::size_t second = 0;  // second obstacle for pair violations
  double measured = 0.0;
  double required = 0.0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;  // marginal clearances (< 1e-9 m slack)

  bool ok() const { return violations.empty(); }
};

inline constexpr double kMarginalSlack = 1e-9;

ValidationReport validate_world(const World& world);

struct NearestObstacle {
  double distance = 0.0;              ///< d_O(x); +inf when there are no obstacles
  std::optional<std::size_t> index;   ///< arg-min, lowest index on ties
};

/// beta_i(x) = |x - c_i| - (r + r_i) for one obstacle.
double obstacle_clearance(const World& world, std::size_t i, const Vec2& x);

NearestObstacle obstacle_distance(const World& world, const Vec2& x);

/// Signed depth of x inside the workspace eroded by the robot radius:
/// d_{complement W*}(x) - r. The result is >= margin iff x lies in W^margin.
double workspace_erosion_distance(const World& world, const Vec2& x);

bool in_free_space(const World& world, const Vec2& x, double margin);

/// Unit vector from x toward the center of the nearest obstacle. Throws
/// kContractViolation outside every influence region and kSingularBearing
/// at an obstacle center.
Vec2 bearing(const World& world, const Vec2& x);

/// C1 blend: 1 for d <= eps, 0 for d >= eps_star, raised cosine in between.
double bump(double d, double eps, double eps_star);
double bump(const World& world, double d);

/// Derivative of `bump` with respect to d.
double bump_derivative(double d, double eps, double eps_star);

}  // namespace tcnav
