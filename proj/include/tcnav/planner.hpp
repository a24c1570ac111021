#pragma once

#include <cstddef>

#include "tcnav/geometry.hpp"
#include "tcnav/types.hpp"

namespace tcnav {

enum class FieldMode {
  kContinuous,     // bump-blended projection inside the influence region
  kDiscontinuous,  // projection only on the margin boundary itself
};

struct PlannerParams {
  double alpha = 0.03;  ///< saturation level [m/s]
  double beta = 0.005;  ///< softening length [m]
  Vec2 goal = Vec2::Zero();
  FieldMode mode = FieldMode::kContinuous;

  bool operator==(const PlannerParams&) const = default;
};

/// Throws kConfig unless alpha, beta > 0 and the goal lies in the interior
/// of the free space X_eps of `world`.
void check_planner_params(const PlannerParams& params, const World& world);

/// Potential-field baseline: attractive quadratic plus repulsion scaled by
/// the sum of inverse clearances (workspace term rho_0 and one term per obstacle).
struct PfParams {
  double k_a = 0.05;
  double k_r = 0.0001;
  int exponent = 20;             ///< even power in rho_0
  Vec2 semi_axes = Vec2::Zero(); ///< rho_0 denominators (x for a disc workspace)
  Vec2 center = Vec2::Zero();

  bool operator==(const PfParams&) const = default;
};

/// Defaults rho_0 to the workspace eroded by r + eps.
PfParams default_pf_params(const World& world);

void check_pf_params(const PfParams& params);

Vec2 nominal_field(const PlannerParams& params, const Vec2& x);

/// I - phi b b^T. Throws kContractViolation when b is not unit length.
Mat2 projection_matrix(double phi, const Vec2& b);

/// Accepted penetration of the margin before `field` reports kOutOfDomain.
/// Intermediate integrator stages may graze d_O = eps by O(dt^2).
inline constexpr double kDomainSlack = 1e-5;

/// Band around d_O = eps in which the discontinuous mode projects.
inline constexpr double kBoundaryBand = 1e-9;

Vec2 field(const PlannerParams& params, const World& world, const Vec2& x);

/// Undesired stationary point behind obstacle i (on the far side of c_i
/// from the goal, on the margin boundary).
Vec2 stationary_point(const PlannerParams& params, const World& world, std::size_t i);

/// rho_0 and rho_i of the potential-field baseline.
double pf_workspace_clearance(const PfParams& pf, const World& world, const Vec2& x);
double pf_obstacle_clearance(const World& world, std::size_t i, const Vec2& x);

/// U_att + U_rep at x (used by finite-difference checks).
double pf_potential(const PfParams& pf, const World& world, const Vec2& goal, const Vec2& x);

/// -grad(U_att + U_rep), analytic. Throws kSingularPotential when any
/// clearance is <= 0.
Vec2 pf_field(const PfParams& pf, const World& world, const Vec2& goal, const Vec2& x);

}  // namespace tcnav
