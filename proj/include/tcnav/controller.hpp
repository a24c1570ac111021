#pragma once

#include "tcnav/types.hpp"

namespace tcnav {

struct ControllerParams {
  double tube_radius = 0.06;        ///< rho
  double gain = 0.1;                ///< k [1/s]
  double smoothing = 0.005;         ///< constant under the square root of the robust term
  double adaptation_rate = 0.1;     ///< eta
  double leakage = 0.01;            ///< gamma
  double bound = 0.03;              ///< d_m, a priori bound on the disturbance
  double band = 0.005;              ///< delta, projection band above d_m
  double initial_estimate = 0.01;   ///< d_hat(0)

  bool operator==(const ControllerParams&) const = default;
};

/// Throws kConfig on any non-positive constant, on an initial estimate
/// outside [0, d_m + delta], or when the tube does not fit in the margin.
void check_controller_params(const ControllerParams& params, double margin);

struct AdaptiveState {
  double estimate = 0.0;  ///< d_hat, kept inside [0, d_m + delta]
};

/// |x_e|^2 / rho^2; the tube constraint holds iff the result is < 1.
double transformed_error(const ControllerParams& params, const Vec2& x_e);

/// x_e / (rho^2 (1 - xi)). Throws kTubeViolation when xi >= 1.
Vec2 z_vector(const ControllerParams& params, const Vec2& x_e);

/// d_hat^2 z / sqrt(d_hat^2 |z|^2 + phi^2); its norm never exceeds d_hat.
Vec2 robust_term(const ControllerParams& params, const AdaptiveState& state, const Vec2& z);

/// u = R^{-1}(theta) (-k x_e + tau_d - robust_term).
Vec2 control_law(const ControllerParams& params, const AdaptiveState& state, double offset,
                 double theta, const Vec2& x_e, const Vec2& tau_d);

/// Projected adaptive rate eta * Proj(d_hat, |z| - gamma d_hat).
double adaptive_rate(const ControllerParams& params, const AdaptiveState& state, const Vec2& z);

/// One explicit Euler step of the adaptive law followed by a clamp to
/// [0, d_m + delta].
AdaptiveState adaptive_update(const ControllerParams& params, const AdaptiveState& state,
                              const Vec2& z, double dt);

/// 0.5 ln(1 / (1 - xi)). Throws kTubeViolation when xi >= 1.
double barrier_value(const ControllerParams& params, const Vec2& x_e);

/// (k rho + alpha + d_m + delta) / |l|, the a priori bound on |u|.
double input_bound(const ControllerParams& params, double alpha, double offset);

}  // namespace tcnav
