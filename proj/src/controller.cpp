#include "tcnav/controller.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcnav/kinematics.hpp"

namespace tcnav {

void check_controller_params(const ControllerParams& p, double margin) {
  auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw NavError(ErrorKind::kConfig, std::string("controller.") + name + " must be > 0");
  };
  require_positive(p.tube_radius, "tube_radius");
  require_positive(p.gain, "gain");
  require_positive(p.smoothing, "smoothing");
  require_positive(p.adaptation_rate, "adaptation_rate");
  require_positive(p.leakage, "leakage");
  require_positive(p.bound, "bound");
  require_positive(p.band, "band");
  if (!(p.initial_estimate >= 0.0 && p.initial_estimate <= p.bound + p.band)) {
    throw NavError(ErrorKind::kConfig,
                   "controller.initial_estimate must lie in [0, bound + band]");
  }
  if (!(p.tube_radius <= margin)) {
    throw NavError(ErrorKind::kConfig, "controller.tube_radius (" + std::to_string(p.tube_radius) +
                                           ") must not exceed world.margin (" +
                                           std::to_string(margin) + ")");
  }
}

double transformed_error(const ControllerParams& params, const Vec2& x_e) {
  return x_e.squaredNorm() / (params.tube_radius * params.tube_radius);
}

Vec2 z_vector(const ControllerParams& params, const Vec2& x_e) {
  const double xi = transformed_error(params, x_e);
  if (!(xi < 1.0)) {
    throw NavError(ErrorKind::kTubeViolation,
                   "tracking error left the tube (xi = " + std::to_string(xi) + ")");
  }
  return x_e / (params.tube_radius * params.tube_radius * (1.0 - xi));
}

Vec2 robust_term(const ControllerParams& params, const AdaptiveState& state, const Vec2& z) {
  const double d2 = state.estimate * state.estimate;
  const double phi = params.smoothing;
  return d2 * z / std::sqrt(d2 * z.squaredNorm() + phi * phi);
}

Vec2 control_law(const ControllerParams& params, const AdaptiveState& state, double offset,
                 double theta, const Vec2& x_e, const Vec2& tau_d) {
  const Vec2 z = z_vector(params, x_e);
  const Vec2 virtual_input = -params.gain * x_e + tau_d - robust_term(params, state, z);
  return rotation_matrix_inverse(offset, theta) * virtual_input;
}

double adaptive_rate(const ControllerParams& params, const AdaptiveState& state, const Vec2& z) {
  const double d_hat = state.estimate;
  const double drive = z.norm() - params.leakage * d_hat;
  if (d_hat < params.bound || drive <= 0.0) return params.adaptation_rate * drive;
  return params.adaptation_rate * ((params.bound + params.band - d_hat) / params.band) * drive;
}

AdaptiveState adaptive_update(const ControllerParams& params, const AdaptiveState& state,
                              const Vec2& z, double dt) {
  const double next = state.estimate + dt * adaptive_rate(params, state, z);
  return AdaptiveState{std::clamp(next, 0.0, params.bound + params.band)};
}

double barrier_value(const ControllerParams& params, const Vec2& x_e) {
  const double xi = transformed_error(params, x_e);
  if (!(xi < 1.0)) {
    throw NavError(ErrorKind::kTubeViolation,
                   "barrier undefined outside the tube (xi = " + std::to_string(xi) + ")");
  }
  return -0.5 * std::log1p(-xi);
}

double input_bound(const ControllerParams& params, double alpha, double offset) {
  return (params.gain * params.tube_radius + alpha + params.bound + params.band) /
         std::abs(offset);
}

}  // namespace tcnav
