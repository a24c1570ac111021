#pragma once

#include <functional>
#include <string>

#include "tcnav/types.hpp"

namespace tcnav {

struct RobotParams {
  double offset = 0.05;       ///< signed distance l of the virtual point, 0 < |l| <= 1
  double body_radius = 0.2;   ///< r
  double input_limit = 1.5;   ///< u_m

  bool operator==(const RobotParams&) const = default;
};

void check_robot_params(const RobotParams& params);

/// Pose of the wheel-axis midpoint. Heading is kept unwrapped.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  /// Heading wrapped to (-pi, pi].
  double wrapped_theta() const;

  bool operator==(const Pose&) const = default;
};

/// Sinusoidal disturbance
///   u_d(t) = scale * [a_v sin(w_v t + p_v) + o_v, a_w cos(w_w t + p_w) + o_w].
struct SinusoidalDisturbance {
  double scale = 0.01;
  Vec2 amplitude = Vec2(1.0, 1.0);
  Vec2 frequency = Vec2(0.2, 0.3);
  Vec2 phase = Vec2::Zero();
  Vec2 offset = Vec2(1.0, -2.0);

  bool operator==(const SinusoidalDisturbance&) const = default;
};

class DisturbanceModel {
 public:
  enum class Kind { kNone, kSinusoidal, kCustom };

  using Signal = std::function<Vec2(double)>;

  static DisturbanceModel none();
  static DisturbanceModel sinusoidal(const SinusoidalDisturbance& spec);
  /// `bound` must dominate sup_t |signal(t)|; it is trusted, not checked.
  static DisturbanceModel custom(Signal signal, double bound);

  Kind kind() const { return kind_; }
  const SinusoidalDisturbance& sinusoid() const { return sinusoid_; }

  /// Declared bound d on sup_t |u_d(t)|. For the sinusoidal kind this is the
  /// component-extreme bound scale * |(|a_v|+|o_v|, |a_w|+|o_w|)|.
  double declared_bound() const { return bound_; }

  Vec2 operator()(double t) const;

  /// Custom signals compare by kind and bound only.
  bool operator==(const DisturbanceModel& other) const {
    return kind_ == other.kind_ && sinusoid_ == other.sinusoid_ && bound_ == other.bound_;
  }

 private:
  Kind kind_ = Kind::kNone;
  SinusoidalDisturbance sinusoid_{};
  Signal signal_;
  double bound_ = 0.0;
};

/// R(theta) = [[cos, -l sin], [sin, l cos]].
Mat2 rotation_matrix(double offset, double theta);
Mat2 rotation_matrix_inverse(double offset, double theta);

Vec2 virtual_point(const RobotParams& params, const Pose& pose);

/// Pose whose virtual point sits at `point` with heading `theta`.
Pose pose_from_virtual_point(const RobotParams& params, const Vec2& point, double theta);

struct PoseRate {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

/// Unicycle kinematics driven by u + u_d, with u = [v, w].
PoseRate pose_derivative(const Pose& pose, const Vec2& u, const Vec2& u_d);

}  // namespace tcnav
