#include "tcnav/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace tcnav {

void check_robot_params(const RobotParams& params) {
  if (params.offset == 0.0 || std::abs(params.offset) > 1.0) {
    throw NavError(ErrorKind::kConfig, "robot.offset must satisfy 0 < |l| <= 1");
  }
  if (!(params.body_radius > 0.0)) throw NavError(ErrorKind::kConfig, "robot.radius must be > 0");
  if (!(params.input_limit > 0.0)) {
    throw NavError(ErrorKind::kConfig, "robot.input_limit must be > 0");
  }
}

double Pose::wrapped_theta() const {
  double w = std::remainder(theta, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

DisturbanceModel DisturbanceModel::none() { return DisturbanceModel{}; }

DisturbanceModel DisturbanceModel::sinusoidal(const SinusoidalDisturbance& spec) {
  DisturbanceModel model;
  model.kind_ = Kind::kSinusoidal;
  model.sinusoid_ = spec;
  const Vec2 extremes = spec.amplitude.cwiseAbs() + spec.offset.cwiseAbs();
  model.bound_ = std::abs(spec.scale) * extremes.norm();
  return model;
}

DisturbanceModel DisturbanceModel::custom(Signal signal, double bound) {
  DisturbanceModel model;
  model.kind_ = Kind::kCustom;
  model.signal_ = std::move(signal);
  model.bound_ = bound;
  return model;
}

Vec2 DisturbanceModel::operator()(double t) const {
  switch (kind_) {
    case Kind::kNone:
      return Vec2::Zero();
    case Kind::kSinusoidal: {
      const auto& s = sinusoid_;
      return s.scale * Vec2(s.amplitude.x() * std::sin(s.frequency.x() * t + s.phase.x()) +
                                s.offset.x(),
                            s.amplitude.y() * std::cos(s.frequency.y() * t + s.phase.y()) +
                                s.offset.y());
    }
    case Kind::kCustom:
      return signal_(t);
  }
  return Vec2::Zero();
}

Mat2 rotation_matrix(double offset, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 r;
  r << c, -offset * s,
       s, offset * c;
  return r;
}

Mat2 rotation_matrix_inverse(double offset, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 r;
  r << c, s,
       -s / offset, c / offset;
  return r;
}

Vec2 virtual_point(const RobotParams& params, const Pose& pose) {
  return Vec2(pose.x + params.offset * std::cos(pose.theta),
              pose.y + params.offset * std::sin(pose.theta));
}

Pose pose_from_virtual_point(const RobotParams& params, const Vec2& point, double theta) {
  return Pose{point.x() - params.offset * std::cos(theta),
              point.y() - params.offset * std::sin(theta), theta};
}

PoseRate pose_derivative(const Pose& pose, const Vec2& u, const Vec2& u_d) {
  const double v = u.x() + u_d.x();
  return PoseRate{v * std::cos(pose.theta), v * std::sin(pose.theta), u.y() + u_d.y()};
}

}  // namespace tcnav
