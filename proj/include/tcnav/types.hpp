#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tcnav {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

enum class ErrorKind {
  kContractViolation,
  kSingularBearing,
  kOutOfDomain,
  kDegenerate,
  kTubeViolation,
  kSingularPotential,
  kConfig,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; `kind()` lets callers branch on the
// failure class without string matching.
class NavError : public std::runtime_error {
 public:
  NavError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tcnav
