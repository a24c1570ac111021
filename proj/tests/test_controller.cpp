#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tcnav/controller.hpp"
#include "tcnav/kinematics.hpp"

namespace tcnav {
namespace {

const ControllerParams kParams{};

TEST(TransformedError, Examples) {
  EXPECT_EQ(transformed_error(kParams, Vec2::Zero()), 0.0);
  EXPECT_NEAR(transformed_error(kParams, Vec2(0.03, 0.0)), 0.25, 1e-15);
  EXPECT_NEAR(transformed_error(kParams, Vec2(0.036, 0.048)), 1.0, 1e-15);
}

TEST(ZVector, Examples) {
  EXPECT_EQ(z_vector(kParams, Vec2::Zero()), Vec2::Zero());
  const Vec2 z = z_vector(kParams, Vec2(0.03, 0.0));
  EXPECT_NEAR(z.x(), 0.03 / (0.0036 * 0.75), 1e-12);
  EXPECT_NEAR(z.x(), 11.111111, 1e-6);
  EXPECT_EQ(z.y(), 0.0);
}

TEST(ZVector, ParallelToErrorAndGrowsTowardBoundary) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-0.042, 0.042);
  for (int k = 0; k < 1000; ++k) {
    const Vec2 e(u(rng), u(rng));
    const Vec2 z = z_vector(kParams, e);
    EXPECT_GE(z.dot(e), 0.0);
    EXPECT_NEAR(z.x() * e.y() - z.y() * e.x(), 0.0, 1e-12);
  }
  double prev = 0.0;
  for (const double frac : {0.5, 0.9, 0.99, 0.999, 0.9999}) {
    const double n = z_vector(kParams, Vec2(0.06 * frac, 0.0)).norm();
    EXPECT_GT(n, prev);
    EXPECT_NEAR(n, 0.06 * frac / (0.0036 * (1.0 - frac * frac)), 1e-9 * n);
    prev = n;
  }
  EXPECT_GT(prev, 8e4);
}

TEST(ZVector, ThrowsOutsideTube) {
  try {
    z_vector(kParams, Vec2(0.06, 0.0));
    FAIL();
  } catch (const NavError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTubeViolation);
  }
}

TEST(RobustTerm, Examples) {
  EXPECT_EQ(robust_term(kParams, AdaptiveState{0.02}, Vec2::Zero()), Vec2::Zero());
  const Vec2 w = robust_term(kParams, AdaptiveState{0.02}, Vec2(0.1, 0.0));
  const double oracle = 0.0004 * 0.1 / std::sqrt(0.0004 * 0.01 + 0.005 * 0.005);
  EXPECT_NEAR(w.x(), oracle, 1e-15);
  EXPECT_NEAR(w.x(), 0.0074278, 1e-7);
  EXPECT_EQ(w.y(), 0.0);
}

TEST(RobustTerm, NormNeverExceedsEstimate) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ud(0.0, 0.035);
  std::uniform_real_distribution<double> ulog(-6.0, 6.0);
  std::uniform_real_distribution<double> ua(0.0, 2.0 * M_PI);
  for (int k = 0; k < 10000; ++k) {
    const double d = ud(rng);
    const double mag = std::pow(10.0, ulog(rng));
    const double a = ua(rng);
    const Vec2 z = mag * Vec2(std::cos(a), std::sin(a));
    EXPECT_LE(robust_term(kParams, AdaptiveState{d}, z).norm(), d * (1.0 + 1e-15));
  }
}

TEST(ControlLaw, PureFeedforwardAtZeroError) {
  const Vec2 tau(0.02, -0.01);
  const Vec2 u = control_law(kParams, AdaptiveState{0.01}, 0.05, 0.0, Vec2::Zero(), tau);
  EXPECT_TRUE(u.isApprox(rotation_matrix_inverse(0.05, 0.0) * tau, 1e-15));
  EXPECT_NEAR(u.x(), 0.02, 1e-15);
  EXPECT_NEAR(u.y(), -0.2, 1e-15);
}

TEST(ControlLaw, TubeViolationPropagates) {
  EXPECT_THROW(control_law(kParams, AdaptiveState{0.01}, 0.05, 0.3, Vec2(0.07, 0.0), Vec2::Zero()),
               NavError);
}

TEST(ControlLaw, InputBoundFromParameters) {
  const double bound = input_bound(kParams, 0.03, 0.05);
  EXPECT_NEAR(bound, (0.1 * 0.06 + 0.03 + 0.03 + 0.005) / 0.05, 1e-14);
  EXPECT_NEAR(bound, 1.42, 1e-12);
  EXPECT_LE(bound, 1.5);
  EXPECT_NEAR(input_bound(kParams, 0.03, -0.05), bound, 1e-15);
}

TEST(ControlLaw, RespectsInputBoundInsideTube) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double bound = input_bound(kParams, 0.03, 0.05);
  for (int k = 0; k < 10000; ++k) {
    const double r = 0.06 * std::sqrt(u(rng)) * (1.0 - 1e-9);
    const double a = 2 * M_PI * u(rng);
    const Vec2 e = r * Vec2(std::cos(a), std::sin(a));
    const double ta = 2 * M_PI * u(rng);
    const Vec2 tau = 0.03 * u(rng) * Vec2(std::cos(ta), std::sin(ta));
    const AdaptiveState s{0.035 * u(rng)};
    const Vec2 cmd = control_law(kParams, s, 0.05, 2 * M_PI * u(rng), e, tau);
    EXPECT_LE(cmd.norm(), bound * (1.0 + 1e-12));
  }
}

TEST(AdaptiveUpdate, CaseOneHandEvaluated) {
  const AdaptiveState s{0.01};
  const double rate = adaptive_rate(kParams, s, Vec2(0.1, 0.0));
  EXPECT_NEAR(rate, 0.1 * (0.1 - 0.01 * 0.01), 1e-15);
  EXPECT_NEAR(rate, 0.00999, 1e-15);
  EXPECT_NEAR(adaptive_update(kParams, s, Vec2(0.1, 0.0), 0.01).estimate, 0.01 + 0.0000999, 1e-15);
}

TEST(AdaptiveUpdate, FrozenAtBandEdge) {
  const AdaptiveState s{kParams.bound + kParams.band};
  EXPECT_EQ(adaptive_rate(kParams, s, Vec2(5.0, 0.0)), 0.0);
  EXPECT_DOUBLE_EQ(adaptive_update(kParams, s, Vec2(5.0, 0.0), 0.01).estimate,
                   kParams.bound + kParams.band);
}

TEST(AdaptiveUpdate, CaseTwoDecreases) {
  const AdaptiveState s{kParams.bound};
  const double rate = adaptive_rate(kParams, s, Vec2::Zero());
  EXPECT_LE(rate, 0.0);
  EXPECT_NEAR(rate, -0.1 * 0.01 * 0.03, 1e-18);
}

TEST(AdaptiveUpdate, CaseThreeScalesInsideBand) {
  const AdaptiveState s{kParams.bound + 0.5 * kParams.band};
  const Vec2 z(0.2, 0.0);
  const double phi = 0.2 - 0.01 * s.estimate;
  EXPECT_NEAR(adaptive_rate(kParams, s, z), 0.1 * 0.5 * phi, 1e-15);
}

TEST(AdaptiveUpdate, ProjectionKeepsEstimateInSet) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double top = kParams.bound + kParams.band;
  for (int trial = 0; trial < 200; ++trial) {
    AdaptiveState s{top * u(rng)};
    for (int k = 0; k < 2000; ++k) {
      // Adversarial: alternately huge drives upward and zero drive, large dt.
      const double mag = (k / 50) % 2 == 0 ? 1e4 * u(rng) : 0.0;
      const double dt = u(rng) < 0.1 ? 10.0 : 0.01;
      s = adaptive_update(kParams, s, Vec2(mag, 0.0), dt);
      ASSERT_GE(s.estimate, 0.0);
      ASSERT_LE(s.estimate, top);
    }
  }
}

TEST(Barrier, Examples) {
  EXPECT_EQ(barrier_value(kParams, Vec2::Zero()), 0.0);
  const Vec2 half = Vec2(0.06 / std::sqrt(2.0), 0.0);
  EXPECT_NEAR(barrier_value(kParams, half), 0.5 * std::log(2.0), 1e-14);
  EXPECT_NEAR(barrier_value(kParams, half), 0.34657, 1e-5);
  EXPECT_THROW(barrier_value(kParams, Vec2(0.0, 0.061)), NavError);
}

TEST(Barrier, LogSandwichBoundsBarrier) {
  for (int k = 0; k < 10000; ++k) {
    const double xi = k / 10000.0;
    const Vec2 e(0.06 * std::sqrt(xi), 0.0);
    const double xi_actual = transformed_error(kParams, e);
    const double L = barrier_value(kParams, e);
    EXPECT_LE(xi_actual / 2.0, L * (1 + 1e-12) + 1e-300);
    EXPECT_LE(L, xi_actual / (2.0 * (1.0 - xi_actual)) * (1 + 1e-12) + 1e-300);
    EXPECT_GE(L, 0.0);
  }
}

TEST(CheckControllerParams, Invariants) {
  EXPECT_NO_THROW(check_controller_params(kParams, 0.1));
  EXPECT_THROW(check_controller_params(kParams, 0.05), NavError);  // rho > eps
  ControllerParams p = kParams;
  p.initial_estimate = 0.04;
  EXPECT_THROW(check_controller_params(p, 0.1), NavError);
  p = kParams;
  p.gain = 0.0;
  EXPECT_THROW(check_controller_params(p, 0.1), NavError);
  p = kParams;
  p.leakage = -1.0;
  EXPECT_THROW(check_controller_params(p, 0.1), NavError);
}

}  // namespace
}  // namespace tcnav
