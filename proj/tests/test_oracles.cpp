#include <doctest.h>

#include <cmath>

#include "screwdyn/kinematics.hpp"
#include "screwdyn/oracles.hpp"
#include "support/helpers.hpp"

using namespace screwdyn;
using namespace screwdyn::testsupport;

TEST_CASE("central differences are exact on polynomials of matching degree") {
  auto quadratic = [](double t) {
    return VecX::Constant(1, 3.0 + 2.0 * t - 5.0 * t * t);
  };
  FDConfig c2;
  c2.step = 0.125;
  CHECK(std::abs(fd_derivative(quadratic, 0.5, c2)[0] - (2.0 - 5.0)) <= 1e-12);

  auto quartic = [](double t) {
    return VecX::Constant(1, std::pow(t, 4) - 2.0 * std::pow(t, 3) + t);
  };
  FDConfig c4;
  c4.step = 0.125;
  c4.scheme = FDConfig::Scheme::central4;
  const double want = 4.0 * std::pow(0.5, 3) - 6.0 * std::pow(0.5, 2) + 1.0;
  CHECK(std::abs(fd_derivative(quartic, 0.5, c4)[0] - want) <= 1e-12);
}

TEST_CASE("central-4 error shrinks sixteenfold when the step halves") {
  auto f = [](double t) { return VecX::Constant(1, std::sin(3.0 * t)); };
  const double exact = 3.0 * std::cos(3.0 * 0.4);
  FDConfig cfg;
  cfg.scheme = FDConfig::Scheme::central4;
  cfg.step = 0.02;
  const double e1 = std::abs(fd_derivative(f, 0.4, cfg)[0] - exact);
  cfg.step = 0.01;
  const double e2 = std::abs(fd_derivative(f, 0.4, cfg)[0] - exact);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("two-link reference at rest reduces to gravity load") {
  const TwoRParams p;
  const TwoRForces f = two_r_reference(p, MotionState::zero(2));
  CHECK(f.tau[0] == doctest::Approx(3.0 * 9.81).epsilon(1e-14));
  CHECK(f.tau[1] == doctest::Approx(9.81).epsilon(1e-14));
  CHECK(f.tau_dot.norm() == 0.0);
  CHECK(f.tau_ddot.norm() == 0.0);
}

TEST_CASE("two-link reference derivatives are consistent with the torques") {
  const TwoRParams p;
  Rng rng(401);
  FDConfig cfg;
  cfg.scheme = FDConfig::Scheme::central4;
  cfg.step = 1e-3;
  for (int trial = 0; trial < 10; ++trial) {
    const MotionState s = random_state(rng, 2);
    const TwoRForces f = two_r_reference(p, s);

    auto tau_at = [&](double t) {
      return VecX(two_r_reference(p, poly_state(s, t)).tau);
    };
    CHECK(rel_err(VecX(f.tau_dot), fd_derivative(tau_at, 0.0, cfg)) <= 1e-9);

    auto tau_dot_at = [&](double t) {
      return VecX(two_r_reference(p, poly_state(s, t)).tau_dot);
    };
    CHECK(rel_err(VecX(f.tau_ddot), fd_derivative(tau_dot_at, 0.0, cfg)) <= 1e-9);
  }
}

TEST_CASE("two-link reference derivatives respect parameter scaling") {
  TwoRParams p;
  p.L1 = 0.6;
  p.L2 = 1.7;
  p.m1 = 2.5;
  p.m2 = 0.4;
  p.g = 3.72;
  Rng rng(402);
  const MotionState s = random_state(rng, 2);
  const TwoRForces f = two_r_reference(p, s);
  FDConfig cfg;
  cfg.scheme = FDConfig::Scheme::central4;
  cfg.step = 1e-3;
  auto tau_at = [&](double t) {
    return VecX(two_r_reference(p, poly_state(s, t)).tau);
  };
  CHECK(rel_err(VecX(f.tau_dot), fd_derivative(tau_at, 0.0, cfg)) <= 1e-9);
  auto tau_dot_at = [&](double t) {
    return VecX(two_r_reference(p, poly_state(s, t)).tau_dot);
  };
  CHECK(rel_err(VecX(f.tau_ddot), fd_derivative(tau_dot_at, 0.0, cfg)) <= 1e-9);
}

TEST_CASE("two-link reference validates its input") {
  const TwoRParams p;
  CHECK_THROWS_AS(two_r_reference(p, MotionState::zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(two_r_reference(p, MotionState::zero(2, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(fd_derivative([](double) { return VecX::Zero(1); }, 0.0,
                                FDConfig{-1e-6, FDConfig::Scheme::central2}),
                  std::invalid_argument);
}
