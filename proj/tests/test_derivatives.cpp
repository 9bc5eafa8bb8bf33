#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "screwdyn/derivatives.hpp"
#include "screwdyn/oracles.hpp"
#include "support/helpers.hpp"

using namespace screwdyn;
using namespace screwdyn::testsupport;

namespace {

const std::filesystem::path kModels =
    std::filesystem::path(SCREWDYN_SOURCE_DIR) / "models";

ChainModel kuka() { return load_model(kModels / "kuka_iiwa14.json"); }

MotionState regression_state() {
  MotionState s = MotionState::zero(2);
  s.q << 0.3, -0.2;
  s.qd << 0.5, 1.1;
  s.qdd << -0.7, 0.4;
  s.qddd << 0.9, -1.3;
  s.qdddd << 0.2, 0.8;
  return s;
}

/// Quadratic-in-time stacked wrench W(t) = W0 + t W1 + t^2/2 W2.
struct PolyWrench {
  VecX W0, W1, W2;
  PolyWrench(Rng& rng, int n)
      : W0(rng.vector(6 * n, -1.0, 1.0)),
        W1(rng.vector(6 * n, -1.0, 1.0)),
        W2(rng.vector(6 * n, -1.0, 1.0)) {}
  VecX at(double t) const { return W0 + t * W1 + 0.5 * t * t * W2; }
  VecX rate(double t) const { return W1 + t * W2; }
  VecX accel(double) const { return W2; }
};

}  // namespace

TEST_CASE("single-pendulum force derivatives in closed form") {
  const double m = 1.4, l = 0.7, g = 9.81;
  std::vector<Joint> joints;
  joints.emplace_back(JointKind::revolute, Vec3::UnitZ(), Vec3::Zero(), 0.0,
                      Pose::identity());
  std::vector<BodyInertia> bodies(1);
  bodies[0].mass = m;
  bodies[0].com = Vec3(l, 0, 0);
  bodies[0].inertia_com = Mat3::Zero();
  const ChainModel model("pendulum", Vec3(0, -g, 0), std::move(joints),
                         std::move(bodies));

  IdynWorkspace iws(model);
  Rng rng(601);
  for (int trial = 0; trial < 10; ++trial) {
    const MotionState s = random_state(rng, 1);
    evaluate_idyn(model, s, 2, iws);
    const double q = s.q[0], qd = s.qd[0], qdd = s.qdd[0];
    const double inertia = m * l * l;
    const double want_q = inertia * s.qdd[0] + m * g * l * std::cos(q);
    const double want_qd = inertia * s.qddd[0] - m * g * l * std::sin(q) * qd;
    const double want_qdd = inertia * s.qdddd[0] -
                            m * g * l * (std::cos(q) * qd * qd +
                                         std::sin(q) * qdd);
    CHECK(iws.forces.Q[0] == doctest::Approx(want_q).epsilon(1e-13));
    CHECK(iws.first.Qdot[0] == doctest::Approx(want_qd).epsilon(1e-13));
    CHECK(iws.second.Qddot[0] == doctest::Approx(want_qdd).epsilon(1e-13));
  }
}

TEST_CASE("two-link force derivatives match the closed-form reference") {
  const TwoRParams p;
  const ChainModel model = make_two_r_model(p);
  IdynWorkspace iws(model);

  const MotionState fixed = regression_state();
  evaluate_idyn(model, fixed, 2, iws);
  TwoRForces ref = two_r_reference(p, fixed);
  CHECK(rel_err(iws.first.Qdot, VecX(ref.tau_dot)) <= 1e-12);
  CHECK(rel_err(iws.second.Qddot, VecX(ref.tau_ddot)) <= 1e-11);

  Rng rng(602);
  for (int trial = 0; trial < 50; ++trial) {
    const MotionState s = random_state(rng, 2);
    evaluate_idyn(model, s, 2, iws);
    ref = two_r_reference(p, s);
    CHECK(rel_err(iws.forces.Q, VecX(ref.tau)) <= 1e-11);
    CHECK(rel_err(iws.first.Qdot, VecX(ref.tau_dot)) <= 1e-11);
    CHECK(rel_err(iws.second.Qddot, VecX(ref.tau_ddot)) <= 1e-11);
  }
}

TEST_CASE("frozen state zeroes every derivative") {
  const ChainModel model = kuka();
  IdynWorkspace iws(model);
  MotionState s = MotionState::zero(7);
  Rng rng(603);
  s.q = rng.vector(7, -2.0, 2.0);
  const VecX w = rng.vector(42, -1.0, 1.0);
  evaluate_idyn(model, s, 2, iws, w);
  CHECK(iws.first.Mdot.norm() == 0.0);
  CHECK(iws.first.Cdot.norm() == 0.0);
  CHECK(iws.second.Mddot.norm() == 0.0);
  CHECK(iws.second.Cddot.norm() == 0.0);
  CHECK(iws.first.Qdot.norm() == 0.0);
  CHECK(iws.second.Qddot.norm() == 0.0);
}

TEST_CASE("derivative ladder matches finite differences along a trajectory") {
  const ChainModel model = kuka();
  IdynWorkspace iws(model);
  IdynWorkspace scratch(model);
  Rng rng(604);
  FDConfig cfg;
  cfg.scheme = FDConfig::Scheme::central4;
  cfg.step = 1e-3;

  for (int trial = 0; trial < 3; ++trial) {
    const MotionState s = random_state(rng, 7, -1.5, 1.5);
    evaluate_idyn(model, s, 2, iws);

    auto flatten = [](const MatX& m) {
      return VecX(Eigen::Map<const VecX>(m.data(), m.size()));
    };
    auto m_at = [&](double t) {
      evaluate_idyn(model, poly_state(s, t), 0, scratch);
      return flatten(scratch.jsm.M);
    };
    auto c_at = [&](double t) {
      evaluate_idyn(model, poly_state(s, t), 0, scratch);
      return flatten(scratch.jsm.C);
    };
    auto mdot_at = [&](double t) {
      evaluate_idyn(model, poly_state(s, t), 1, scratch);
      return flatten(scratch.first.Mdot);
    };
    auto cdot_at = [&](double t) {
      evaluate_idyn(model, poly_state(s, t), 1, scratch);
      return flatten(scratch.first.Cdot);
    };
    auto q_at = [&](double t) {
      evaluate_idyn(model, poly_state(s, t), 0, scratch);
      return scratch.forces.Q;
    };
    auto qdot_at = [&](double t) {
      evaluate_idyn(model, poly_state(s, t), 1, scratch);
      return scratch.first.Qdot;
    };

    CHECK(rel_err(flatten(iws.first.Mdot), fd_derivative(m_at, 0.0, cfg)) <= 1e-6);
    CHECK(rel_err(flatten(iws.first.Cdot), fd_derivative(c_at, 0.0, cfg)) <= 1e-6);
    CHECK(rel_err(flatten(iws.second.Mddot), fd_derivative(mdot_at, 0.0, cfg)) <=
          1e-5);
    CHECK(rel_err(flatten(iws.second.Cddot), fd_derivative(cdot_at, 0.0, cfg)) <=
          1e-5);
    CHECK(rel_err(iws.first.Qdot, fd_derivative(q_at, 0.0, cfg)) <= 1e-6);
    CHECK(rel_err(iws.second.Qddot, fd_derivative(qdot_at, 0.0, cfg)) <= 1e-6);
  }
}

TEST_CASE("gravity force derivatives match finite differences") {
  const ChainModel model = kuka();
  IdynWorkspace iws(model);
  IdynWorkspace scratch(model);
  Rng rng(605);
  FDConfig cfg;
  cfg.scheme = FDConfig::Scheme::central4;
  cfg.step = 1e-3;

  const MotionState s = random_state(rng, 7);
  evaluate_idyn(model, s, 2, iws);
  auto qgrav_at = [&](double t) {
    evaluate_idyn(model, poly_state(s, t), 0, scratch);
    return scratch.forces.Qgrav;
  };
  auto qgravdot_at = [&](double t) {
    evaluate_idyn(model, poly_state(s, t), 1, scratch);
    return scratch.first.Qgravdot;
  };
  CHECK(rel_err(iws.first.Qgravdot, fd_derivative(qgrav_at, 0.0, cfg)) <= 1e-6);
  CHECK(rel_err(iws.second.Qgravddot, fd_derivative(qgravdot_at, 0.0, cfg)) <=
        1e-6);
}

TEST_CASE("external force derivatives match finite differences") {
  const ChainModel model = kuka();
  IdynWorkspace iws(model);
  IdynWorkspace scratch(model);
  Rng rng(606);
  FDConfig cfg;
  cfg.scheme = FDConfig::Scheme::central4;
  cfg.step = 1e-3;

  const MotionState s = random_state(rng, 7, -1.5, 1.5);
  const PolyWrench w(rng, 7);
  evaluate_idyn(model, s, 2, iws, w.at(0.0), w.rate(0.0), w.accel(0.0));

  auto qext_at = [&](double t) {
    evaluate_idyn(model, poly_state(s, t), 0, scratch, w.at(t));
    return scratch.forces.Qext;
  };
  auto qextdot_at = [&](double t) {
    evaluate_idyn(model, poly_state(s, t), 1, scratch, w.at(t), w.rate(t));
    return scratch.first.Qextdot;
  };
  auto q_at = [&](double t) {
    evaluate_idyn(model, poly_state(s, t), 0, scratch, w.at(t));
    return scratch.forces.Q;
  };
  auto qdot_at = [&](double t) {
    evaluate_idyn(model, poly_state(s, t), 1, scratch, w.at(t), w.rate(t));
    return scratch.first.Qdot;
  };
  CHECK(rel_err(iws.first.Qextdot, fd_derivative(qext_at, 0.0, cfg)) <= 1e-6);
  CHECK(rel_err(iws.second.Qextddot, fd_derivative(qextdot_at, 0.0, cfg)) <= 1e-6);
  CHECK(rel_err(iws.first.Qdot, fd_derivative(q_at, 0.0, cfg)) <= 1e-6);
  CHECK(rel_err(iws.second.Qddot, fd_derivative(qdot_at, 0.0, cfg)) <= 1e-6);
}

TEST_CASE("constant wrench needs no rate arguments") {
  const ChainModel model = kuka();
  IdynWorkspace with_rates(model);
  IdynWorkspace without(model);
  Rng rng(607);
  const MotionState s = random_state(rng, 7);
  const VecX w = rng.vector(42, -1.0, 1.0);
  evaluate_idyn(model, s, 2, with_rates, w, VecX::Zero(42), VecX::Zero(42));
  evaluate_idyn(model, s, 2, without, w);
  CHECK((with_rates.first.Qdot - without.first.Qdot).norm() == 0.0);
  CHECK((with_rates.second.Qddot - without.second.Qddot).norm() == 0.0);
}

TEST_CASE("reuse and expanded operator forms agree") {
  const ChainModel model = kuka();
  IdynWorkspace iws(model);
  Rng rng(608);
  for (int trial = 0; trial < 20; ++trial) {
    const MotionState s = random_state(rng, 7);
    evaluate_idyn(model, s, 2, iws);
    CHECK(rel_err(c1sys_expanded(iws.sys), iws.first.C1sys) <= 1e-12);
    CHECK(rel_err(m2sys_expanded(iws.sys), iws.second.M2sys) <= 1e-12);
    CHECK(rel_err(c2sys_expanded(iws.sys, iws.jsm), iws.second.C2sys) <= 1e-11);
  }
}

TEST_CASE("mass matrix derivatives stay symmetric") {
  const ChainModel model = kuka();
  IdynWorkspace iws(model);
  Rng rng(609);
  for (int trial = 0; trial < 20; ++trial) {
    evaluate_idyn(model, random_state(rng, 7), 2, iws);
    CHECK(rel_err(iws.first.Mdot, MatX(iws.first.Mdot.transpose())) <= 1e-12);
    CHECK(rel_err(iws.second.Mddot, MatX(iws.second.Mddot.transpose())) <= 1e-12);
  }
}

TEST_CASE("passivity: Mdot - 2 Cbar is skew symmetric") {
  const ChainModel model = kuka();
  IdynWorkspace iws(model);
  Rng rng(610);
  for (int trial = 0; trial < 20; ++trial) {
    const MotionState s = random_state(rng, 7);
    evaluate_idyn(model, s, 1, iws);
    const MatX skew_part = iws.first.Mdot - 2.0 * iws.jsm.Cbar;
    CHECK(rel_err(skew_part, MatX(-skew_part.transpose())) <= 1e-12);
    CHECK(rel_err(MatX(iws.jsm.Cbar + iws.jsm.Cbar.transpose()),
                  iws.first.Mdot) <= 1e-12);
    const double quad = s.qd.dot(skew_part * s.qd);
    CHECK(std::abs(quad) <= 1e-12 * (1.0 + s.qd.squaredNorm()));
  }
}

TEST_CASE("skew symmetry survives differentiation") {
  const ChainModel model = kuka();
  IdynWorkspace iws(model);
  IdynWorkspace scratch(model);
  Rng rng(611);
  const MotionState s = random_state(rng, 7, -1.5, 1.5);
  evaluate_idyn(model, s, 1, iws);

  // d/dt (Mdot - 2 Cbar) by finite differences should remain skew.
  const double h = 1e-4;
  auto skew_at = [&](double t) {
    evaluate_idyn(model, poly_state(s, t), 1, scratch);
    return MatX(scratch.first.Mdot - 2.0 * scratch.jsm.Cbar);
  };
  const MatX rate = (skew_at(h) - skew_at(-h)) / (2.0 * h);
  CHECK(rel_err(rate, MatX(-rate.transpose())) <= 1e-6);
}

TEST_CASE("evaluation order and inputs are validated") {
  const ChainModel model = make_two_r_model(TwoRParams{});
  IdynWorkspace iws(model);
  const MotionState s = regression_state();
  CHECK_THROWS_AS(evaluate_idyn(model, s, 3, iws), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_idyn(model, s, -1, iws), std::invalid_argument);

  MotionState no_jerk = s;
  no_jerk.qddd = VecX();
  evaluate_idyn(model, no_jerk, 0, iws);
  CHECK_THROWS_AS(evaluate_idyn(model, no_jerk, 1, iws), std::invalid_argument);

  MotionState no_snap = s;
  no_snap.qdddd = VecX();
  evaluate_idyn(model, no_snap, 1, iws);
  CHECK_THROWS_AS(evaluate_idyn(model, no_snap, 2, iws), std::invalid_argument);

  CHECK_THROWS_AS(
      evaluate_idyn(model, s, 1, iws, VecX(), VecX::Zero(12)),
      std::invalid_argument);
  CHECK_THROWS_AS(evaluate_idyn(model, s, 1, iws, VecX::Zero(7)),
                  std::invalid_argument);

  SystemWorkspace ws(model);
  JointSpaceMatrices jsm;
  FirstOrderBundle fo;
  assemble_system(model, s.q, ws);
  system_velocity(ws, s.qd);
  system_acceleration(ws, s.qdd);
  CHECK_THROWS_AS(first_order_matrices(ws, jsm, fo), std::logic_error);
  joint_space_matrices(ws, jsm);
  SecondOrderBundle so;
  CHECK_THROWS_AS(second_order_matrices(ws, jsm, fo, so), std::logic_error);
}

TEST_CASE("partial evaluation leaves higher bundles untouched") {
  const ChainModel model = kuka();
  IdynWorkspace iws(model);
  Rng rng(612);
  const MotionState s = random_state(rng, 7);
  evaluate_idyn(model, s, 2, iws);
  const VecX qddot_before = iws.second.Qddot;

  const MotionState s2 = random_state(rng, 7);
  evaluate_idyn(model, s2, 0, iws);
  CHECK((iws.second.Qddot - qddot_before).norm() == 0.0);
  CHECK(iws.sys.dyn_stage == 1);
}
