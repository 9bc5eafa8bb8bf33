#include "screwdyn/checks.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <utility>

#include "screwdyn/derivatives.hpp"
#include "screwdyn/oracles.hpp"

namespace screwdyn {
namespace {

using Clock = std::chrono::steady_clock;

double since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string metric(const char* fmt, double value, int count) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), fmt, value, count);
  return buf;
}

CheckResult finish(std::string name, bool pass, std::string detail,
                   const Clock::time_point& t0) {
  return CheckResult{std::move(name), pass, std::move(detail), since(t0)};
}

MotionState random_state(Rng& rng, int n, double lo, double hi) {
  MotionState s;
  s.q = rng.vector(n, lo, hi);
  s.qd = rng.vector(n, lo, hi);
  s.qdd = rng.vector(n, lo, hi);
  s.qddd = rng.vector(n, lo, hi);
  s.qdddd = rng.vector(n, lo, hi);
  return s;
}

JointScrew random_screw(Rng& rng, JointKind kind) {
  JointScrew s;
  s.kind = kind;
  if (kind == JointKind::prismatic) {
    s.xi = Vec3::Zero();
    s.eta = rng.unit_vec3();
    return s;
  }
  s.xi = rng.unit_vec3();
  const Vec3 point = rng.vec3(-1.0, 1.0);
  s.pitch = (kind == JointKind::helical) ? rng.uniform(-0.5, 0.5) : 0.0;
  s.eta = point.cross(s.xi) + s.pitch * s.xi;
  return s;
}

/// Homogeneous 4x4 of the screw motion by a scaled Taylor series:
/// exp(M) = exp(M / 2^k)^(2^k) with 30 series terms, accurate to well
/// below 1e-13 for the angles used here.
Eigen::Matrix4d series_exp(const JointScrew& s, double phi) {
  Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
  M.topLeftCorner<3, 3>() = skew(s.xi);
  M.topRightCorner<3, 1>() = s.eta;
  M *= phi;

  int squarings = 0;
  while (M.norm() > 0.5) {
    M *= 0.5;
    ++squarings;
  }
  Eigen::Matrix4d result = Eigen::Matrix4d::Identity();
  Eigen::Matrix4d term = Eigen::Matrix4d::Identity();
  for (int k = 1; k <= 30; ++k) {
    term = (term * M / static_cast<double>(k)).eval();
    result += term;
  }
  for (int k = 0; k < squarings; ++k) result = (result * result).eval();
  return result;
}

Eigen::Matrix4d homogeneous(const Pose& c) {
  Eigen::Matrix4d H = Eigen::Matrix4d::Identity();
  H.topLeftCorner<3, 3>() = c.R;
  H.topRightCorner<3, 1>() = c.r;
  return H;
}

ChainModel without_gravity(const ChainModel& model) {
  std::vector<Joint> joints;
  std::vector<BodyInertia> bodies;
  for (int i = 0; i < model.dof(); ++i) {
    joints.push_back(model.joint(i));
    bodies.push_back(model.body(i));
  }
  return ChainModel(model.name(), Vec3::Zero(), std::move(joints),
                    std::move(bodies));
}

}  // namespace

CheckResult check_screw_exp_series(unsigned seed, int count, double tol) {
  const auto t0 = Clock::now();
  Rng rng(seed);
  const JointKind kinds[] = {JointKind::revolute, JointKind::prismatic,
                             JointKind::helical};
  double worst = 0.0;
  for (int trial = 0; trial < count; ++trial) {
    const JointScrew s = random_screw(rng, kinds[trial % 3]);
    const double phi = rng.uniform(-3.0, 3.0);
    worst = std::max(
        worst, rel_err(homogeneous(screw_exp(s, phi)), series_exp(s, phi)));
  }
  return finish("screw exponential vs series",
                worst <= tol,
                metric("max rel err %.2e over %d screws", worst, count), t0);
}

CheckResult check_chain_identities(const ChainModel& model, unsigned seed,
                                   int count, double fd_tol) {
  const auto t0 = Clock::now();
  Rng rng(seed);
  const int n = model.dof();
  SystemWorkspace ws(model);
  SystemWorkspace shifted(model);
  const MatX identity = MatX::Identity(6 * n, 6 * n);

  double worst_ad = 0.0, worst_jdot = 0.0, worst_udot = 0.0;
  const double h = 1e-3;
  for (int trial = 0; trial < count; ++trial) {
    const MotionState s = random_state(rng, n, -2.0, 2.0);
    assemble_system(model, s.q, ws);
    system_velocity(ws, s.qd);
    system_jacobian_derivative(ws);

    worst_ad = std::max(worst_ad, rel_err(MatX(ws.A * (identity - ws.D)), identity));
    worst_jdot = std::max(worst_jdot, rel_err(MatX(ws.Adot * ws.X), ws.Jdot));

    // Udot = -A a U against central-4 finite differences of U along the
    // straight-line path q + t qd.
    MatX fd = MatX::Zero(6 * n, 6);
    const double w[4] = {-1.0, 8.0, -8.0, 1.0};
    const double dt[4] = {2.0 * h, h, -h, -2.0 * h};
    for (int k = 0; k < 4; ++k) {
      assemble_system(model, VecX(s.q + dt[k] * s.qd), shifted);
      fd += (w[k] / (12.0 * h)) * shifted.U;
    }
    worst_udot = std::max(worst_udot, rel_err(MatX(-ws.prod.Aa * ws.U), fd));
  }

  const bool pass = worst_ad <= 1e-10 && worst_jdot <= 1e-12 && worst_udot <= fd_tol;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "A(I-D)=I %.2e, Adot X=Jdot %.2e, Udot fd %.2e over %d states",
                worst_ad, worst_jdot, worst_udot, count);
  return finish("chain operator identities", pass, buf, t0);
}

CheckResult check_structural_properties(const ChainModel& model, unsigned seed,
                                        int count) {
  const auto t0 = Clock::now();
  Rng rng(seed);
  const int n = model.dof();
  IdynWorkspace iws(model);

  bool pd = true;
  double worst_sym = 0.0, worst_skew = 0.0, worst_cbar = 0.0, worst_zero = 0.0;
  for (int trial = 0; trial < count; ++trial) {
    const MotionState s = random_state(rng, n, -2.0, 2.0);
    evaluate_idyn(model, s, 2, iws);
    const JointSpaceMatrices& jsm = iws.jsm;

    worst_sym = std::max({worst_sym, rel_err(jsm.M, MatX(jsm.M.transpose())),
                          rel_err(iws.first.Mdot, MatX(iws.first.Mdot.transpose())),
                          rel_err(iws.second.Mddot, MatX(iws.second.Mddot.transpose()))});
    pd = pd && Eigen::LLT<MatX>(jsm.M).info() == Eigen::Success;

    const MatX skew_part = iws.first.Mdot - 2.0 * jsm.Cbar;
    worst_skew = std::max(worst_skew, rel_err(skew_part, MatX(-skew_part.transpose())));

    const VecX cqd = jsm.C * s.qd;
    worst_cbar = std::max(worst_cbar, rel_err(VecX(jsm.Cbar * s.qd), cqd));

    const SystemWorkspace& ws = iws.sys;
    worst_zero = std::max({worst_zero,
                           (ws.a * ws.X).norm() / (1.0 + s.qd.norm()),
                           (ws.b * ws.V).norm() / (1.0 + ws.V.norm())});
  }

  const bool pass = pd && worst_sym <= 1e-12 && worst_skew <= 1e-12 &&
                    worst_cbar <= 1e-12 && worst_zero <= 1e-14;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "PD %s, sym %.2e, Mdot-2Cbar skew %.2e, C qd=Cbar qd %.2e, "
                "aX/bV %.2e over %d states",
                pd ? "yes" : "NO", worst_sym, worst_skew, worst_cbar,
                worst_zero, count);
  return finish("structural properties", pass, buf, t0);
}

CheckResult check_dual_forms(const ChainModel& model, unsigned seed, int count,
                             double tol) {
  const auto t0 = Clock::now();
  Rng rng(seed);
  IdynWorkspace iws(model);
  double worst = 0.0;
  for (int trial = 0; trial < count; ++trial) {
    const MotionState s = random_state(rng, model.dof(), -2.0, 2.0);
    evaluate_idyn(model, s, 2, iws);
    worst = std::max({worst,
                      rel_err(c1sys_expanded(iws.sys), iws.first.C1sys),
                      rel_err(m2sys_expanded(iws.sys), iws.second.M2sys),
                      rel_err(c2sys_expanded(iws.sys, iws.jsm), iws.second.C2sys)});
  }
  return finish("expanded vs reuse operator forms", worst <= tol,
                metric("max rel err %.2e over %d states", worst, count), t0);
}

CheckResult check_fd_ladder(const ChainModel& model, const CosineTrajectory& traj,
                            int samples, double t_end, double tol) {
  const auto t0 = Clock::now();
  IdynWorkspace iws(model);
  IdynWorkspace scratch(model);
  const double h = 1e-4;
  const double w[4] = {-1.0, 8.0, -8.0, 1.0};
  const double dt[4] = {2.0 * h, h, -h, -2.0 * h};

  double worst_qd = 0.0, worst_qdd = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = t_end * static_cast<double>(k) / (samples - 1);
    evaluate_idyn(model, sample(traj, t, 4), 2, iws);

    VecX fd_q = VecX::Zero(model.dof());
    VecX fd_qd = VecX::Zero(model.dof());
    for (int j = 0; j < 4; ++j) {
      evaluate_idyn(model, sample(traj, t + dt[j], 3), 1, scratch);
      fd_q += (w[j] / (12.0 * h)) * scratch.forces.Q;
      fd_qd += (w[j] / (12.0 * h)) * scratch.first.Qdot;
    }
    worst_qd = std::max(worst_qd, rel_err(iws.first.Qdot, fd_q));
    worst_qdd = std::max(worst_qdd, rel_err(iws.second.Qddot, fd_qd));
  }

  const bool pass = worst_qd <= tol && worst_qdd <= tol;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "fd(Q)-Qdot %.2e, fd(Qdot)-Qddot %.2e over %d samples",
                worst_qd, worst_qdd, samples);
  return finish("finite-difference derivative ladder", pass, buf, t0);
}

CheckResult check_power_balance(const ChainModel& model,
                                const CosineTrajectory& traj, int samples,
                                double t_end, double tol) {
  const auto t0 = Clock::now();
  const ChainModel free_fall = without_gravity(model);
  IdynWorkspace iws(free_fall);
  IdynWorkspace scratch(free_fall);
  const double h = 1e-4;
  const double w[4] = {-1.0, 8.0, -8.0, 1.0};
  const double dt[4] = {2.0 * h, h, -h, -2.0 * h};

  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = t_end * static_cast<double>(k) / (samples - 1);
    const MotionState s = sample(traj, t, 2);
    evaluate_idyn(free_fall, s, 0, iws);
    const double power = s.qd.dot(iws.forces.Q);

    double kinetic_rate = 0.0;
    for (int j = 0; j < 4; ++j) {
      const MotionState sj = sample(traj, t + dt[j], 2);
      evaluate_idyn(free_fall, sj, 0, scratch);
      kinetic_rate += (w[j] / (12.0 * h)) * 0.5 * sj.qd.dot(scratch.jsm.M * sj.qd);
    }
    worst = std::max(worst, std::abs(power - kinetic_rate) /
                                (1.0 + std::abs(kinetic_rate)));
  }
  return finish("power balance without gravity", worst <= tol,
                metric("max rel err %.2e over %d samples", worst, samples), t0);
}

CheckResult check_two_r_oracle(unsigned seed, int count, double tol) {
  const auto t0 = Clock::now();
  const TwoRParams params;
  const ChainModel model = make_two_r_model(params);
  IdynWorkspace iws(model);
  Rng rng(seed);

  double worst = 0.0;
  for (int trial = 0; trial < count; ++trial) {
    const MotionState s = random_state(rng, 2, -2.0, 2.0);
    evaluate_idyn(model, s, 2, iws);
    const TwoRForces ref = two_r_reference(params, s);
    worst = std::max({worst, rel_err(iws.forces.Q, VecX(ref.tau)),
                      rel_err(iws.first.Qdot, VecX(ref.tau_dot)),
                      rel_err(iws.second.Qddot, VecX(ref.tau_ddot))});
  }
  return finish("two-link closed-form torques", worst <= tol,
                metric("max rel err %.2e over %d states", worst, count), t0);
}

std::vector<CheckResult> run_default_checks(const ChainModel& model,
                                            unsigned seed) {
  CosineTrajectory traj;
  const int n = model.dof();
  traj.offset = VecX::Zero(n);
  traj.amplitude = VecX::Constant(n, 0.5);
  traj.frequency = VecX::Zero(n);
  for (int i = 0; i < n; ++i) traj.frequency[i] = 0.6 + 0.1 * (i + 1);
  traj.phase = VecX::Zero(n);

  std::vector<CheckResult> results;
  results.push_back(check_screw_exp_series(seed, 100));
  results.push_back(check_chain_identities(model, seed + 1, 100));
  results.push_back(check_structural_properties(model, seed + 2, 100));
  results.push_back(check_dual_forms(model, seed + 3, 100));
  results.push_back(check_fd_ladder(model, traj, 50, 5.0));
  results.push_back(check_power_balance(model, traj, 50, 5.0));
  results.push_back(check_two_r_oracle(seed + 4, 100));
  return results;
}

}  // namespace screwdyn
