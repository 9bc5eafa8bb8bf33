#include "screwdyn/kinematics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "blockops.hpp"
#include "guards.hpp"

namespace screwdyn {

using detail::check_size;
using detail::check_stage;

MotionState MotionState::zero(int n, int orders) {
  MotionState s;
  s.q = VecX::Zero(n);
  if (orders >= 1) s.qd = VecX::Zero(n);
  if (orders >= 2) s.qdd = VecX::Zero(n);
  if (orders >= 3) s.qddd = VecX::Zero(n);
  if (orders >= 4) s.qdddd = VecX::Zero(n);
  return s;
}

SystemWorkspace::SystemWorkspace(const ChainModel& model) : n(model.dof()) {
  const int m = 6 * n;
  X = MatX::Zero(m, n);
  Msys = MatX::Zero(m, m);
  adX.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const JointScrew& s = model.joint(i).screw;
    X.block<6, 1>(6 * i, i) = s.coords();
    adX[static_cast<std::size_t>(i)] = ad(s.coords());
    Msys.block<6, 6>(6 * i, 6 * i) = spatial_inertia(model.body(i));
  }
  G.setZero();
  G.tail<3>() = -model.gravity();

  pose.resize(static_cast<std::size_t>(n));
  rel_pose.resize(static_cast<std::size_t>(n));
  A = MatX::Zero(m, m);
  D = MatX::Zero(m, m);
  J = MatX::Zero(m, n);
  U = MatX::Zero(m, 6);
  UG = VecX::Zero(m);

  V = VecX::Zero(m);
  Vd = VecX::Zero(m);
  Vdd = VecX::Zero(m);
  a = MatX::Zero(m, m);
  b = MatX::Zero(m, m);
  adot = MatX::Zero(m, m);
  bdot = MatX::Zero(m, m);
  addot = MatX::Zero(m, m);
  bddot = MatX::Zero(m, m);
  Jdot = MatX::Zero(m, n);
  Adot = MatX::Zero(m, m);

  for (MatX* p : {&prod.Aa, &prod.Aad, &prod.Aadd, &prod.MAa, &prod.MAad,
                  &prod.MAadd, &prod.btM, &prod.bdtM, &prod.bddtM, &prod.Mb,
                  &prod.AaAa, &prod.Aaa, &prod.MAaAa, &prod.MAaa, &prod.CsysAa,
                  &prod.AatCsys}) {
    *p = MatX::Zero(m, m);
  }
}

void forward_kinematics(const ChainModel& model, const VecX& q, SystemWorkspace& ws) {
  check_size(q, ws.n, "forward_kinematics", "q");
  for (int i = 0; i < ws.n; ++i) {
    // Local displacement of body i relative to its predecessor.
    const Pose local = model.joint(i).ref * screw_exp(model.joint(i).screw, q[i]);
    ws.pose[static_cast<std::size_t>(i)] =
        (i == 0) ? local : ws.pose[static_cast<std::size_t>(i - 1)] * local;
    ws.rel_pose[static_cast<std::size_t>(i)] = inverse(local);
  }
  ws.stage = 0;  // operators are stale until assemble_system finishes
}

void assemble_system(const ChainModel& model, const VecX& q, SystemWorkspace& ws) {
  forward_kinematics(model, q, ws);
  const int n = ws.n;

  ws.A.setZero();
  ws.D.setZero();
  for (int i = 0; i < n; ++i) {
    ws.A.block<6, 6>(6 * i, 6 * i).setIdentity();
    if (i > 0) {
      ws.D.block<6, 6>(6 * i, 6 * (i - 1)) =
          adjoint(ws.rel_pose[static_cast<std::size_t>(i)]);
    }
  }
  // Column sweep: Ad(C_{i,j}) = Ad(C_{i,i-1}) Ad(C_{i-1,j}).
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      ws.A.block<6, 6>(6 * i, 6 * j).noalias() =
          ws.D.block<6, 6>(6 * i, 6 * (i - 1)) * ws.A.block<6, 6>(6 * (i - 1), 6 * j);
    }
  }

  ws.J.setZero();
  for (int j = 0; j < n; ++j) {
    const Vec6 xj = ws.X.block<6, 1>(6 * j, j);
    for (int i = j; i < n; ++i) {
      ws.J.block<6, 1>(6 * i, j).noalias() = ws.A.block<6, 6>(6 * i, 6 * j) * xj;
    }
  }

  for (int i = 0; i < n; ++i) {
    ws.U.middleRows<6>(6 * i) = adjoint(inverse(ws.pose[static_cast<std::size_t>(i)]));
  }
  ws.UG.noalias() = ws.U * ws.G;

  ws.stage = 1;
  ws.dyn_stage = 0;
}

void system_velocity(SystemWorkspace& ws, const VecX& qd) {
  check_stage(ws, 1, "system_velocity");
  check_size(qd, ws.n, "system_velocity", "qd");

  ws.V.noalias() = ws.J * qd;
  for (int i = 0; i < ws.n; ++i) {
    ws.a.block<6, 6>(6 * i, 6 * i) = qd[i] * ws.adX[static_cast<std::size_t>(i)];
    ws.b.block<6, 6>(6 * i, 6 * i) = ad(ws.V.segment<6>(6 * i));
  }
  detail::mul_right_blockdiag(ws.A, ws.a, ws.prod.Aa);

  ws.stage = 2;
  ws.dyn_stage = 0;
}

void system_acceleration(SystemWorkspace& ws, const VecX& qdd) {
  check_stage(ws, 2, "system_acceleration");
  check_size(qdd, ws.n, "system_acceleration", "qdd");

  ws.Vd.noalias() = ws.J * qdd;
  ws.Vd.noalias() -= ws.prod.Aa * ws.V;
  for (int i = 0; i < ws.n; ++i) {
    ws.adot.block<6, 6>(6 * i, 6 * i) = qdd[i] * ws.adX[static_cast<std::size_t>(i)];
    ws.bdot.block<6, 6>(6 * i, 6 * i) = ad(ws.Vd.segment<6>(6 * i));
  }
  detail::mul_right_blockdiag(ws.A, ws.adot, ws.prod.Aad);

  ws.stage = 3;
  // Csys only depends on the velocity level, so a populated stage 1 survives.
  ws.dyn_stage = std::min(ws.dyn_stage, 1);
}

void system_jerk(SystemWorkspace& ws, const VecX& qddd) {
  check_stage(ws, 3, "system_jerk");
  check_size(qddd, ws.n, "system_jerk", "qddd");

  ws.Vdd.noalias() = ws.J * qddd;
  ws.Vdd.noalias() -= 2.0 * (ws.prod.Aa * ws.Vd);
  ws.Vdd.noalias() -= ws.prod.Aa * (ws.a * ws.V);
  ws.Vdd.noalias() -= ws.prod.Aad * ws.V;
  for (int i = 0; i < ws.n; ++i) {
    ws.addot.block<6, 6>(6 * i, 6 * i) = qddd[i] * ws.adX[static_cast<std::size_t>(i)];
    ws.bddot.block<6, 6>(6 * i, 6 * i) = ad(ws.Vdd.segment<6>(6 * i));
  }
  detail::mul_right_blockdiag(ws.A, ws.addot, ws.prod.Aadd);

  ws.stage = 4;
  ws.dyn_stage = std::min(ws.dyn_stage, 2);
}

void system_jacobian_derivative(SystemWorkspace& ws) {
  check_stage(ws, 2, "system_jacobian_derivative");
  ws.Jdot.noalias() = -ws.prod.Aa * ws.J;
  ws.Adot = ws.prod.Aa;
  ws.Adot.noalias() -= ws.prod.Aa * ws.A;
}

}  // namespace screwdyn
