#include "screwdyn/dynamics.hpp"

#include <stdexcept>

#include "blockops.hpp"
#include "guards.hpp"

namespace screwdyn {

using detail::check_size;
using detail::check_stage;

void joint_space_matrices(SystemWorkspace& ws, JointSpaceMatrices& out) {
  check_stage(ws, 2, "joint_space_matrices");
  const int m = 6 * ws.n;
  auto& p = ws.prod;

  detail::mul_left_blockdiag(ws.Msys, p.Aa, p.MAa);
  detail::mul_blockdiag_t_blockdiag(ws.b, ws.Msys, p.btM);
  detail::mul_blockdiag_blockdiag(ws.Msys, ws.b, p.Mb);
  out.Csys = -p.MAa - p.btM;

  MatX MsysJ(m, ws.n);
  detail::mul_left_blockdiag(ws.Msys, ws.J, MsysJ);
  out.M.noalias() = ws.J.transpose() * MsysJ;
  out.C.noalias() = ws.J.transpose() * (out.Csys * ws.J);

  MatX MbJ(m, ws.n);
  detail::mul_left_blockdiag(p.Mb, ws.J, MbJ);
  out.Cbar.noalias() = out.C + ws.J.transpose() * MbJ;

  if (ws.dyn_stage < 1) ws.dyn_stage = 1;
}

VecX generalized_gravity(const SystemWorkspace& ws) {
  check_stage(ws, 1, "generalized_gravity");
  return ws.J.transpose() * (ws.Msys * ws.UG);
}

VecX generalized_external(const SystemWorkspace& ws, const VecX& W) {
  check_stage(ws, 1, "generalized_external");
  check_size(W, 6 * ws.n, "generalized_external", "W");
  return ws.J.transpose() * W;
}

GeneralizedForces inverse_dynamics(const ChainModel& model, const MotionState& s,
                                   SystemWorkspace& ws, JointSpaceMatrices& jsm,
                                   const VecX& W) {
  assemble_system(model, s.q, ws);
  system_velocity(ws, s.qd);
  system_acceleration(ws, s.qdd);
  joint_space_matrices(ws, jsm);

  GeneralizedForces out;
  out.Qgrav = generalized_gravity(ws);
  out.Qext = W.size() == 0 ? VecX(VecX::Zero(ws.n)) : generalized_external(ws, W);
  out.Q = jsm.M * s.qdd + jsm.C * s.qd + out.Qgrav + out.Qext;
  return out;
}

GeneralizedForces inverse_dynamics(const ChainModel& model, const MotionState& s,
                                   SystemWorkspace& ws, const VecX& W) {
  JointSpaceMatrices jsm;
  return inverse_dynamics(model, s, ws, jsm, W);
}

}  // namespace screwdyn
