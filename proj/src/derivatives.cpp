#include "screwdyn/derivatives.hpp"

#include <stdexcept>

#include "blockops.hpp"
#include "guards.hpp"

namespace screwdyn {

using detail::check_dyn_stage;
using detail::check_size;
using detail::check_stage;

namespace {

/// External loads may be omitted entirely, but a derivative without the
/// level below it has no meaning.
void check_wrench(const SystemWorkspace& ws, const char* op, const VecX& W,
                  const VecX& Wdot, const VecX* Wddot = nullptr) {
  if (Wddot != nullptr && Wddot->size() != 0 && Wdot.size() == 0) {
    throw std::invalid_argument(std::string(op) +
                                ": Wddot given without Wdot");
  }
  if (Wdot.size() != 0 && W.size() == 0) {
    throw std::invalid_argument(std::string(op) + ": Wdot given without W");
  }
  if (W.size() != 0) check_size(W, 6 * ws.n, op, "W");
  if (Wdot.size() != 0) check_size(Wdot, 6 * ws.n, op, "Wdot");
  if (Wddot != nullptr && Wddot->size() != 0) {
    check_size(*Wddot, 6 * ws.n, op, "Wddot");
  }
}

}  // namespace

void first_order_matrices(SystemWorkspace& ws, const JointSpaceMatrices& jsm,
                          FirstOrderBundle& out) {
  check_stage(ws, 3, "first_order_matrices");
  check_dyn_stage(ws, 1, "first_order_matrices");
  auto& p = ws.prod;

  detail::mul_left_blockdiag(ws.Msys, p.Aad, p.MAad);
  detail::mul_blockdiag_t_blockdiag(ws.bdot, ws.Msys, p.bdtM);
  p.AaAa.noalias() = p.Aa * p.Aa;
  detail::mul_left_blockdiag(ws.Msys, p.AaAa, p.MAaAa);
  detail::mul_right_blockdiag(p.MAa, ws.a, p.MAaa);
  p.CsysAa.noalias() = jsm.Csys * p.Aa;
  p.AatCsys.noalias() = p.Aa.transpose() * jsm.Csys;

  out.M1sys = -p.MAa - p.MAa.transpose();
  out.Csysdot = p.MAaAa - p.MAaa - p.MAad - p.bdtM;
  out.C1sys = out.Csysdot - p.CsysAa - p.AatCsys;

  out.Mdot.noalias() = ws.J.transpose() * (out.M1sys * ws.J);
  out.Cdot.noalias() = ws.J.transpose() * (out.C1sys * ws.J);

  if (ws.dyn_stage < 2) ws.dyn_stage = 2;
}

void first_order_forces(const SystemWorkspace& ws, const JointSpaceMatrices& jsm,
                        const MotionState& s, FirstOrderBundle& out,
                        const VecX& W, const VecX& Wdot) {
  check_dyn_stage(ws, 2, "first_order_forces");
  check_size(s.qddd, ws.n, "first_order_forces", "qddd");
  check_wrench(ws, "first_order_forces", W, Wdot);

  out.Qgravdot.noalias() = ws.J.transpose() * (out.M1sys * ws.UG);
  if (W.size() == 0) {
    out.Qextdot = VecX::Zero(ws.n);
  } else {
    VecX wrate = -(ws.prod.Aa.transpose() * W);
    if (Wdot.size() != 0) wrate += Wdot;
    out.Qextdot.noalias() = ws.J.transpose() * wrate;
  }
  out.Qdot = jsm.M * s.qddd + (out.Mdot + jsm.C) * s.qdd + out.Cdot * s.qd +
             out.Qgravdot + out.Qextdot;
}

void second_order_matrices(SystemWorkspace& ws, const JointSpaceMatrices& jsm,
                           const FirstOrderBundle& first, SecondOrderBundle& out) {
  check_stage(ws, 4, "second_order_matrices");
  check_dyn_stage(ws, 2, "second_order_matrices");
  const int m = 6 * ws.n;
  auto& p = ws.prod;

  detail::mul_left_blockdiag(ws.Msys, p.Aadd, p.MAadd);
  detail::mul_blockdiag_t_blockdiag(ws.bddot, ws.Msys, p.bddtM);
  detail::mul_right_blockdiag(p.Aa, ws.a, p.Aaa);

  // M2sys = M1sys(qdd) + (MAaAa - MAaa) + (...)^T - M1sys Aa - (M1sys Aa)^T.
  MatX tmp(m, m);
  tmp.noalias() = first.M1sys * p.Aa;
  out.M2sys = -p.MAad - p.MAad.transpose() + p.MAaAa - p.MAaa - tmp;
  out.M2sys += p.MAaAa.transpose() - p.MAaa.transpose() - tmp.transpose();
  out.Mddot.noalias() = ws.J.transpose() * (out.M2sys * ws.J);

  // Csysddot = Csys(qddd, Vdd) + MAad Aa + 2 MAa Aad - 2 MAa AaAa
  //          + 2 MAaAa a - 3 MAa adot - MAaa a + MAaa Aa.
  out.Csysddot = -p.MAadd - p.bddtM;
  out.Csysddot.noalias() += p.MAad * p.Aa;
  out.Csysddot.noalias() += 2.0 * (p.MAa * p.Aad);
  out.Csysddot.noalias() -= 2.0 * (p.MAa * p.AaAa);
  detail::mul_right_blockdiag(p.MAaAa, ws.a, tmp);
  out.Csysddot += 2.0 * tmp;
  detail::mul_right_blockdiag(p.MAa, ws.adot, tmp);
  out.Csysddot -= 3.0 * tmp;
  detail::mul_right_blockdiag(p.MAaa, ws.a, tmp);
  out.Csysddot -= tmp;
  out.Csysddot.noalias() += p.MAaa * p.Aa;

  // C1sysdot = Csysddot - Csysdot Aa - (Aa)^T Csysdot - Csys Aad
  //          - (Aad)^T Csys + CsysAa Aa + (AaAa)^T Csys - CsysAa a
  //          - (Aaa)^T Csys.
  out.C1sysdot = out.Csysddot;
  out.C1sysdot.noalias() -= first.Csysdot * p.Aa;
  out.C1sysdot.noalias() -= p.Aa.transpose() * first.Csysdot;
  out.C1sysdot.noalias() -= jsm.Csys * p.Aad;
  out.C1sysdot.noalias() -= p.Aad.transpose() * jsm.Csys;
  out.C1sysdot.noalias() += p.CsysAa * p.Aa;
  out.C1sysdot.noalias() += p.AaAa.transpose() * jsm.Csys;
  detail::mul_right_blockdiag(p.CsysAa, ws.a, tmp);
  out.C1sysdot -= tmp;
  out.C1sysdot.noalias() -= p.Aaa.transpose() * jsm.Csys;

  out.C2sys = out.C1sysdot;
  out.C2sys.noalias() -= first.C1sys * p.Aa;
  out.C2sys.noalias() -= p.Aa.transpose() * first.C1sys;
  out.Cddot.noalias() = ws.J.transpose() * (out.C2sys * ws.J);

  if (ws.dyn_stage < 3) ws.dyn_stage = 3;
}

void second_order_forces(const SystemWorkspace& ws, const JointSpaceMatrices& jsm,
                         const FirstOrderBundle& first, const MotionState& s,
                         SecondOrderBundle& out, const VecX& W, const VecX& Wdot,
                         const VecX& Wddot) {
  check_dyn_stage(ws, 3, "second_order_forces");
  check_size(s.qdddd, ws.n, "second_order_forces", "qdddd");
  check_wrench(ws, "second_order_forces", W, Wdot, &Wddot);

  out.Qgravddot.noalias() = ws.J.transpose() * (out.M2sys * ws.UG);
  if (W.size() == 0) {
    out.Qextddot = VecX::Zero(ws.n);
  } else {
    const auto& p = ws.prod;
    VecX waccel = 2.0 * (p.AaAa.transpose() * W) - p.Aad.transpose() * W -
                  p.Aaa.transpose() * W;
    if (Wdot.size() != 0) waccel -= 2.0 * (p.Aa.transpose() * Wdot);
    if (Wddot.size() != 0) waccel += Wddot;
    out.Qextddot.noalias() = ws.J.transpose() * waccel;
  }
  out.Qddot = jsm.M * s.qdddd + (2.0 * first.Mdot + jsm.C) * s.qddd +
              (out.Mddot + 2.0 * first.Cdot) * s.qdd + out.Cddot * s.qd +
              out.Qgravddot + out.Qextddot;
}

void evaluate_idyn(const ChainModel& model, const MotionState& s, int order,
                   IdynWorkspace& iws, const VecX& W, const VecX& Wdot,
                   const VecX& Wddot) {
  if (order < 0 || order > 2) {
    throw std::invalid_argument("evaluate_idyn: order must be 0, 1, or 2");
  }
  SystemWorkspace& ws = iws.sys;
  assemble_system(model, s.q, ws);
  system_velocity(ws, s.qd);
  system_acceleration(ws, s.qdd);
  if (order == 2) system_jerk(ws, s.qddd);

  joint_space_matrices(ws, iws.jsm);
  iws.forces.Qgrav = generalized_gravity(ws);
  iws.forces.Qext =
      W.size() == 0 ? VecX(VecX::Zero(ws.n)) : generalized_external(ws, W);
  iws.forces.Q = iws.jsm.M * s.qdd + iws.jsm.C * s.qd + iws.forces.Qgrav +
                 iws.forces.Qext;
  if (order == 0) return;

  first_order_matrices(ws, iws.jsm, iws.first);
  first_order_forces(ws, iws.jsm, s, iws.first, W, Wdot);
  if (order == 1) return;

  second_order_matrices(ws, iws.jsm, iws.first, iws.second);
  second_order_forces(ws, iws.jsm, iws.first, s, iws.second, W, Wdot, Wddot);
}

MatX c1sys_expanded(const SystemWorkspace& ws) {
  check_dyn_stage(ws, 2, "c1sys_expanded");
  const auto& p = ws.prod;
  return -p.MAad - p.bdtM + p.btM * p.Aa + p.Aa.transpose() * p.btM +
         p.Aa.transpose() * p.MAa + 2.0 * p.MAaAa - p.MAaa;
}

MatX m2sys_expanded(const SystemWorkspace& ws) {
  check_dyn_stage(ws, 2, "m2sys_expanded");
  const auto& p = ws.prod;
  const MatX cross = p.Aa.transpose() * p.MAa;
  return -p.MAad - p.MAad.transpose() + 2.0 * p.MAaAa +
         2.0 * p.MAaAa.transpose() + 2.0 * cross - p.MAaa -
         p.MAaa.transpose();
}

MatX c2sys_expanded(const SystemWorkspace& ws, const JointSpaceMatrices& jsm) {
  check_dyn_stage(ws, 3, "c2sys_expanded");
  const auto& p = ws.prod;
  const MatX aat = p.Aa.transpose();
  MatX out = -p.MAadd - p.bddtM;
  out.noalias() += 2.0 * (p.bdtM * p.Aa);
  out.noalias() += 2.0 * (aat * p.bdtM);
  out.noalias() += 3.0 * (p.MAad * p.Aa);
  out.noalias() += 2.0 * (p.MAa * p.Aad);
  out.noalias() += 2.0 * (aat * p.MAad);
  out.noalias() -= jsm.Csys * p.Aad;
  out.noalias() -= p.Aad.transpose() * jsm.Csys;
  out.noalias() += 2.0 * (jsm.Csys * p.AaAa);
  out.noalias() += 2.0 * (aat * p.CsysAa);
  out.noalias() += 2.0 * (p.AaAa.transpose() * jsm.Csys);
  out.noalias() -= 4.0 * (p.MAa * p.AaAa);
  out.noalias() -= 2.0 * (aat * p.MAaAa);
  out.noalias() += 2.0 * (p.MAaa * p.Aa);
  out.noalias() += 2.0 * (aat * p.MAaa);
  out.noalias() += 2.0 * (p.MAa * p.Aaa);
  out -= 3.0 * (p.MAa * ws.adot);
  out -= p.MAaa * ws.a;
  out.noalias() += p.MAaa * p.Aa;
  out.noalias() -= jsm.Csys * p.Aaa;
  out.noalias() -= p.Aaa.transpose() * jsm.Csys;
  return out;
}

}  // namespace screwdyn
