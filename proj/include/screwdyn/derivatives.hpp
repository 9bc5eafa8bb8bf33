#pragma once

#include "screwdyn/dynamics.hpp"

namespace screwdyn {

/// First time derivatives of the joint-space operators and forces,
///   Qdot = M qddd + (Mdot + C) qdd + Cdot qd + Qgravdot + Qextdot.
struct FirstOrderBundle {
  MatX M1sys;    // -(Msys A a) - transpose; Mdot = J^T M1sys J
  MatX Csysdot;  // rate of the system convective operator
  MatX C1sys;    // Csysdot - Csys A a - (A a)^T Csys; Cdot = J^T C1sys J
  MatX Mdot;     // n x n
  MatX Cdot;     // n x n
  VecX Qgravdot, Qextdot, Qdot;
};

/// Second time derivatives, assembled on top of a FirstOrderBundle:
///   Qddot = M qdddd + (2 Mdot + C) qddd + (Mddot + 2 Cdot) qdd
///         + Cddot qd + Qgravddot + Qextddot.
struct SecondOrderBundle {
  MatX M2sys;     // Mddot = J^T M2sys J
  MatX Csysddot;  // second rate of the system convective operator
  MatX C1sysdot;  // rate of C1sys
  MatX C2sys;     // C1sysdot - C1sys A a - (A a)^T C1sys; Cddot = J^T C2sys J
  MatX Mddot;     // n x n
  MatX Cddot;     // n x n
  VecX Qgravddot, Qextddot, Qddot;
};

/// M1sys, Csysdot, C1sys and their joint-space projections Mdot, Cdot.
/// Requires system_acceleration (for a(qdd) and b(Vd)) and
/// joint_space_matrices; fills ws.prod.{MAad, bdtM, AaAa, MAaAa, MAaa,
/// CsysAa, AatCsys}.
void first_order_matrices(SystemWorkspace& ws, const JointSpaceMatrices& jsm,
                          FirstOrderBundle& out);

/// Qgravdot = J^T M1sys U G, Qextdot = J^T (Wdot - (A a)^T W), and the
/// assembled Qdot. Requires first_order_matrices and qddd in the state.
/// W and Wdot may be empty (no load, or a constant load).
void first_order_forces(const SystemWorkspace& ws, const JointSpaceMatrices& jsm,
                        const MotionState& s, FirstOrderBundle& out,
                        const VecX& W = VecX(), const VecX& Wdot = VecX());

/// M2sys, Csysddot, C1sysdot, C2sys and the projections Mddot, Cddot.
/// Requires system_jerk (for a(qddd) and b(Vdd)) and first_order_matrices;
/// fills ws.prod.{MAadd, bddtM, Aaa}.
void second_order_matrices(SystemWorkspace& ws, const JointSpaceMatrices& jsm,
                           const FirstOrderBundle& first, SecondOrderBundle& out);

/// Qgravddot = J^T M2sys U G,
/// Qextddot = J^T (Wddot - 2 (A a)^T Wdot
///                 + (2 (A a A a)^T - (A adot)^T - (A a a)^T) W),
/// and the assembled Qddot into the bundle second_order_matrices filled.
/// Requires second_order_matrices and qdddd in the state.
void second_order_forces(const SystemWorkspace& ws, const JointSpaceMatrices& jsm,
                         const FirstOrderBundle& first, const MotionState& s,
                         SecondOrderBundle& out, const VecX& W = VecX(),
                         const VecX& Wdot = VecX(), const VecX& Wddot = VecX());

/// Everything evaluate_idyn needs for one model, allocated once and reused
/// across samples. One instance per thread.
struct IdynWorkspace {
  SystemWorkspace sys;
  JointSpaceMatrices jsm;
  GeneralizedForces forces;
  FirstOrderBundle first;
  SecondOrderBundle second;

  explicit IdynWorkspace(const ChainModel& model) : sys(model) {}
};

/// Inverse dynamics through the requested derivative order at one motion
/// state: fills iws.forces (order 0), iws.first (order >= 1), iws.second
/// (order 2). The state must carry q through the (order + 2)-th derivative.
/// W, Wdot, Wddot stack per-body external wrenches; empty means zero.
void evaluate_idyn(const ChainModel& model, const MotionState& s, int order,
                   IdynWorkspace& iws, const VecX& W = VecX(),
                   const VecX& Wdot = VecX(), const VecX& Wddot = VecX());

/// Alternative arrangements of the derivative operators, written exactly as
/// the fully expanded term lists. The production code uses the reuse forms
/// above; agreement of both arrangements over random states is one of the
/// strongest available correctness checks, so these live in the library for
/// the verification suites. Each requires the corresponding *_matrices call
/// to have populated the shared products.
MatX c1sys_expanded(const SystemWorkspace& ws);
MatX m2sys_expanded(const SystemWorkspace& ws);
MatX c2sys_expanded(const SystemWorkspace& ws, const JointSpaceMatrices& jsm);

}  // namespace screwdyn
