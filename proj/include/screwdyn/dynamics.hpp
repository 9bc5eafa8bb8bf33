#pragma once

#include "screwdyn/kinematics.hpp"

namespace screwdyn {

/// Joint-space operators of the equations of motion
///   Q = M(q) qdd + C(q, qd) qd + Qgrav(q) + Qext.
struct JointSpaceMatrices {
  MatX Csys;  // 6n x 6n system convective operator
  MatX M;     // n x n generalized inertia, J^T Msys J
  MatX C;     // n x n convective matrix, J^T Csys J
  MatX Cbar;  // alternative convective matrix: Cbar qd = C qd, and
              // Mdot - 2 Cbar is skew symmetric
};

struct GeneralizedForces {
  VecX Q;      // total generalized force
  VecX Qgrav;  // gravity part
  VecX Qext;   // external-wrench part
};

/// Csys = -(Msys A a + b^T Msys) and its joint-space projections
/// M = J^T Msys J, C = J^T Csys J, Cbar = C + J^T Msys b J.
/// Requires system_velocity; fills ws.prod.{MAa, btM, Mb}.
void joint_space_matrices(SystemWorkspace& ws, JointSpaceMatrices& out);

/// Gravity load Qgrav = J^T Msys U G. Requires assemble_system.
VecX generalized_gravity(const SystemWorkspace& ws);

/// Load of stacked per-body wrenches, Qext = J^T W with W of size 6n.
/// Requires assemble_system.
VecX generalized_external(const SystemWorkspace& ws, const VecX& W);

/// Runs the kinematic sweep through the acceleration level and evaluates
/// Q = M qdd + C qd + Qgrav + Qext. An empty W means no external load.
GeneralizedForces inverse_dynamics(const ChainModel& model, const MotionState& s,
                                   SystemWorkspace& ws, JointSpaceMatrices& jsm,
                                   const VecX& W = VecX());

/// Convenience overload that keeps the joint-space matrices internal.
GeneralizedForces inverse_dynamics(const ChainModel& model, const MotionState& s,
                                   SystemWorkspace& ws, const VecX& W = VecX());

}  // namespace screwdyn
