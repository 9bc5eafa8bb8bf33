#pragma once

#include <vector>

#include "screwdyn/model.hpp"

namespace screwdyn {

/// One trajectory point: joint positions and time derivatives up to the
/// snap. Orders an evaluation does not need may be left empty.
struct MotionState {
  VecX q, qd, qdd, qddd, qdddd;

  int dof() const { return static_cast<int>(q.size()); }

  static MotionState zero(int n, int orders = 4);
};

/// Per-evaluation scratch for one chain, sized once at construction.
///
/// The stacked 6n-dimensional quantities treat the chain as one system:
/// row block i belongs to body i. A carries the relative adjoints
/// Ad(C_{i,j}) below its identity diagonal, D the subdiagonal ones, X the
/// joint screws, J = A X maps joint rates to body twists, and U stacks
/// Ad(C_i)^{-1}. a, b and their dot/ddot variants are the block-diagonal
/// operators a(qd) = diag(qd_i ad(X_i)) and b(V) = diag(ad(V_i)) evaluated
/// at successive derivative orders.
///
/// A workspace is only valid with the model it was built from. Concurrent
/// evaluation is safe when each thread owns its own workspace; the model
/// itself is immutable.
struct SystemWorkspace {
  explicit SystemWorkspace(const ChainModel& model);

  int n = 0;

  /// How far this workspace has been populated:
  /// 1 after assemble_system (q), 2 after system_velocity (qd),
  /// 3 after system_acceleration (qdd), 4 after system_jerk (qddd).
  int stage = 0;

  /// How far the force-level operators are populated: 1 after
  /// joint_space_matrices, 2 after first_order_matrices, 3 after
  /// second_order_matrices. Kinematic updates lower it to whatever level
  /// their inputs leave valid.
  int dyn_stage = 0;

  // Model constants.
  MatX X;                 // 6n x n block-diagonal screw coordinates
  MatX Msys;              // 6n x 6n block-diagonal spatial inertias
  std::vector<Mat6> adX;  // ad of each joint screw
  Vec6 G;                 // minus the gravity six-vector (0; 0g)

  // Configuration level (assemble_system).
  std::vector<Pose> pose;      // C_i, body i in the base frame
  std::vector<Pose> rel_pose;  // rel_pose[i] = C_{i,i-1} for i >= 1
  MatX A, D, J, U;
  VecX UG;  // U G, the base gravity six-vector seen by each body

  // Velocity level (system_velocity).
  VecX V;
  MatX a, b;

  // Acceleration level (system_acceleration).
  VecX Vd;
  MatX adot, bdot;

  // Jerk level (system_jerk).
  VecX Vdd;
  MatX addot, bddot;

  // Jacobian/operator time derivatives (system_jacobian_derivative).
  MatX Jdot, Adot;

  /// Recurring operator products, filled lazily by the dynamics and
  /// derivative stages so each is computed once per state.
  struct Products {
    MatX Aa, Aad, Aadd;        // A a, A adot, A addot
    MatX MAa, MAad, MAadd;     // Msys A a, ...
    MatX btM, bdtM, bddtM;     // b^T Msys, ...
    MatX Mb;                   // Msys b
    MatX AaAa, Aaa;            // (A a)^2, A a a
    MatX MAaAa, MAaa;          // Msys (A a)^2, Msys A a a
    MatX CsysAa, AatCsys;      // Csys A a, (A a)^T Csys
  } prod;

  Twist body_twist(int i) const { return Twist::from(V.segment<6>(6 * i)); }
};

/// Product-of-exponentials sweep: fills pose (C_i) and rel_pose
/// (C_{i,i-1}); the relative poses compose as C_{i,j} = C_i^{-1} C_j.
void forward_kinematics(const ChainModel& model, const VecX& q, SystemWorkspace& ws);

/// Runs forward_kinematics and builds the configuration-level system
/// operators A, D, J = A X, U, and U G. A is assembled column by column
/// from the subdiagonal adjoints: Ad(C_{i,j}) = Ad(C_{i,i-1}) Ad(C_{i-1,j}).
void assemble_system(const ChainModel& model, const VecX& q, SystemWorkspace& ws);

/// V = J qd, plus the block-diagonal operators a(qd) and b(V) and the
/// shared product A a.
void system_velocity(SystemWorkspace& ws, const VecX& qd);

/// Vd = J qdd - A a V, plus adot = a(qdd), bdot = b(Vd), A adot.
void system_acceleration(SystemWorkspace& ws, const VecX& qdd);

/// Vdd = J qddd + 2 Jdot qdd + Jddot qd, evaluated in the equivalent
/// product form Vdd = J qddd - 2 A a Vd - A a (a V) - A adot V; also
/// addot = a(qddd), bddot = b(Vdd), A addot.
void system_jerk(SystemWorkspace& ws, const VecX& qddd);

/// Jdot = -A a J and Adot = A a - A a A. Requires velocity level.
void system_jacobian_derivative(SystemWorkspace& ws);

}  // namespace screwdyn
