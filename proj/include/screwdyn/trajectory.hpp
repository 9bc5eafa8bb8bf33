#pragma once

#include "screwdyn/kinematics.hpp"
#include "screwdyn/types.hpp"

namespace screwdyn {

/// Per-joint cosine motion q_i(t) = offset_i + amplitude_i *
/// cos(frequency_i t + phase_i). Derivatives of every order are available
/// in closed form, which makes these the reference trajectories for the
/// finite-difference suites.
struct CosineTrajectory {
  VecX offset, amplitude, frequency, phase;

  int dof() const { return static_cast<int>(offset.size()); }

  /// All joints at rest at the given positions.
  static CosineTrajectory constant(const VecX& q);
};

/// State at time t with exact analytic derivatives 1..order filled in;
/// higher orders are left empty. order must lie in 0..4 and the four
/// parameter vectors must be finite and of equal length.
MotionState sample(const CosineTrajectory& traj, double t, int order);

}  // namespace screwdyn
