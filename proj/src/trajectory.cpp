#include "screwdyn/trajectory.hpp"

#include <cmath>
#include <stdexcept>

#include "guards.hpp"

namespace screwdyn {

CosineTrajectory CosineTrajectory::constant(const VecX& q) {
  CosineTrajectory traj;
  traj.offset = q;
  traj.amplitude = VecX::Zero(q.size());
  traj.frequency = VecX::Zero(q.size());
  traj.phase = VecX::Zero(q.size());
  return traj;
}

MotionState sample(const CosineTrajectory& traj, double t, int order) {
  if (order < 0 || order > 4)
    throw std::invalid_argument("sample: order must be in 0..4, got " +
                                std::to_string(order));
  const int n = traj.dof();
  detail::check_size(traj.offset, n, "sample", "offset");
  detail::check_size(traj.amplitude, n, "sample", "amplitude");
  detail::check_size(traj.frequency, n, "sample", "frequency");
  detail::check_size(traj.phase, n, "sample", "phase");
  if (!std::isfinite(t)) throw std::invalid_argument("sample: t is not finite");

  MotionState s = MotionState::zero(n, order);
  for (int i = 0; i < n; ++i) {
    const double A = traj.amplitude[i];
    const double w = traj.frequency[i];
    const double th = w * t + traj.phase[i];
    const double c = std::cos(th);
    const double sn = std::sin(th);
    s.q[i] = traj.offset[i] + A * c;
    // Each derivative gains a factor w and alternates through
    // -sin, -cos, sin, cos.
    if (order >= 1) s.qd[i] = -A * w * sn;
    if (order >= 2) s.qdd[i] = -A * w * w * c;
    if (order >= 3) s.qddd[i] = A * w * w * w * sn;
    if (order >= 4) s.qdddd[i] = A * w * w * w * w * c;
  }
  return s;
}

}  // namespace screwdyn
