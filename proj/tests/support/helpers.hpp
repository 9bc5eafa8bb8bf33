#pragma once

#include "screwdyn/checks.hpp"
#include "screwdyn/kinematics.hpp"
#include "screwdyn/liegroup.hpp"

namespace screwdyn::testsupport {

inline Pose random_pose(Rng& rng) {
  Pose c;
  c.R = rot_exp(rng.unit_vec3(), rng.uniform(-3.0, 3.0));
  c.r = rng.vec3(-1.0, 1.0);
  return c;
}

inline JointScrew random_screw(Rng& rng, JointKind kind) {
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

inline MotionState random_state(Rng& rng, int n, double lo = -2.0, double hi = 2.0) {
  MotionState s;
  s.q = rng.vector(n, lo, hi);
  s.qd = rng.vector(n, lo, hi);
  s.qdd = rng.vector(n, lo, hi);
  s.qddd = rng.vector(n, lo, hi);
  s.qdddd = rng.vector(n, lo, hi);
  return s;
}

/// Taylor path through a state: exact q(t)..qdddd(t) a time t away from s.
inline MotionState poly_state(const MotionState& s, double t) {
  MotionState out = s;
  out.q = s.q + t * s.qd + (t * t / 2.0) * s.qdd + (t * t * t / 6.0) * s.qddd +
          (t * t * t * t / 24.0) * s.qdddd;
  out.qd = s.qd + t * s.qdd + (t * t / 2.0) * s.qddd + (t * t * t / 6.0) * s.qdddd;
  out.qdd = s.qdd + t * s.qddd + (t * t / 2.0) * s.qdddd;
  out.qddd = s.qddd + t * s.qdddd;
  out.qdddd = s.qdddd;
  return out;
}

}  // namespace screwdyn::testsupport
