#pragma once

#include "screwdyn/types.hpp"

namespace screwdyn {

// Six-vectors are stacked (angular; linear) throughout: a twist is
// (omega; v), a wrench is (torque; force), a joint screw is (xi; eta).

/// Cross-product matrix: skew(u) * w == u.cross(w).
Mat3 skew(const Vec3& u);

/// Rigid-body pose, acting on points as p -> R p + r.
struct Pose {
  Mat3 R = Mat3::Identity();
  Vec3 r = Vec3::Zero();

  static Pose identity() { return Pose{}; }
  Vec3 apply(const Vec3& p) const { return R * p + r; }
};

/// Frame composition: (a * b).apply(p) == a.apply(b.apply(p)).
Pose operator*(const Pose& a, const Pose& b);

/// Exact inverse (R^T, -R^T r); no matrix inversion involved.
Pose inverse(const Pose& c);

/// Rotation by angle phi about the unit axis e (Euler-Rodrigues form):
///   exp(phi e~) = I + sin(phi) e~ + (1 - cos(phi)) e~^2
/// Throws std::invalid_argument if |e| differs from 1 by more than 1e-9.
Mat3 rot_exp(const Vec3& e, double phi);

enum class JointKind { revolute, prismatic, helical };

const char* to_string(JointKind kind);

/// Joint screw coordinates in the frame of the body the joint drives.
/// Revolute/helical: xi is the unit axis direction and eta = x.cross(xi)
/// (+ pitch * xi for helical), with x a point on the axis. Prismatic:
/// xi = 0 and eta is the unit travel direction.
struct JointScrew {
  JointKind kind = JointKind::revolute;
  Vec3 xi = Vec3::UnitZ();
  Vec3 eta = Vec3::Zero();
  double pitch = 0.0;

  Vec6 coords() const {
    Vec6 x;
    x << xi, eta;
    return x;
  }
};

/// Displacement generated by moving the joint by phi (rad or m).
/// Finite-pitch joints rotate about the axis and advance pitch * phi along
/// it; prismatic joints translate by phi * eta.
Pose screw_exp(const JointScrew& s, double phi);

/// Adjoint of a pose: Ad(C) = [[R, 0], [r~ R, R]]. Transforms twists
/// between frames and satisfies Ad(a * b) = Ad(a) Ad(b).
Mat6 adjoint(const Pose& c);

/// Lie bracket operator on twists: ad(x) y = [x, y], written
///   ad(x) = [[w~, 0], [u~, w~]]  for x = (w; u).
Mat6 ad(const Vec6& x);

/// Body-frame twist (angular velocity; linear velocity).
struct Twist {
  Vec3 omega = Vec3::Zero();
  Vec3 v = Vec3::Zero();

  Vec6 vec() const {
    Vec6 x;
    x << omega, v;
    return x;
  }
  static Twist from(const Vec6& x) { return Twist{x.head<3>(), x.tail<3>()}; }
};

/// Body-frame wrench (torque; force).
struct Wrench {
  Vec3 torque = Vec3::Zero();
  Vec3 force = Vec3::Zero();

  Vec6 vec() const {
    Vec6 x;
    x << torque, force;
    return x;
  }
  static Wrench from(const Vec6& x) { return Wrench{x.head<3>(), x.tail<3>()}; }
};

}  // namespace screwdyn
