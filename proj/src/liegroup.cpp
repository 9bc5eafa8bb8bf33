#include "screwdyn/liegroup.hpp"

#include <cmath>
#include <stdexcept>

namespace screwdyn {

Mat3 skew(const Vec3& u) {
  Mat3 s;
  s << 0.0, -u.z(), u.y(),
      u.z(), 0.0, -u.x(),
      -u.y(), u.x(), 0.0;
  return s;
}

Pose operator*(const Pose& a, const Pose& b) {
  return Pose{a.R * b.R, a.R * b.r + a.r};
}

Pose inverse(const Pose& c) {
  Pose inv;
  inv.R = c.R.transpose();
  inv.r = -(inv.R * c.r);
  return inv;
}

Mat3 rot_exp(const Vec3& e, double phi) {
  const double norm = e.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument("rot_exp: axis must be a unit vector (|e| = " +
                                std::to_string(norm) + ")");
  }
  const Mat3 k = skew(e / norm);
  return Mat3::Identity() + std::sin(phi) * k + (1.0 - std::cos(phi)) * (k * k);
}

const char* to_string(JointKind kind) {
  switch (kind) {
    case JointKind::revolute:
      return "revolute";
    case JointKind::prismatic:
      return "prismatic";
    case JointKind::helical:
      return "helical";
  }
  return "unknown";
}

Pose screw_exp(const JointScrew& s, double phi) {
  Pose c;
  if (s.kind == JointKind::prismatic) {
    c.r = phi * s.eta;
    return c;
  }
  // x = xi.cross(eta) is the axis point closest to the origin; the origin
  // orbits it while advancing pitch * phi along the axis.
  c.R = rot_exp(s.xi, phi);
  const Vec3 x = s.xi.cross(s.eta);
  c.r = x - c.R * x + (phi * s.pitch) * s.xi;
  return c;
}

Mat6 adjoint(const Pose& c) {
  Mat6 m = Mat6::Zero();
  m.topLeftCorner<3, 3>() = c.R;
  m.bottomRightCorner<3, 3>() = c.R;
  m.bottomLeftCorner<3, 3>() = skew(c.r) * c.R;
  return m;
}

Mat6 ad(const Vec6& x) {
  Mat6 m = Mat6::Zero();
  const Mat3 w = skew(x.head<3>());
  m.topLeftCorner<3, 3>() = w;
  m.bottomRightCorner<3, 3>() = w;
  m.bottomLeftCorner<3, 3>() = skew(x.tail<3>());
  return m;
}

}  // namespace screwdyn
