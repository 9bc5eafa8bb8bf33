#include <doctest.h>

#include <stdexcept>

#include "screwdyn/liegroup.hpp"
#include "screwdyn/oracles.hpp"
#include "support/helpers.hpp"
#include "support/series.hpp"

using namespace screwdyn;
using namespace screwdyn::testsupport;

TEST_CASE("skew matches the cross product") {
  CHECK(skew(Vec3::Zero()).norm() == 0.0);

  const Vec3 z(0, 0, 1);
  CHECK((skew(z) * Vec3(1, 0, 0) - Vec3(0, 1, 0)).norm() == 0.0);

  Rng rng(101);
  for (int i = 0; i < 50; ++i) {
    const Vec3 u = rng.vec3(-2.0, 2.0);
    const Vec3 w = rng.vec3(-2.0, 2.0);
    CHECK((skew(u) * w - u.cross(w)).norm() <= 1e-15 * (1.0 + w.norm()));
    CHECK((skew(u) + skew(u).transpose()).norm() == 0.0);
  }
}

TEST_CASE("rot_exp at zero angle is the identity") {
  CHECK(rel_err(rot_exp(Vec3(0, 0, 1), 0.0), Mat3::Identity()) == 0.0);
}

TEST_CASE("rot_exp quarter turn about z maps x to y") {
  const Mat3 r = rot_exp(Vec3(0, 0, 1), M_PI / 2.0);
  CHECK((r * Vec3(1, 0, 0) - Vec3(0, 1, 0)).norm() <= 1e-15);
}

TEST_CASE("rot_exp matches its truncated power series") {
  Rng rng(102);
  for (int i = 0; i < 100; ++i) {
    const Vec3 e = rng.unit_vec3();
    const double phi = rng.uniform(-M_PI, M_PI);
    const Mat3 series = exp_series(Mat3(phi * skew(e)));
    CHECK(rel_err(rot_exp(e, phi), series) <= 1e-12);
  }
}

TEST_CASE("rot_exp rejects a non-unit axis") {
  CHECK_THROWS_AS(rot_exp(Vec3(0, 0, 2), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(rot_exp(Vec3::Zero(), 0.5), std::invalid_argument);
  // Inside the acceptance band the axis is renormalized exactly.
  const Mat3 r = rot_exp(Vec3(0, 0, 1.0 + 1e-10), 0.5);
  CHECK(rel_err(r, rot_exp(Vec3(0, 0, 1), 0.5)) <= 1e-10);
}

TEST_CASE("rot_exp inverts by negating the angle") {
  Rng rng(103);
  for (int i = 0; i < 20; ++i) {
    const Vec3 e = rng.unit_vec3();
    const double phi = rng.uniform(-3.0, 3.0);
    CHECK(rel_err(rot_exp(e, phi) * rot_exp(e, -phi), Mat3::Identity()) <= 1e-15);
  }
}

TEST_CASE("screw_exp of a revolute axis through the origin is a pure rotation") {
  JointScrew s;  // z axis through the origin
  const Pose c = screw_exp(s, M_PI);
  CHECK(c.r.norm() == 0.0);
  CHECK(rel_err(c.R, rot_exp(Vec3(0, 0, 1), M_PI)) == 0.0);
}

TEST_CASE("screw_exp of a prismatic joint translates along its direction") {
  JointScrew s;
  s.kind = JointKind::prismatic;
  s.xi = Vec3::Zero();
  s.eta = Vec3(1, 0, 0);
  const Pose c = screw_exp(s, 2.0);
  CHECK((c.r - Vec3(2, 0, 0)).norm() == 0.0);
  CHECK(rel_err(c.R, Mat3::Identity()) == 0.0);
}

TEST_CASE("screw_exp matches the homogeneous-matrix series for every joint kind") {
  Rng rng(104);
  for (JointKind kind :
       {JointKind::revolute, JointKind::prismatic, JointKind::helical}) {
    for (int i = 0; i < 100; ++i) {
      const JointScrew s = random_screw(rng, kind);
      const double phi = rng.uniform(-M_PI, M_PI);
      const Mat4 series = exp_series(Mat4(phi * hat4(s.coords())));
      CHECK(rel_err(homogeneous(screw_exp(s, phi)), series) <= 1e-12);
    }
  }
}

TEST_CASE("screw_exp is a one-parameter subgroup") {
  Rng rng(105);
  for (int i = 0; i < 50; ++i) {
    const JointScrew s = random_screw(rng, JointKind::helical);
    const double u = rng.uniform(-2.0, 2.0);
    const double v = rng.uniform(-2.0, 2.0);
    const Pose lhs = screw_exp(s, u) * screw_exp(s, v);
    const Pose rhs = screw_exp(s, u + v);
    CHECK(rel_err(homogeneous(lhs), homogeneous(rhs)) <= 1e-12);
  }
}

TEST_CASE("adjoint of the identity pose is the identity") {
  CHECK(rel_err(adjoint(Pose::identity()), Mat6::Identity()) == 0.0);
}

TEST_CASE("adjoint of a pure translation carries the skew block") {
  Pose c;
  c.r = Vec3(0, 0, 1);
  const Mat6 m = adjoint(c);
  CHECK(rel_err(Mat3(m.bottomLeftCorner<3, 3>()), skew(Vec3(0, 0, 1))) == 0.0);
  CHECK(rel_err(Mat3(m.topLeftCorner<3, 3>()), Mat3::Identity()) == 0.0);
}

TEST_CASE("adjoint is a group homomorphism") {
  Rng rng(106);
  for (int i = 0; i < 50; ++i) {
    const Pose x = random_pose(rng);
    const Pose y = random_pose(rng);
    CHECK(rel_err(adjoint(x * y), Mat6(adjoint(x) * adjoint(y))) <= 1e-12);
  }
}

TEST_CASE("adjoint of the inverse pose is the inverse adjoint") {
  Rng rng(107);
  for (int i = 0; i < 20; ++i) {
    const Pose c = random_pose(rng);
    CHECK(rel_err(adjoint(inverse(c)), Mat6(adjoint(c).inverse())) <= 1e-10);
  }
}

TEST_CASE("pose inverse composes to the identity") {
  Rng rng(108);
  for (int i = 0; i < 20; ++i) {
    const Pose c = random_pose(rng);
    CHECK(rel_err(homogeneous(c * inverse(c)), Mat4::Identity()) <= 1e-12);
    const Vec3 p = rng.vec3(-2.0, 2.0);
    CHECK((inverse(c).apply(c.apply(p)) - p).norm() <= 1e-12);
  }
}

TEST_CASE("ad annihilates its own argument") {
  Rng rng(109);
  for (JointKind kind :
       {JointKind::revolute, JointKind::prismatic, JointKind::helical}) {
    const JointScrew s = random_screw(rng, kind);
    CHECK((ad(s.coords()) * s.coords()).norm() <= 1e-15);
  }
}

TEST_CASE("ad blocks of the z screw") {
  Vec6 x;
  x << 0, 0, 1, 0, 0, 0;
  const Mat6 m = ad(x);
  CHECK(rel_err(Mat3(m.topLeftCorner<3, 3>()), skew(Vec3(0, 0, 1))) == 0.0);
  CHECK(rel_err(Mat3(m.bottomRightCorner<3, 3>()), skew(Vec3(0, 0, 1))) == 0.0);
  CHECK(m.topRightCorner<3, 3>().norm() == 0.0);
  CHECK(m.bottomLeftCorner<3, 3>().norm() == 0.0);
}

TEST_CASE("ad matches the 4x4 commutator") {
  Rng rng(110);
  for (int i = 0; i < 50; ++i) {
    Vec6 x, y;
    for (int k = 0; k < 6; ++k) {
      x[k] = rng.uniform(-2.0, 2.0);
      y[k] = rng.uniform(-2.0, 2.0);
    }
    const Mat4 comm = hat4(x) * hat4(y) - hat4(y) * hat4(x);
    CHECK(rel_err(hat4(Vec6(ad(x) * y)), comm) <= 1e-14);
  }
}

TEST_CASE("twist and wrench six-vector round trips") {
  Vec6 x;
  x << 1, 2, 3, 4, 5, 6;
  CHECK((Twist::from(x).vec() - x).norm() == 0.0);
  CHECK((Wrench::from(x).vec() - x).norm() == 0.0);
  CHECK((Twist{Vec3(1, 2, 3), Vec3(4, 5, 6)}.vec() - x).norm() == 0.0);
}
