#pragma once

// Truncated matrix-power-series exponentials. These deliberately share no
// code with the closed-form maps in the library: they are the reference
// the closed forms are tested against.

#include <Eigen/Dense>

#include "screwdyn/liegroup.hpp"

namespace screwdyn::testsupport {

using Mat4 = Eigen::Matrix4d;

/// exp(M) = sum_{k=0}^{terms-1} M^k / k!
template <class Mat>
Mat exp_series(const Mat& m, int terms = 30) {
  Mat sum = Mat::Identity(m.rows(), m.cols());
  Mat term = sum;
  for (int k = 1; k < terms; ++k) {
    term = (term * m) / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

/// 4x4 homogeneous form of a screw six-vector (w; u).
inline Mat4 hat4(const Vec6& x) {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<3, 3>() = skew(x.head<3>());
  m.topRightCorner<3, 1>() = x.tail<3>();
  return m;
}

inline Mat4 homogeneous(const Pose& c) {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = c.R;
  m.topRightCorner<3, 1>() = c.r;
  return m;
}

}  // namespace screwdyn::testsupport
