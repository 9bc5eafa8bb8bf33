#pragma once

#include <functional>

#include "screwdyn/model.hpp"
#include "screwdyn/types.hpp"

namespace screwdyn {

struct MotionState;

/// Scale-aware relative error used by every verification tolerance:
/// |got - want|_F / (1 + |want|_F). The +1 keeps the metric meaningful
/// when the reference is near zero.
template <class A, class B>
double rel_err(const Eigen::MatrixBase<A>& got, const Eigen::MatrixBase<B>& want) {
  return (got - want).norm() / (1.0 + want.norm());
}

struct FDConfig {
  enum class Scheme { central2, central4 };
  double step = 1e-6;
  Scheme scheme = Scheme::central2;
};

/// Finite-difference time derivative of a vector-valued curve.
///   central2: (f(t+h) - f(t-h)) / 2h
///   central4: (-f(t+2h) + 8 f(t+h) - 8 f(t-h) + f(t-2h)) / 12h
VecX fd_derivative(const std::function<VecX(double)>& f, double t, const FDConfig& cfg);

/// Planar two-link arm with point masses at the link tips, gravity -g
/// along the base y axis.
struct TwoRParams {
  double L1 = 1.0;
  double L2 = 1.0;
  double m1 = 1.0;
  double m2 = 1.0;
  double g = 9.81;
};

struct TwoRForces {
  Eigen::Vector2d tau;
  Eigen::Vector2d tau_dot;
  Eigen::Vector2d tau_ddot;
};

/// Joint torques and their first two time derivatives from the scalar
/// closed-form expressions for the two-link arm, written term by term.
/// Entirely independent of the operator-based evaluation path; requires
/// a 2-dof state populated through the fourth derivative.
TwoRForces two_r_reference(const TwoRParams& p, const MotionState& s);

/// Chain model matching two_r_reference: tip point masses giving each link
/// an isotropic body-frame rotational inertia m_i L_i^2, gravity -g along
/// the base y axis.
ChainModel make_two_r_model(const TwoRParams& p);

}  // namespace screwdyn
