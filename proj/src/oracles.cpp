#include "screwdyn/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "screwdyn/kinematics.hpp"

namespace screwdyn {

ChainModel make_two_r_model(const TwoRParams& p) {
  const Vec3 z = Vec3::UnitZ();
  const Vec3 origin = Vec3::Zero();
  std::vector<Joint> joints;
  joints.emplace_back(JointKind::revolute, z, origin, 0.0, Pose::identity());
  joints.emplace_back(JointKind::revolute, z, origin, 0.0,
                      Pose{Mat3::Identity(), Vec3(p.L1, 0, 0)});

  std::vector<BodyInertia> bodies(2);
  bodies[0].mass = p.m1;
  bodies[0].com = Vec3(p.L1, 0, 0);
  bodies[0].inertia_com = Vec3(p.m1 * p.L1 * p.L1, 0, 0).asDiagonal();
  bodies[1].mass = p.m2;
  bodies[1].com = Vec3(p.L2, 0, 0);
  bodies[1].inertia_com = Vec3(p.m2 * p.L2 * p.L2, 0, 0).asDiagonal();

  return ChainModel("planar-2r", Vec3(0, -p.g, 0), std::move(joints),
                    std::move(bodies));
}

TwoRForces two_r_reference(const TwoRParams& p, const MotionState& s) {
  if (s.dof() != 2) {
    throw std::invalid_argument("two_r_reference: state must have 2 joints");
  }
  if (s.qd.size() != 2 || s.qdd.size() != 2 || s.qddd.size() != 2 ||
      s.qdddd.size() != 2) {
    throw std::invalid_argument(
        "two_r_reference: state must carry derivatives through fourth order");
  }
  const double L1 = p.L1, L2 = p.L2, m1 = p.m1, m2 = p.m2, g = p.g;
  const double dq1 = s.qd[0], dq2 = s.qd[1];
  const double ddq1 = s.qdd[0], ddq2 = s.qdd[1];
  const double d3q1 = s.qddd[0], d3q2 = s.qddd[1];
  const double d4q1 = s.qdddd[0], d4q2 = s.qdddd[1];
  const double c1 = std::cos(s.q[0]), s1 = std::sin(s.q[0]);
  const double c2 = std::cos(s.q[1]), s2 = std::sin(s.q[1]);
  const double c12 = std::cos(s.q[0] + s.q[1]);
  const double s12 = std::sin(s.q[0] + s.q[1]);

  TwoRForces out;
  out.tau[0] = L1 * L1 * ddq1 * m1                   //
               + L1 * L1 * ddq1 * m2                 //
               + L2 * L2 * ddq1 * m2                 //
               + L2 * L2 * ddq2 * m2                 //
               + L2 * g * m2 * c12                   //
               + L1 * g * m1 * c1                    //
               + L1 * g * m2 * c1                    //
               - L1 * L2 * dq2 * dq2 * m2 * s2       //
               + 2 * L1 * L2 * ddq1 * m2 * c2        //
               + L1 * L2 * ddq2 * m2 * c2            //
               - 2 * L1 * L2 * dq1 * dq2 * m2 * s2;
  out.tau[1] = L2 * m2 *
               (L1 * s2 * dq1 * dq1 + L2 * ddq1 + L2 * ddq2 + g * c12 +
                L1 * ddq1 * c2);

  out.tau_dot[0] = L1 * L1 * d3q1 * m1                      //
                   + L1 * L1 * d3q1 * m2                    //
                   + L2 * L2 * d3q1 * m2                    //
                   + L2 * L2 * d3q2 * m2                    //
                   - L2 * dq1 * g * m2 * s12                //
                   - L2 * dq2 * g * m2 * s12                //
                   + 2 * L1 * L2 * d3q1 * m2 * c2           //
                   + L1 * L2 * d3q2 * m2 * c2               //
                   - L1 * dq1 * g * m1 * s1                 //
                   - L1 * dq1 * g * m2 * s1                 //
                   - L1 * L2 * dq2 * dq2 * dq2 * m2 * c2    //
                   - 4 * L1 * L2 * ddq1 * dq2 * m2 * s2     //
                   - 2 * L1 * L2 * ddq2 * dq1 * m2 * s2     //
                   - 3 * L1 * L2 * ddq2 * dq2 * m2 * s2     //
                   - 2 * L1 * L2 * dq1 * dq2 * dq2 * m2 * c2;
  out.tau_dot[1] = L2 * m2 *
                   (L2 * d3q1 + L2 * d3q2         //
                    - dq1 * g * s12               //
                    - dq2 * g * s12               //
                    + L1 * d3q1 * c2              //
                    + 2 * L1 * ddq1 * dq1 * s2    //
                    - L1 * ddq1 * dq2 * s2        //
                    + L1 * dq1 * dq1 * dq2 * c2);

  out.tau_ddot[0] = L1 * L1 * d4q1 * m1                              //
                    + L1 * L1 * d4q1 * m2                            //
                    + L2 * L2 * d4q1 * m2                            //
                    + L2 * L2 * d4q2 * m2                            //
                    - 3 * L1 * L2 * ddq2 * ddq2 * m2 * s2            //
                    + L1 * L2 * dq2 * dq2 * dq2 * dq2 * m2 * s2      //
                    - L1 * dq1 * dq1 * g * m1 * c1                   //
                    - L1 * dq1 * dq1 * g * m2 * c1                   //
                    - L2 * ddq1 * g * m2 * s12                       //
                    - L2 * ddq2 * g * m2 * s12                       //
                    + 2 * L1 * L2 * d4q1 * m2 * c2                   //
                    + L1 * L2 * d4q2 * m2 * c2                       //
                    - L1 * ddq1 * g * m1 * s1                        //
                    - L1 * ddq1 * g * m2 * s1                        //
                    - L2 * dq1 * dq1 * g * m2 * c12                  //
                    - L2 * dq2 * dq2 * g * m2 * c12                  //
                    - 6 * L1 * L2 * ddq1 * ddq2 * m2 * s2            //
                    - 6 * L1 * L2 * d3q1 * dq2 * m2 * s2             //
                    - 2 * L1 * L2 * d3q2 * dq1 * m2 * s2             //
                    - 4 * L1 * L2 * d3q2 * dq2 * m2 * s2             //
                    - 6 * L1 * L2 * ddq1 * dq2 * dq2 * m2 * c2       //
                    - 6 * L1 * L2 * ddq2 * dq2 * dq2 * m2 * c2       //
                    + 2 * L1 * L2 * dq1 * dq2 * dq2 * dq2 * m2 * s2  //
                    - 2 * L2 * dq1 * dq2 * g * m2 * c12              //
                    - 6 * L1 * L2 * ddq2 * dq1 * dq2 * m2 * c2;
  out.tau_ddot[1] = -L2 * m2 *
                    (dq1 * dq1 * g * c12                  //
                     - L2 * d4q2 - L2 * d4q1              //
                     + dq2 * dq2 * g * c12                //
                     - 2 * L1 * ddq1 * ddq1 * s2          //
                     + ddq1 * g * s12                     //
                     + ddq2 * g * s12                     //
                     - L1 * d4q1 * c2                     //
                     + L1 * dq1 * dq1 * dq2 * dq2 * s2    //
                     + 2 * dq1 * dq2 * g * c12            //
                     + L1 * ddq1 * ddq2 * s2              //
                     - 2 * L1 * d3q1 * dq1 * s2           //
                     + 2 * L1 * d3q1 * dq2 * s2           //
                     + L1 * ddq1 * dq2 * dq2 * c2         //
                     - L1 * ddq2 * dq1 * dq1 * c2         //
                     - 4 * L1 * ddq1 * dq1 * dq2 * c2);
  return out;
}

VecX fd_derivative(const std::function<VecX(double)>& f, double t, const FDConfig& cfg) {
  const double h = cfg.step;
  if (!(h > 0.0)) throw std::invalid_argument("fd_derivative: step must be positive");
  if (cfg.scheme == FDConfig::Scheme::central2) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
  }
  return (-f(t + 2.0 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2.0 * h)) /
         (12.0 * h);
}

}  // namespace screwdyn
