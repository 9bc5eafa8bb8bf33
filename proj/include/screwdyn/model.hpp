#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "screwdyn/liegroup.hpp"

namespace screwdyn {

/// Raised on malformed model data. The message names the offending field,
/// e.g. "bodies[2].mass: must be positive".
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mass properties of one link. com and inertia_com are expressed in the
/// link's body frame; R_bc rotates the COM principal frame into the body
/// frame when the inertia is given about non-aligned axes.
struct BodyInertia {
  double mass = 1.0;
  Vec3 com = Vec3::Zero();
  Mat3 inertia_com = Mat3::Zero();
  Mat3 R_bc = Mat3::Identity();
};

/// Body-frame 6x6 spatial inertia
///   [[Theta_b, m c~], [-m c~, m I]]
/// with Theta_b = R_bc Theta_c R_bc^T - m c~ c~ (Steiner shift of the COM
/// inertia to the body-frame origin).
Mat6 spatial_inertia(const BodyInertia& body);

/// Body-frame screw coordinates from an axis direction, a point on the
/// axis, and (helical only) a finite pitch. The direction must be unit
/// length to within 1e-9; anything further off is rejected rather than
/// silently renormalized. Prismatic joints ignore the point.
JointScrew joint_screw_from_axis(JointKind kind, const Vec3& axis, const Vec3& point,
                                 double pitch = 0.0);

/// One joint of the chain: the screw it moves along, plus the reference
/// pose B of the driven body in its predecessor's frame at zero position.
/// axis/point/pitch are kept as given so a model file survives a
/// load/save round trip unchanged.
struct Joint {
  JointKind kind = JointKind::revolute;
  Vec3 axis = Vec3::UnitZ();
  Vec3 point = Vec3::Zero();
  double pitch = 0.0;
  Pose ref;
  JointScrew screw;

  Joint() : screw(joint_screw_from_axis(kind, axis, point)) {}
  Joint(JointKind kind_, const Vec3& axis_, const Vec3& point_, double pitch_,
        const Pose& ref_)
      : kind(kind_),
        axis(axis_),
        point(point_),
        pitch(pitch_),
        ref(ref_),
        screw(joint_screw_from_axis(kind_, axis_, point_, pitch_)) {}
};

/// Serial kinematic chain: joint i drives body i (0-based), body i-1 is
/// its predecessor and the base is fixed. Validated on construction and
/// immutable afterwards, so a const model can be shared across threads.
class ChainModel {
 public:
  ChainModel(std::string name, const Vec3& gravity, std::vector<Joint> joints,
             std::vector<BodyInertia> bodies);

  int dof() const { return static_cast<int>(joints_.size()); }
  const std::string& name() const { return name_; }
  const Vec3& gravity() const { return gravity_; }
  const Joint& joint(int i) const { return joints_.at(i); }
  const BodyInertia& body(int i) const { return bodies_.at(i); }

 private:
  std::string name_;
  Vec3 gravity_ = Vec3::Zero();
  std::vector<Joint> joints_;
  std::vector<BodyInertia> bodies_;
};

/// Reads a model from its JSON description. Throws ModelError with the
/// offending field path on any structural or semantic problem.
ChainModel load_model(const std::filesystem::path& file);

/// Same as load_model but from in-memory text; origin only labels errors.
ChainModel parse_model(const std::string& json_text,
                       const std::string& origin = "<string>");

/// Canonical JSON serialization (schema key order, shortest round-trip
/// number formatting, trailing newline). Loading shipped files and saving
/// them again reproduces the bytes exactly.
std::string save_model(const ChainModel& model);

/// Time-varying external wrenches applied to the bodies, each expressed in
/// its body's own frame. Derivative orders not supplied are zero (exact for
/// constant wrenches); supplying order k requires order k-1 as well.
class ExternalWrenchTrajectory {
 public:
  using BodyFn = std::function<Wrench(double)>;

  explicit ExternalWrenchTrajectory(int n_bodies);

  /// Wrench on the last body only; every other body stays zero.
  static ExternalWrenchTrajectory end_effector(int n_bodies, BodyFn w,
                                               BodyFn w_dot = nullptr,
                                               BodyFn w_ddot = nullptr);

  void set_body(int i, BodyFn w, BodyFn w_dot = nullptr, BodyFn w_ddot = nullptr);

  int n_bodies() const { return n_; }

  /// Stacked 6n wrench and its first two time derivatives at time t.
  VecX stacked(double t) const;
  VecX stacked_rate(double t) const;
  VecX stacked_accel(double t) const;

 private:
  VecX eval(int order, double t) const;

  int n_ = 0;
  std::vector<std::array<BodyFn, 3>> fns_;
};

}  // namespace screwdyn
