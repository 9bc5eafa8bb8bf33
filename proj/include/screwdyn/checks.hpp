#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "screwdyn/model.hpp"
#include "screwdyn/trajectory.hpp"
#include "screwdyn/types.hpp"

namespace screwdyn {

/// Deterministic uniform sampler for the verification suites. mt19937_64
/// has a standard-defined sequence and the scaling below avoids the
/// implementation-defined std distributions, so a given seed reproduces
/// the same states on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  VecX vector(int n, double lo, double hi) {
    VecX v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Vec3 vec3(double lo, double hi) {
    Vec3 v;
    for (int i = 0; i < 3; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Vec3 unit_vec3() {
    while (true) {
      const Vec3 v = vec3(-1.0, 1.0);
      const double n = v.norm();
      if (n > 0.1) return v / n;
    }
  }

 private:
  std::mt19937_64 gen_;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// screw_exp against a scaled 30-term Taylor series of the homogeneous
/// 4x4 exponential, on random revolute/prismatic/helical screws and
/// angles in [-3, 3].
CheckResult check_screw_exp_series(unsigned seed, int count, double tol = 1e-12);

/// Chain-level operator identities on random states: A(I - D) = I to
/// 1e-10, Adot X = Jdot to 1e-12, and Udot = -A a U against a central-4
/// finite difference along the state's own velocity to fd_tol.
CheckResult check_chain_identities(const ChainModel& model, unsigned seed,
                                   int count, double fd_tol = 1e-6);

/// Structural properties of the joint-space matrices on random states:
/// M symmetric positive definite, Mdot and Mddot symmetric, Mdot - 2 Cbar
/// skew symmetric (1e-12), C qd = Cbar qd, and the algebraic zeros
/// a X = 0, b V = 0 (1e-14 scaled).
CheckResult check_structural_properties(const ChainModel& model, unsigned seed,
                                        int count);

/// The expanded single-expression forms of C^(1), M^(2), C^(2) against the
/// production forms that reuse lower-order blocks, on random states.
CheckResult check_dual_forms(const ChainModel& model, unsigned seed, int count,
                             double tol = 1e-11);

/// Central-4 finite differences of Q against closed-form Qdot, and of
/// closed-form Qdot against Qddot, at uniformly spaced sample points of
/// the trajectory over [0, t_end].
CheckResult check_fd_ladder(const ChainModel& model, const CosineTrajectory& traj,
                            int samples, double t_end, double tol = 1e-6);

/// With gravity removed and no external wrench, qd . Q must equal the
/// rate of the kinetic energy 1/2 qd^T M qd along the trajectory.
CheckResult check_power_balance(const ChainModel& model,
                                const CosineTrajectory& traj, int samples,
                                double t_end, double tol = 1e-6);

/// Q, Qdot, Qddot of the built-in two-link arm against the independent
/// closed-form torque expressions, on random states in [-2, 2].
CheckResult check_two_r_oracle(unsigned seed, int count, double tol = 1e-11);

/// Every suite above at moderate sample counts, using a default cosine
/// trajectory sized for the model. Backs the `check` command.
std::vector<CheckResult> run_default_checks(const ChainModel& model,
                                            unsigned seed = 12345);

}  // namespace screwdyn
