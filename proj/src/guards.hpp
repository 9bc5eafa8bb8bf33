#pragma once

// Argument and workspace-stage validation shared by the evaluation stages.

#include <stdexcept>
#include <string>

#include "screwdyn/kinematics.hpp"

namespace screwdyn::detail {

inline void check_size(const VecX& v, int n, const char* op, const char* arg) {
  if (v.size() != n) {
    throw std::invalid_argument(std::string(op) + ": " + arg + " has size " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(n));
  }
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(op) + ": " + arg +
                                " has non-finite entries");
  }
}

inline void check_stage(const SystemWorkspace& ws, int need, const char* op) {
  if (ws.stage < need) {
    static const char* levels[] = {"assemble_system", "system_velocity",
                                   "system_acceleration", "system_jerk"};
    throw std::logic_error(std::string(op) + ": workspace not populated; call " +
                           levels[need - 1] + " first");
  }
}

inline void check_dyn_stage(const SystemWorkspace& ws, int need, const char* op) {
  if (ws.dyn_stage < need) {
    static const char* levels[] = {"joint_space_matrices", "first_order_matrices",
                                   "second_order_matrices"};
    throw std::logic_error(std::string(op) + ": operators not populated; call " +
                           levels[need - 1] + " first");
  }
}

}  // namespace screwdyn::detail
