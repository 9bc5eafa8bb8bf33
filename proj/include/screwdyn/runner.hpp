#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "screwdyn/model.hpp"
#include "screwdyn/trajectory.hpp"

namespace screwdyn {

/// Raised on malformed run configs, unreadable trajectory files, and
/// anything else that makes a run impossible before it starts. The
/// message names the offending field or file.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Trajectory read from CSV columns t, q1..qn[, qd1..qdn][, ...]: exact
/// states at discrete times, already differentiated by whoever wrote the
/// file. orders counts the derivative columns present (q only = 0).
struct SampledTrajectory {
  std::vector<double> time;
  std::vector<MotionState> states;
  int orders = 0;
};

/// Quadratic-in-time wrench on one body, all other bodies unloaded:
/// W(t) = constant + t linear + t^2/2 quadratic, in the body's own frame.
struct WrenchSpec {
  int body = 0;
  Vec6 constant = Vec6::Zero();
  Vec6 linear = Vec6::Zero();
  Vec6 quadratic = Vec6::Zero();
};

/// One inverse-dynamics run: which model, along which trajectory, how many
/// output derivative orders (0 = Q, 1 = +Qdot, 2 = +Qddot), where the CSV
/// goes. Cosine trajectories carry their own sampling grid.
struct RunConfig {
  std::filesystem::path model_path;
  int order = 0;

  std::optional<CosineTrajectory> cosine;
  double duration = 10.0;
  double sample_rate = 1000.0;
  std::optional<std::filesystem::path> trajectory_csv;

  std::optional<WrenchSpec> wrench;
  std::filesystem::path output_path;
  int repetitions = 10000;
};

/// Parses the JSON run config; relative paths inside the file are resolved
/// against the file's own directory.
RunConfig load_run_config(const std::filesystem::path& file);

SampledTrajectory load_trajectory_csv(const std::filesystem::path& file, int dof);

struct RunSummary {
  int samples = 0;
  double min_seconds = 0.0;
  double mean_seconds = 0.0;
  double max_seconds = 0.0;
};

/// Evaluates Q (and Qdot, Qddot per cfg.order) at every trajectory sample
/// and writes the CSV: header t,Q1..Qn[,Qd1..Qdn][,Qdd1..Qddn], one row
/// per sample, 17 significant digits, LF line endings. Numeric output is
/// a pure function of (model file, trajectory, order, wrench); timings in
/// the summary are not.
RunSummary run_idyn(const RunConfig& cfg);

struct BenchSummary {
  int repetitions = 0;
  double mean_seconds = 0.0;
  double median_seconds = 0.0;
  /// Fingerprint of the computed forces so the work cannot be optimized
  /// away and reruns can assert identical numerics.
  double checksum = 0.0;
};

/// Times full second-order evaluations (all three force orders) at states
/// cycled from the configured trajectory. repetitions >= 1000.
BenchSummary run_bench(const RunConfig& cfg);

}  // namespace screwdyn
