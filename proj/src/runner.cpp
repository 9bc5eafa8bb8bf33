#include "screwdyn/runner.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "screwdyn/derivatives.hpp"

namespace screwdyn {
namespace {

using ojson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ConfigError(origin + ": " + what);
}

VecX json_vector(const ojson& j, int n, const std::string& origin,
                 const std::string& field) {
  if (!j.is_array()) fail(origin, field + ": expected an array");
  if (n >= 0 && static_cast<int>(j.size()) != n)
    fail(origin, field + ": expected " + std::to_string(n) + " entries, got " +
                     std::to_string(j.size()));
  VecX v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      fail(origin, field + "[" + std::to_string(i) + "]: expected a number");
    v[static_cast<int>(i)] = j[i].get<double>();
    if (!std::isfinite(v[static_cast<int>(i)]))
      fail(origin, field + "[" + std::to_string(i) + "]: not finite");
  }
  return v;
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

/// States for one run, either sampled analytically from a cosine
/// trajectory or taken verbatim from a CSV file.
struct StateSource {
  std::vector<double> time;
  std::vector<MotionState> states;
};

StateSource make_states(const RunConfig& cfg, const ChainModel& model,
                        int state_orders) {
  StateSource src;
  if (cfg.cosine) {
    if (cfg.cosine->dof() != model.dof())
      fail(cfg.model_path.string(),
           "trajectory has " + std::to_string(cfg.cosine->dof()) +
               " joints but the model has " + std::to_string(model.dof()));
    const int samples =
        static_cast<int>(std::llround(cfg.duration * cfg.sample_rate)) + 1;
    src.time.reserve(samples);
    src.states.reserve(samples);
    for (int k = 0; k < samples; ++k) {
      const double t = static_cast<double>(k) / cfg.sample_rate;
      src.time.push_back(t);
      src.states.push_back(sample(*cfg.cosine, t, state_orders));
    }
    return src;
  }

  if (!cfg.trajectory_csv)
    fail(cfg.model_path.string(), "run config has no trajectory");
  SampledTrajectory traj = load_trajectory_csv(*cfg.trajectory_csv, model.dof());
  if (traj.orders < state_orders)
    fail(cfg.trajectory_csv->string(),
         "file provides derivatives through order " + std::to_string(traj.orders) +
             " but order " + std::to_string(cfg.order) +
             " output needs order " + std::to_string(state_orders));
  src.time = std::move(traj.time);
  src.states = std::move(traj.states);
  return src;
}

/// Stacked wrench derivative of the given order at time t, or empty when
/// the run has no external load.
VecX stacked_wrench(const std::optional<WrenchSpec>& spec, int n, int order,
                    double t) {
  if (!spec) return VecX();
  VecX W = VecX::Zero(6 * n);
  Vec6 w;
  switch (order) {
    case 0: w = spec->constant + t * spec->linear + 0.5 * t * t * spec->quadratic; break;
    case 1: w = spec->linear + t * spec->quadratic; break;
    default: w = spec->quadratic; break;
  }
  W.segment<6>(6 * (spec->body - 1)) = w;
  return W;
}

void append_number(std::string& row, double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  row += buf;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(file.string(), "cannot open run config");
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const ojson::parse_error& e) {
    fail(file.string(), std::string("invalid JSON: ") + e.what());
  }
  const std::string origin = file.string();
  const std::filesystem::path base = file.parent_path();
  if (!j.is_object()) fail(origin, "top level must be an object");

  RunConfig cfg;
  if (!j.contains("model") || !j["model"].is_string())
    fail(origin, "model: expected a file path string");
  cfg.model_path = resolve(base, j["model"].get<std::string>());

  if (j.contains("order")) {
    if (!j["order"].is_number_integer()) fail(origin, "order: expected 0, 1 or 2");
    cfg.order = j["order"].get<int>();
  }
  if (cfg.order < 0 || cfg.order > 2) fail(origin, "order: expected 0, 1 or 2");

  if (!j.contains("trajectory") || !j["trajectory"].is_object())
    fail(origin, "trajectory: expected an object");
  const ojson& tj = j["trajectory"];
  const std::string type = tj.value("type", "cosine");
  if (type == "cosine") {
    CosineTrajectory traj;
    for (const char* field : {"offset", "amplitude", "frequency", "phase"})
      if (!tj.contains(field))
        fail(origin, std::string("trajectory.") + field + ": missing");
    traj.offset = json_vector(tj["offset"], -1, origin, "trajectory.offset");
    const int n = static_cast<int>(traj.offset.size());
    traj.amplitude = json_vector(tj["amplitude"], n, origin, "trajectory.amplitude");
    traj.frequency = json_vector(tj["frequency"], n, origin, "trajectory.frequency");
    traj.phase = json_vector(tj["phase"], n, origin, "trajectory.phase");
    cfg.cosine = std::move(traj);
    if (tj.contains("duration")) {
      if (!tj["duration"].is_number()) fail(origin, "trajectory.duration: expected a number");
      cfg.duration = tj["duration"].get<double>();
    }
    if (tj.contains("sample_rate")) {
      if (!tj["sample_rate"].is_number())
        fail(origin, "trajectory.sample_rate: expected a number");
      cfg.sample_rate = tj["sample_rate"].get<double>();
    }
    if (!(cfg.duration > 0.0)) fail(origin, "trajectory.duration: must be positive");
    if (!(cfg.sample_rate > 0.0))
      fail(origin, "trajectory.sample_rate: must be positive");
  } else if (type == "csv") {
    if (!tj.contains("path") || !tj["path"].is_string())
      fail(origin, "trajectory.path: expected a file path string");
    cfg.trajectory_csv = resolve(base, tj["path"].get<std::string>());
  } else {
    fail(origin, "trajectory.type: expected \"cosine\" or \"csv\"");
  }

  if (j.contains("external_wrench")) {
    const ojson& wj = j["external_wrench"];
    if (!wj.is_object()) fail(origin, "external_wrench: expected an object");
    WrenchSpec spec;
    if (!wj.contains("body") || !wj["body"].is_number_integer())
      fail(origin, "external_wrench.body: expected a 1-based body index");
    spec.body = wj["body"].get<int>();
    if (spec.body < 1) fail(origin, "external_wrench.body: must be >= 1");
    if (wj.contains("constant"))
      spec.constant = json_vector(wj["constant"], 6, origin, "external_wrench.constant");
    if (wj.contains("linear"))
      spec.linear = json_vector(wj["linear"], 6, origin, "external_wrench.linear");
    if (wj.contains("quadratic"))
      spec.quadratic =
          json_vector(wj["quadratic"], 6, origin, "external_wrench.quadratic");
    cfg.wrench = spec;
  }

  // Input paths are config-relative; the output lands wherever the tool
  // is run so a shipped config never writes into its own directory.
  if (j.contains("output")) {
    if (!j["output"].is_string()) fail(origin, "output: expected a file path string");
    cfg.output_path = j["output"].get<std::string>();
  }
  if (j.contains("repetitions")) {
    if (!j["repetitions"].is_number_integer() || j["repetitions"].get<int>() < 1)
      fail(origin, "repetitions: expected a positive integer");
    cfg.repetitions = j["repetitions"].get<int>();
  }
  return cfg;
}

SampledTrajectory load_trajectory_csv(const std::filesystem::path& file, int dof) {
  std::ifstream in(file);
  if (!in) fail(file.string(), "cannot open trajectory file");

  SampledTrajectory traj;
  std::string line;
  int lineno = 0;
  int columns = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    // A header row is any line whose first field does not parse as a
    // number; only one is allowed, before the data.
    const bool header = line.compare(first, 1, "t") == 0 ||
                        std::isalpha(static_cast<unsigned char>(line[first]));
    if (header) {
      if (!traj.states.empty() || columns != -1)
        fail(file.string(), "line " + std::to_string(lineno) +
                                ": header row after data rows");
      columns = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
      continue;
    }

    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cell, &used));
        while (used < cell.size() &&
               std::isspace(static_cast<unsigned char>(cell[used])))
          ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        fail(file.string(), "line " + std::to_string(lineno) +
                                ": cannot parse \"" + cell + "\" as a number");
      }
    }
    if (columns == -1) columns = static_cast<int>(values.size());
    if (static_cast<int>(values.size()) != columns)
      fail(file.string(), "line " + std::to_string(lineno) + ": expected " +
                              std::to_string(columns) + " columns, got " +
                              std::to_string(values.size()));

    if ((columns - 1) % dof != 0 || columns < 1 + dof || columns > 1 + 5 * dof)
      fail(file.string(),
           "expected 1 + " + std::to_string(dof) +
               "*k columns (k = 1..5 state orders), got " + std::to_string(columns));
    const int orders = (columns - 1) / dof - 1;

    traj.time.push_back(values[0]);
    MotionState s = MotionState::zero(dof, orders);
    VecX* const dest[5] = {&s.q, &s.qd, &s.qdd, &s.qddd, &s.qdddd};
    for (int k = 0; k <= orders; ++k)
      for (int i = 0; i < dof; ++i) (*dest[k])[i] = values[1 + k * dof + i];
    traj.states.push_back(std::move(s));
    traj.orders = orders;
  }
  if (traj.states.empty()) fail(file.string(), "no data rows");
  return traj;
}

RunSummary run_idyn(const RunConfig& cfg) {
  const ChainModel model = load_model(cfg.model_path);
  const int n = model.dof();
  if (cfg.output_path.empty())
    fail(cfg.model_path.string(), "output: required for an idyn run");
  if (cfg.wrench && cfg.wrench->body > n)
    fail(cfg.model_path.string(), "external_wrench.body: model has only " +
                                      std::to_string(n) + " bodies");

  const StateSource src = make_states(cfg, model, cfg.order + 2);
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) fail(cfg.output_path.string(), "cannot open output file");

  std::string row = "t";
  static const char* const prefix[3] = {"Q", "Qd", "Qdd"};
  for (int k = 0; k <= cfg.order; ++k)
    for (int i = 1; i <= n; ++i)
      row += "," + std::string(prefix[k]) + std::to_string(i);
  row += '\n';
  out << row;

  IdynWorkspace iws(model);
  RunSummary summary;
  summary.samples = static_cast<int>(src.states.size());
  summary.min_seconds = std::numeric_limits<double>::infinity();
  double total = 0.0;

  for (std::size_t k = 0; k < src.states.size(); ++k) {
    const double t = src.time[k];
    const VecX W = stacked_wrench(cfg.wrench, n, 0, t);
    const VecX Wd = cfg.order >= 1 ? stacked_wrench(cfg.wrench, n, 1, t) : VecX();
    const VecX Wdd = cfg.order >= 2 ? stacked_wrench(cfg.wrench, n, 2, t) : VecX();

    const auto t0 = Clock::now();
    evaluate_idyn(model, src.states[k], cfg.order, iws, W, Wd, Wdd);
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    summary.min_seconds = std::min(summary.min_seconds, dt);
    summary.max_seconds = std::max(summary.max_seconds, dt);
    total += dt;

    row.clear();
    append_number(row, t);
    const VecX* const result[3] = {&iws.forces.Q, &iws.first.Qdot,
                                   &iws.second.Qddot};
    for (int ord = 0; ord <= cfg.order; ++ord)
      for (int i = 0; i < n; ++i) {
        row += ',';
        append_number(row, (*result[ord])[i]);
      }
    row += '\n';
    out << row;
  }
  if (!out) fail(cfg.output_path.string(), "write failed");
  summary.mean_seconds = total / std::max(summary.samples, 1);
  return summary;
}

BenchSummary run_bench(const RunConfig& cfg) {
  if (cfg.repetitions < 1000)
    fail(cfg.model_path.string(), "repetitions: benchmark needs at least 1000");
  const ChainModel model = load_model(cfg.model_path);
  const int n = model.dof();
  if (cfg.wrench && cfg.wrench->body > n)
    fail(cfg.model_path.string(), "external_wrench.body: model has only " +
                                      std::to_string(n) + " bodies");

  // A fixed pool of states keeps the timed loop free of trajectory math
  // while still exercising varied configurations.
  StateSource src = make_states(cfg, model, 4);
  constexpr std::size_t kPool = 256;
  if (src.states.size() > kPool) {
    StateSource thinned;
    const std::size_t stride = src.states.size() / kPool;
    for (std::size_t k = 0; k < src.states.size() && thinned.states.size() < kPool;
         k += stride) {
      thinned.time.push_back(src.time[k]);
      thinned.states.push_back(std::move(src.states[k]));
    }
    src = std::move(thinned);
  }
  const int pool = static_cast<int>(src.states.size());
  std::vector<VecX> W(pool), Wd(pool), Wdd(pool);
  for (int k = 0; k < pool; ++k) {
    W[k] = stacked_wrench(cfg.wrench, n, 0, src.time[k]);
    Wd[k] = stacked_wrench(cfg.wrench, n, 1, src.time[k]);
    Wdd[k] = stacked_wrench(cfg.wrench, n, 2, src.time[k]);
  }

  IdynWorkspace iws(model);
  BenchSummary summary;
  summary.repetitions = cfg.repetitions;
  std::vector<double> times(cfg.repetitions);
  for (int r = 0; r < cfg.repetitions; ++r) {
    const int k = r % pool;
    const auto t0 = Clock::now();
    evaluate_idyn(model, src.states[k], 2, iws, W[k], Wd[k], Wdd[k]);
    times[r] = std::chrono::duration<double>(Clock::now() - t0).count();
    summary.checksum +=
        iws.forces.Q.sum() + iws.first.Qdot.sum() + iws.second.Qddot.sum();
  }
  summary.mean_seconds =
      std::accumulate(times.begin(), times.end(), 0.0) / cfg.repetitions;
  std::nth_element(times.begin(), times.begin() + cfg.repetitions / 2, times.end());
  summary.median_seconds = times[cfg.repetitions / 2];
  return summary;
}

}  // namespace screwdyn
