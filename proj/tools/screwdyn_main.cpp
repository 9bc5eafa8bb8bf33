#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "screwdyn/checks.hpp"
#include "screwdyn/model.hpp"
#include "screwdyn/runner.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitConfigError = 2;

/// Upper bound for the per-evaluation benchmark, the rate a 625 Hz
/// control loop would need from a much slower interpreted implementation.
constexpr double kBudgetSeconds = 1.6e-3;

int cmd_idyn(const screwdyn::RunConfig& cfg) {
  const screwdyn::RunSummary s = screwdyn::run_idyn(cfg);
  std::printf("wrote %s\n", cfg.output_path.string().c_str());
  std::printf("samples: %d  per-sample time [us]: min %.2f  mean %.2f  max %.2f\n",
              s.samples, s.min_seconds * 1e6, s.mean_seconds * 1e6,
              s.max_seconds * 1e6);
  return kExitSuccess;
}

int cmd_check(const std::string& model_path, unsigned seed) {
  const screwdyn::ChainModel model = screwdyn::load_model(model_path);
  std::printf("model: %s (%d joints), seed %u\n", model.name().c_str(),
              model.dof(), seed);
  bool all_pass = true;
  for (const screwdyn::CheckResult& r : screwdyn::run_default_checks(model, seed)) {
    all_pass = all_pass && r.pass;
    std::printf("%s  %-36s %s [%.2f s]\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.detail.c_str(), r.seconds);
  }
  if (!all_pass) {
    std::fprintf(stderr, "verification failed\n");
    return kExitVerificationFailure;
  }
  std::printf("all checks passed\n");
  return kExitSuccess;
}

int cmd_bench(const screwdyn::RunConfig& cfg) {
  const screwdyn::BenchSummary b = screwdyn::run_bench(cfg);
  std::printf("repetitions: %d\n", b.repetitions);
  std::printf("per-evaluation time: mean %.2f us, median %.2f us\n",
              b.mean_seconds * 1e6, b.median_seconds * 1e6);
  std::printf("budget %.1f ms per evaluation: %s (mean is %.4fx of budget)\n",
              kBudgetSeconds * 1e3,
              b.mean_seconds <= kBudgetSeconds ? "within budget" : "OVER BUDGET",
              b.mean_seconds / kBudgetSeconds);
  std::printf("checksum: %.17g\n", b.checksum);
  return b.mean_seconds <= kBudgetSeconds ? kExitSuccess : kExitVerificationFailure;
}

int cmd_model_validate(const std::string& model_path) {
  if (!std::filesystem::exists(model_path)) {
    std::fprintf(stderr, "configuration error: %s: no such file\n",
                 model_path.c_str());
    return kExitConfigError;
  }
  try {
    const screwdyn::ChainModel model = screwdyn::load_model(model_path);
    std::printf("OK: %s, %d joints", model.name().c_str(), model.dof());
    for (int i = 0; i < model.dof(); ++i)
      std::printf("%s%s", i == 0 ? " (" : ", ",
                  screwdyn::to_string(model.joint(i).kind));
    std::printf(")\n");
    return kExitSuccess;
  } catch (const screwdyn::ModelError& e) {
    std::fprintf(stderr, "invalid model: %s\n", e.what());
    return kExitVerificationFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse dynamics of serial chains with closed-form first and "
               "second time derivatives of the generalized forces"};
  app.require_subcommand(1);

  std::string config_path, model_path;
  std::string out_path;
  int order = -1;
  int reps = 0;
  unsigned seed = 12345;

  CLI::App* idyn = app.add_subcommand(
      "idyn", "Evaluate Q (and derivatives) along a trajectory, write CSV");
  idyn->add_option("--config", config_path, "Run config JSON file")->required();
  idyn->add_option("--model", model_path, "Override the config's model file");
  idyn->add_option("--order", order, "Override output order (0, 1 or 2)");
  idyn->add_option("--out", out_path, "Override the output CSV path");

  CLI::App* check = app.add_subcommand("check", "Run the verification suites");
  check->add_option("--model", model_path, "Model JSON file")->required();
  check->add_option("--seed", seed, "Seed for the randomized suites");

  CLI::App* bench =
      app.add_subcommand("bench", "Time second-order inverse dynamics");
  bench->add_option("--config", config_path, "Run config JSON file")->required();
  bench->add_option("--model", model_path, "Override the config's model file");
  bench->add_option("--reps", reps, "Repetitions (>= 1000)");

  CLI::App* model_cmd = app.add_subcommand("model", "Model file utilities");
  model_cmd->require_subcommand(1);
  CLI::App* validate =
      model_cmd->add_subcommand("validate", "Load and validate a model file");
  validate->add_option("--model", model_path, "Model JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitConfigError;
  }

  try {
    if (validate->parsed()) return cmd_model_validate(model_path);
    if (check->parsed()) return cmd_check(model_path, seed);

    screwdyn::RunConfig cfg = screwdyn::load_run_config(config_path);
    if (!model_path.empty()) cfg.model_path = model_path;
    if (order >= 0) {
      if (order > 2)
        throw screwdyn::ConfigError("--order: expected 0, 1 or 2");
      cfg.order = order;
    }
    if (!out_path.empty()) cfg.output_path = out_path;
    if (reps > 0) cfg.repetitions = reps;

    if (idyn->parsed()) return cmd_idyn(cfg);
    return cmd_bench(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfigError;
  }
}
