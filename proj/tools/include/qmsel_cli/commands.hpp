#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "qmsel/scenario.hpp"
#include "qmsel_cli/config.hpp"

namespace qmsel::cli {

/// Process exit codes. Stable contract.
enum ExitCode : int { kOk = 0, kUsage = 1, kSolver = 2, kDegenerate = 3 };

struct DataArgs {
  std::string design;
  std::string response;
  std::string family = "gaussian";
  bool header = false;
};

struct FitArgs {
  DataArgs data;
  /// Comma-separated zero-based column indices; empty fits every column.
  std::string support;
  std::string out = ".";
};

struct PathArgs {
  DataArgs data;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
};

struct ScoreArgs {
  DataArgs data;
  /// One support per line (comma or space separated, blank line = null
  /// model). Without it the candidates come from a fresh path.
  std::string supports;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
};

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out = ".";
};

struct DiagnoseArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
};

/// Each command writes its files under `out` and a short summary to `log`.
/// Errors are reported on `err` and mapped to an ExitCode.
int cmd_fit(const FitArgs& args, std::ostream& log, std::ostream& err);
int cmd_path(const PathArgs& args, std::ostream& log, std::ostream& err);
int cmd_score(const ScoreArgs& args, std::ostream& log, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& log, std::ostream& err);
int cmd_diagnose(const DiagnoseArgs& args, std::ostream& log, std::ostream& err);

/// Reads the [path] and [screen] sections into `config`.
void apply_path_section(KeyValueConfig& cfg, PathConfig& config);
void apply_screen_section(KeyValueConfig& cfg, ScreenSettings& screen);

/// One ScenarioConfig per (scenario, p) pair listed in [simulate]. Rejects
/// unknown keys.
std::vector<ScenarioConfig> simulation_configs(KeyValueConfig& cfg);

}  // namespace qmsel::cli
