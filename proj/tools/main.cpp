#include <iostream>

#include "CLI11.hpp"
#include "qmsel/report.hpp"
#include "qmsel_cli/commands.hpp"

using namespace qmsel::cli;

namespace {

void add_data_options(CLI::App* app, DataArgs& d) {
  app->add_option("--design", d.design, "Design matrix CSV")->required();
  app->add_option("--response", d.response, "Response CSV (one column)")->required();
  app->add_option("--family", d.family, "gaussian | bernoulli | poisson");
  app->add_flag("--header", d.header, "CSV files start with a header line");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model selection for possibly misspecified GLMs"};
  app.set_version_flag("--version", std::string(qmsel::toolkit_version()));
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit one model and report its criteria");
  add_data_options(fit_cmd, fit.data);
  fit_cmd->add_option("--support", fit.support, "Zero-based columns, comma separated (default: all)");
  fit_cmd->add_option("--out", fit.out, "Output directory");

  PathArgs path;
  std::uint64_t path_seed = 0;
  auto* path_cmd = app.add_subcommand("path", "Screen and build a penalized candidate path");
  add_data_options(path_cmd, path.data);
  path_cmd->add_option("--config", path.config, "Config with [path] / [screen] sections");
  auto* path_seed_opt = path_cmd->add_option("--seed", path_seed, "Permutation screening seed");
  path_cmd->add_option("--out", path.out, "Output directory");

  ScoreArgs score;
  std::uint64_t score_seed = 0;
  auto* score_cmd = app.add_subcommand("score", "Refit and score candidate models");
  add_data_options(score_cmd, score.data);
  score_cmd->add_option("--supports", score.supports, "Candidate supports, one per line");
  score_cmd->add_option("--config", score.config, "Path config used when --supports is absent");
  auto* score_seed_opt = score_cmd->add_option("--seed", score_seed, "Permutation screening seed");
  score_cmd->add_option("--out", score.out, "Output directory");

  SimulateArgs sim;
  std::uint64_t sim_seed = 0;
  int sim_workers = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Run simulation experiments from a config");
  sim_cmd->add_option("--config", sim.config, "Config with a [simulate] section")->required();
  auto* sim_seed_opt = sim_cmd->add_option("--seed", sim_seed, "Override master_seed");
  auto* sim_workers_opt = sim_cmd->add_option("--workers", sim_workers, "Worker threads (0 = all cores)")
                              ->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--out", sim.out, "Output directory");

  DiagnoseArgs diag;
  std::uint64_t diag_seed = 0;
  auto* diag_cmd = app.add_subcommand("diagnose", "Monte Carlo checks of the asymptotic expansions");
  diag_cmd->add_option("--config", diag.config, "Config with a [diagnose] section")->required();
  auto* diag_seed_opt = diag_cmd->add_option("--seed", diag_seed, "Override the diagnostic seed");
  diag_cmd->add_option("--out", diag.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*fit_cmd) return cmd_fit(fit, std::cout, std::cerr);
  if (*path_cmd) {
    if (*path_seed_opt) path.seed = path_seed;
    return cmd_path(path, std::cout, std::cerr);
  }
  if (*score_cmd) {
    if (*score_seed_opt) score.seed = score_seed;
    return cmd_score(score, std::cout, std::cerr);
  }
  if (*sim_cmd) {
    if (*sim_seed_opt) sim.seed = sim_seed;
    if (*sim_workers_opt) sim.workers = sim_workers;
    return cmd_simulate(sim, std::cout, std::cerr);
  }
  if (*diag_cmd) {
    if (*diag_seed_opt) diag.seed = diag_seed;
    return cmd_diagnose(diag, std::cout, std::cerr);
  }
  return kUsage;
}
