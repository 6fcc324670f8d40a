#include "qmsel/report.hpp"

#include <cmath>

#include <fmt/format.h>

#ifndef QMSEL_VERSION
#define QMSEL_VERSION "0.0.0"
#endif

namespace qmsel {

std::string_view toolkit_version() { return QMSEL_VERSION; }

std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  return fmt::format("{:.6g}", v);
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "criterion,consistent_pct,inclusion_pct,median_err,rsd_err,median_fp,median_fn_strong,median_fn_weak\n";
  for (const auto& r : rows) {
    os << r.label << ',' << format_number(r.consistent_pct) << ',' << format_number(r.inclusion_pct) << ','
       << format_number(100.0 * r.median_err) << ',' << format_number(100.0 * r.rsd_err) << ','
       << format_number(r.median_fp) << ',' << format_number(r.median_fn_strong) << ','
       << format_number(r.median_fn_weak) << '\n';
  }
}

void write_config_echo(std::ostream& os, const ScenarioConfig& c) {
  const char* mode = "none";
  if (c.screen.mode == ScreenSettings::Mode::fixed_count) mode = "fixed_count";
  if (c.screen.mode == ScreenSettings::Mode::permutation) mode = "permutation";
  os << "[simulate]\n"
     << "scenario = " << to_string(c.scenario) << '\n'
     << "n = " << c.n << '\n'
     << "p = " << c.p << '\n'
     << "sigma = " << format_number(c.sigma) << '\n'
     << "n_reps = " << c.n_reps << '\n'
     << "test_size = " << c.test_size << '\n'
     << "master_seed = " << c.master_seed << '\n'
     << "[path]\n"
     << "penalty = " << to_string(c.path.penalty) << '\n'
     << "a = " << format_number(c.path.a) << '\n'
     << "n_lambda = " << c.path.n_lambda << '\n'
     << "lambda_min_ratio = " << format_number(c.path.lambda_min_ratio) << '\n'
     << "max_lla_rounds = " << c.path.max_lla_rounds << '\n'
     << "max_sweeps = " << c.path.max_sweeps << '\n'
     << "tol = " << format_number(c.path.tol) << '\n'
     << "max_support = " << c.path.max_support << '\n'
     << "max_deviance_ratio = " << format_number(c.path.max_deviance_ratio) << '\n'
     << "[screen]\n"
     << "mode = " << mode << '\n'
     << "k = " << c.screen.k << '\n'
     << "permutations = " << c.screen.permutations << '\n'
     << "quantile = " << format_number(c.screen.quantile) << '\n';
}

}  // namespace qmsel
