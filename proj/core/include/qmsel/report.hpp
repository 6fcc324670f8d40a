#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qmsel/experiment.hpp"
#include "qmsel/scenario.hpp"

namespace qmsel {

std::string_view toolkit_version();

/// Six significant digits; "NA" for NaN.
std::string format_number(double v);

/// Header plus one row per criterion and the oracle. Error columns are
/// multiplied by 100.
///   criterion,consistent_pct,inclusion_pct,median_err,rsd_err,median_fp,median_fn_strong,median_fn_weak
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

/// Flat "key = value" description of a scenario config, suitable for the
/// [simulate]/[path]/[screen] sections of a config file.
void write_config_echo(std::ostream& os, const ScenarioConfig& config);

}  // namespace qmsel
