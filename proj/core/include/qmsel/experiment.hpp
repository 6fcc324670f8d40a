#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmsel/candidates.hpp"
#include "qmsel/criteria.hpp"
#include "qmsel/scenario.hpp"

namespace qmsel {

/// Selection and out-of-sample metrics of one selected model.
struct SelectionMetrics {
  bool available = false;
  Support selected;
  bool consistent = false;
  bool includes = false;
  int false_positives = 0;
  int false_negatives_strong = 0;
  int false_negatives_weak = 0;
  /// Test mean squared prediction error (gaussian) or misclassification rate
  /// (bernoulli, threshold 0.5).
  double error = 0.0;
};

/// Columns of the test design keyed by column index.
using TestColumns = std::map<int, Vector>;

TestColumns materialize_test_columns(const Dataset& data, const std::vector<Support>& supports);

/// Metrics for a support with coefficients already fitted on the training
/// sample. `target` overrides the dataset's target set (used by the oracle row).
SelectionMetrics evaluate(const Support& selected, const VectorRef& beta_hat, const Dataset& data,
                          const TestColumns& test_columns, const Support* target = nullptr);

/// Refits `selected` by unpenalized QMLE on the training sample, then
/// evaluates. A failed fit yields unavailable metrics.
SelectionMetrics evaluate(const Support& selected, const Dataset& data);

/// Row order of every summary: the six criteria, then the oracle model.
inline constexpr std::size_t kSummaryRows = 7;
std::string_view row_label(std::size_t row);

struct ReplicationResult {
  int rep_index = 0;
  std::array<SelectionMetrics, kSummaryRows> rows;
  std::size_t n_candidates = 0;
  std::size_t screen_size = 0;
  std::vector<std::string> warnings;
};

/// Aggregate of one table row. Error statistics are in raw units.
struct SummaryRow {
  std::string label;
  int available = 0;
  double consistent_pct = 0.0;
  double inclusion_pct = 0.0;
  double median_err = 0.0;
  double rsd_err = 0.0;
  double median_fp = 0.0;
  double median_fn_strong = 0.0;
  double median_fn_weak = 0.0;
};

struct ExperimentResult {
  ScenarioConfig config;
  std::vector<ReplicationResult> replications;
  std::vector<SummaryRow> rows;
};

/// Everything one replication needs: data, screening, path, refits.
struct ReplicationTrace {
  Dataset data;
  ScreenResult screen;
  CandidatePath path;
  std::vector<CandidateFit> candidates;
  std::array<std::optional<std::size_t>, 6> selected_ids;
};

ReplicationTrace trace_replication(const ScenarioConfig& config, int rep_index);
ReplicationResult run_replication(const ScenarioConfig& config, int rep_index);

std::vector<SummaryRow> summarize(const std::vector<ReplicationResult>& reps);

/// Runs all replications (on `config.workers` threads) and aggregates them.
/// Output does not depend on the worker count.
ExperimentResult run_experiment(const ScenarioConfig& config);

}  // namespace qmsel
