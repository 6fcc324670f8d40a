#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qmsel/family.hpp"
#include "qmsel/types.hpp"

namespace qmsel {

struct FixedCount {
  int k = 0;
};

/// Threshold at the `quantile` of the maximal marginal statistic over
/// `permutations` random permutations of y.
struct PermutationThreshold {
  int permutations = 10;
  double quantile = 1.0;
  std::uint64_t seed = 0;
};

using ScreenConfig = std::variant<FixedCount, PermutationThreshold>;

struct ScreenResult {
  /// Retained column indices, ascending.
  Support kept;
  /// |x~_j'(y - ybar)| per column; zero for constant columns.
  Vector statistic;
  /// Permutation threshold (NaN in fixed-count mode).
  double threshold = 0.0;
  std::vector<std::string> warnings;
};

/// Marginal statistic |x~_j'(y - ybar 1)| with x~_j the centred column scaled
/// to unit Euclidean norm. Constant columns get 0 and are reported in
/// `constant_columns`.
Vector marginal_statistic(const VectorRef& y, const MatrixRef& x, std::vector<int>* constant_columns = nullptr);

/// Sure independence screening. The statistic does not depend on the family;
/// it is accepted so the call site mirrors the rest of the pipeline.
ScreenResult sis_screen(const Family& family, const VectorRef& y, const MatrixRef& x,
                        const ScreenConfig& config);

}  // namespace qmsel
