#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qmsel/family.hpp"
#include "qmsel/types.hpp"

namespace qmsel {

enum class Penalty { sica, lasso };

std::string_view to_string(Penalty penalty);
Penalty parse_penalty(std::string_view name);

/// SICA penalty p(t) = lambda (a + 1) t / (a + t) and its derivative.
double sica_penalty(double t, double lambda, double a);
double sica_derivative(double t, double lambda, double a);

struct PathConfig {
  Penalty penalty = Penalty::sica;
  /// SICA shape parameter (ignored for lasso).
  double a = 0.5;
  int n_lambda = 100;
  double lambda_min_ratio = 0.01;
  /// Explicit descending grid; overrides n_lambda / lambda_min_ratio when set.
  std::vector<double> lambdas;
  int max_lla_rounds = 3;
  /// Coordinate sweeps allowed per inner weighted-lasso solve.
  int max_sweeps = 200;
  /// Convergence threshold on the largest coefficient change.
  double tol = 1e-7;
  int max_irls = 50;
  /// Largest support recorded; <= 0 means min(n - 1, #screened columns).
  int max_support = 0;
  /// Stop the path once the deviance ratio exceeds this value.
  double max_deviance_ratio = 0.999;
  /// Restart every lambda from beta = 0 instead of the previous solution.
  bool cold_start = false;
  /// Prepend an unpenalized all-ones column. It is never part of a support.
  bool intercept = false;
};

struct PathPoint {
  double lambda = 0.0;
  /// Indices into the full design.
  Support support;
  /// Coefficients on the screened columns in original (unstandardized) units.
  Vector beta;
  double intercept = 0.0;
  bool converged = true;
};

/// Candidate model sequence along a decreasing penalty.
struct CandidatePath {
  /// Distinct supports in order of first appearance.
  std::vector<Support> supports;
  Vector lambda_grid;
  double lambda_max = 0.0;
  Support screen_set;
  std::vector<PathPoint> points;
  std::vector<std::string> warnings;
};

/// Penalized QMLE path on the columns `screen_set` of `x`:
///   minimize -l(y, beta)/n + sum_j p_lambda(|beta_j|)
/// on internally rescaled columns (root mean square 1, no centring), by local
/// linear approximation: each round is a weighted-lasso problem solved by
/// IRLS plus coordinate descent, warm-started along the grid.
CandidatePath penalized_path(const Family& family, const VectorRef& y, const MatrixRef& x,
                             const Support& screen_set, const PathConfig& config);

/// SICA path on an already screened design (all of its columns).
CandidatePath sica_path(const Family& family, const VectorRef& y, const MatrixRef& x_screened,
                        PathConfig config);

/// Lasso path on an already screened design (all of its columns).
CandidatePath lasso_path(const Family& family, const VectorRef& y, const MatrixRef& x_screened,
                         PathConfig config);

/// Saturated-model quasi-log-likelihood, used for deviance ratios.
double saturated_loglik(const Family& family, const VectorRef& y);

}  // namespace qmsel
