#pragma once

#include <vector>

#include "qmsel/family.hpp"
#include "qmsel/types.hpp"

namespace qmsel {

struct QmleOptions {
  /// Exit when ||X'(y - mu)||_inf <= score_tol * (1 + ||X'y||_inf).
  double score_tol = 1e-8;
  int max_iter = 100;
  int max_halvings = 30;
  /// Relative pivot threshold of the Cholesky rank test.
  double rank_tol = 1e-12;
};

struct FittedModel {
  Support support;
  Vector beta_hat;
  /// Quasi-log-likelihood at beta_hat (constant-dropped convention).
  double loglik = 0.0;
  double score_inf_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Likelihood after every accepted Newton step, starting at beta = 0.
  std::vector<double> loglik_trace;

  std::size_t size() const { return support.size(); }
};

/// Quasi-maximum-likelihood fit of the working GLM on all columns of `x`,
/// by Newton/IRLS with step halving started at beta = 0. The returned
/// support is 0..d-1.
///
/// Throws SingularDesign when X'WX fails the Cholesky rank test and
/// Divergence when ||X beta||_inf exceeds 10 * theta_cap for a
/// non-gaussian family.
FittedModel fit(const Family& family, const VectorRef& y, const MatrixRef& x,
                const QmleOptions& options = {});

/// Fit on the listed columns of a full design; the support is recorded.
FittedModel fit(const Family& family, const VectorRef& y, const MatrixRef& x_full,
                const Support& support, const QmleOptions& options = {});

/// Parameter of the KL-closest working model: solves X'(Ey - mu(X beta)) = 0
/// with a 1e-10 relative score tolerance.
Vector best_misspecified_params(const Family& family, const VectorRef& expected_y,
                                const MatrixRef& x);

}  // namespace qmsel
