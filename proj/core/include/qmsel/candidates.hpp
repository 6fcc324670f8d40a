#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmsel/contrast.hpp"
#include "qmsel/criteria.hpp"
#include "qmsel/path.hpp"
#include "qmsel/qmle.hpp"

namespace qmsel {

/// One refitted candidate. `fitted` is empty when the QMLE failed; `contrast`
/// is empty when it was degenerate (or the fit failed). `scores` is present
/// whenever `fitted` is.
struct CandidateFit {
  Support support;
  std::optional<FittedModel> fitted;
  std::optional<ContrastEstimate> contrast;
  std::optional<CriterionScores> scores;
  std::string status = "ok";
};

struct RefitOptions {
  QmleOptions qmle;
  /// Fit an unpenalized intercept alongside every support; it is not counted
  /// in |M|.
  bool intercept = false;
};

/// Unpenalized refit, contrast estimate and scoring of one support. The empty
/// support is the null model: l = y'0 - sum b(0), |M| = 0, tr(H) = log|H| = 0.
CandidateFit refit_candidate(const Family& family, const VectorRef& y, const MatrixRef& x,
                             const Support& support, long n, long p, const RefitOptions& options = {});

std::vector<CandidateFit> refit_and_score(const std::vector<Support>& supports, const Family& family,
                                          const VectorRef& y, const MatrixRef& x, long n, long p,
                                          const RefitOptions& options = {});

inline std::vector<CandidateFit> refit_and_score(const CandidatePath& path, const Family& family,
                                                 const VectorRef& y, const MatrixRef& x, long n, long p,
                                                 const RefitOptions& options = {}) {
  return refit_and_score(path.supports, family, y, x, n, p, options);
}

/// Candidate views for select(); ids are positions in `fits`.
std::vector<ScoredCandidate> scored_view(const std::vector<CandidateFit>& fits);

}  // namespace qmsel
