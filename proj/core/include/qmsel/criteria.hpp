#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "qmsel/contrast.hpp"
#include "qmsel/qmle.hpp"

namespace qmsel {

enum class Criterion { aic, bic, gaic, gbic, gbicp_l, gbicp };

inline constexpr std::array<Criterion, 6> kAllCriteria = {
    Criterion::aic,  Criterion::bic,     Criterion::gaic,
    Criterion::gbic, Criterion::gbicp_l, Criterion::gbicp};

std::string_view to_string(Criterion c);
Criterion parse_criterion(std::string_view name);

/// Scores of one fitted candidate. The generalized criteria are empty when
/// the contrast was degenerate or the fit did not converge. Constant terms
/// of the underlying expansions (|M| log(2 pi) / 2 and friends) are dropped.
struct CriterionScores {
  std::size_t model_size = 0;
  double loglik = 0.0;
  std::optional<double> trace_h;
  std::optional<double> logdet_h;
  double aic = 0.0;
  double bic = 0.0;
  std::optional<double> gaic;
  std::optional<double> gbic;
  std::optional<double> gbicp_l;
  std::optional<double> gbicp;
  long n = 0;
  long p = 0;
  long p_star = 0;

  std::optional<double> value(Criterion c) const;
};

/// All six criteria from a log-likelihood, model size and (optional)
/// contrast summary:
///   AIC      = -2l + 2|M|
///   BIC      = -2l + log(n)|M|
///   GAIC     = -2l + 2 tr(H)
///   GBIC     = -2l + log(n)|M| - log|H|
///   GBICp-L  = -2l + log(n)|M| + tr(H) - log|H|
///   GBICp    = -2l + 2 log(max(n, p))|M| + tr(H) - log|H|
CriterionScores score(double loglik, std::size_t model_size, std::optional<double> trace_h,
                      std::optional<double> logdet_h, long n, long p);

/// Scores a fitted model. Pass std::nullopt for `contrast` when it was
/// degenerate; a non-converged fit also leaves the generalized criteria empty.
CriterionScores score_model(const FittedModel& fitted, const ContrastEstimate* contrast, long n, long p);

struct ScoredCandidate {
  std::size_t id = 0;
  std::optional<CriterionScores> scores;
};

/// Argmin of `criterion` over candidates that have it; ties go to the smaller
/// model, then the smaller id. Throws NoSelectableModel if none qualifies.
std::size_t select(std::span<const ScoredCandidate> candidates, Criterion criterion);

}  // namespace qmsel
