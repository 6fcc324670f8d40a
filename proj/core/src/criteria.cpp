#include "qmsel/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmsel/errors.hpp"

namespace qmsel {

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::aic: return "aic";
    case Criterion::bic: return "bic";
    case Criterion::gaic: return "gaic";
    case Criterion::gbic: return "gbic";
    case Criterion::gbicp_l: return "gbicp_l";
    case Criterion::gbicp: return "gbicp";
  }
  return "unknown";
}

Criterion parse_criterion(std::string_view name) {
  for (Criterion c : kAllCriteria) {
    if (to_string(c) == name) return c;
  }
  throw InvalidArgument("unknown criterion '" + std::string(name) + "'");
}

std::optional<double> CriterionScores::value(Criterion c) const {
  switch (c) {
    case Criterion::aic: return aic;
    case Criterion::bic: return bic;
    case Criterion::gaic: return gaic;
    case Criterion::gbic: return gbic;
    case Criterion::gbicp_l: return gbicp_l;
    case Criterion::gbicp: return gbicp;
  }
  return std::nullopt;
}

CriterionScores score(double loglik, std::size_t model_size, std::optional<double> trace_h,
                      std::optional<double> logdet_h, long n, long p) {
  if (n < 1) throw InvalidArgument("sample size must be positive");
  CriterionScores s;
  s.model_size = model_size;
  s.loglik = loglik;
  s.n = n;
  s.p = p;
  s.p_star = std::max(n, p);

  const double size = static_cast<double>(model_size);
  const double log_n = std::log(static_cast<double>(n));
  const double log_pstar = std::log(static_cast<double>(s.p_star));
  const double dev = -2.0 * loglik;

  s.aic = dev + 2.0 * size;
  s.bic = dev + log_n * size;
  if (trace_h && logdet_h) {
    s.trace_h = trace_h;
    s.logdet_h = logdet_h;
    s.gaic = dev + 2.0 * *trace_h;
    s.gbic = dev + log_n * size - *logdet_h;
    s.gbicp_l = dev + log_n * size + *trace_h - *logdet_h;
    s.gbicp = dev + 2.0 * log_pstar * size + *trace_h - *logdet_h;
  }
  return s;
}

CriterionScores score_model(const FittedModel& fitted, const ContrastEstimate* contrast, long n, long p) {
  if (!fitted.support.empty() && p < fitted.support.back() + 1) {
    throw InvalidArgument("p is smaller than the largest support index");
  }
  std::optional<double> tr;
  std::optional<double> ld;
  if (contrast != nullptr && fitted.converged) {
    tr = contrast->trace_h;
    ld = contrast->logdet_h;
  }
  return score(fitted.loglik, fitted.size(), tr, ld, n, p);
}

std::size_t select(std::span<const ScoredCandidate> candidates, Criterion criterion) {
  const ScoredCandidate* best = nullptr;
  double best_value = 0.0;
  for (const auto& c : candidates) {
    if (!c.scores) continue;
    const auto v = c.scores->value(criterion);
    if (!v) continue;
    bool better = best == nullptr || *v < best_value;
    if (!better && *v == best_value) {
      const auto size = c.scores->model_size;
      const auto best_size = best->scores->model_size;
      better = size < best_size || (size == best_size && c.id < best->id);
    }
    if (better) {
      best = &c;
      best_value = *v;
    }
  }
  if (best == nullptr) {
    throw NoSelectableModel("no candidate has criterion " + std::string(to_string(criterion)) + " available");
  }
  return best->id;
}

}  // namespace qmsel
