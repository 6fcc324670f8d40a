#include "qmsel/candidates.hpp"

#include "qmsel/errors.hpp"

namespace qmsel {

CandidateFit refit_candidate(const Family& family, const VectorRef& y, const MatrixRef& x,
                             const Support& support, long n, long p, const RefitOptions& options) {
  CandidateFit out;
  out.support = support;

  if (support.empty() && !options.intercept) {
    FittedModel null_model;
    null_model.beta_hat = Vector(0);
    null_model.loglik = quasi_log_likelihood_at(family, y, Vector::Zero(y.size()));
    null_model.converged = true;
    null_model.loglik_trace = {null_model.loglik};
    ContrastEstimate empty;
    empty.gen_eigs = Vector(0);
    out.scores = score(null_model.loglik, 0, 0.0, 0.0, n, p);
    out.fitted = std::move(null_model);
    out.contrast = std::move(empty);
    return out;
  }

  Matrix design;
  if (options.intercept) {
    design.resize(x.rows(), static_cast<Eigen::Index>(support.size()) + 1);
    design.col(0).setOnes();
    for (std::size_t k = 0; k < support.size(); ++k) {
      design.col(static_cast<Eigen::Index>(k) + 1) = x.col(support[k]);
    }
  } else {
    design = select_columns(x, support);
  }

  try {
    FittedModel f = fit(family, y, design, options.qmle);
    f.support = support;
    std::optional<double> tr;
    std::optional<double> ld;
    try {
      ContrastEstimate c = estimate_contrast(family, design, y, f.beta_hat);
      if (f.converged) {
        tr = c.trace_h;
        ld = c.logdet_h;
      } else {
        out.status = "not converged";
      }
      out.contrast = std::move(c);
    } catch (const DegenerateContrast& e) {
      out.status = std::string("degenerate contrast: ") + e.what();
    } catch (const NonSpdError& e) {
      out.status = std::string("non-SPD A: ") + e.what();
    }
    out.scores = score(f.loglik, support.size(), tr, ld, n, p);
    out.fitted = std::move(f);
  } catch (const Divergence& e) {
    out.status = std::string("divergence: ") + e.what();
  } catch (const SingularDesign& e) {
    out.status = std::string("singular design: ") + e.what();
  }
  return out;
}

std::vector<CandidateFit> refit_and_score(const std::vector<Support>& supports, const Family& family,
                                          const VectorRef& y, const MatrixRef& x, long n, long p,
                                          const RefitOptions& options) {
  std::vector<CandidateFit> out;
  out.reserve(supports.size());
  for (const auto& s : supports) out.push_back(refit_candidate(family, y, x, s, n, p, options));
  return out;
}

std::vector<ScoredCandidate> scored_view(const std::vector<CandidateFit>& fits) {
  std::vector<ScoredCandidate> out;
  out.reserve(fits.size());
  for (std::size_t i = 0; i < fits.size(); ++i) out.push_back({i, fits[i].scores});
  return out;
}

}  // namespace qmsel
