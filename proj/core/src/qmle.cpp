#include "qmsel/qmle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "qmsel/errors.hpp"

namespace qmsel {
namespace {

void check_inputs(const VectorRef& y, const MatrixRef& x) {
  if (x.rows() != y.size()) throw ShapeError("design rows do not match response length");
  if (x.cols() < 1) throw InvalidArgument("design must have at least one column");
  if (!y.allFinite() || !x.allFinite()) throw InvalidArgument("non-finite entry in design or response");
  if (x.rows() < x.cols()) {
    throw SingularDesign("more columns (" + std::to_string(x.cols()) + ") than rows (" +
                         std::to_string(x.rows()) + ")");
  }
}

// Cholesky of X'WX with the relative pivot test; returns the factorization.
Eigen::LLT<Matrix> factor_normal_matrix(const MatrixRef& x, const Vector& weights, double rank_tol) {
  const Matrix xw = weights.cwiseSqrt().asDiagonal() * x;
  Matrix h = Matrix::Zero(x.cols(), x.cols());
  h.selfadjointView<Eigen::Lower>().rankUpdate(xw.transpose());
  h.triangularView<Eigen::StrictlyUpper>() = h.transpose();

  Eigen::LLT<Matrix> llt(h);
  const double max_diag = h.diagonal().maxCoeff();
  bool ok = llt.info() == Eigen::Success && max_diag > 0.0;
  if (ok) {
    const auto l_diag = llt.matrixLLT().diagonal();
    const double min_pivot = l_diag.cwiseAbs2().minCoeff();
    ok = min_pivot > rank_tol * max_diag;
  }
  if (!ok) throw SingularDesign("normal matrix X'WX is rank deficient");
  return llt;
}

constexpr double kRoundoff = 1e-13;

FittedModel newton_solve(const Family& family, const VectorRef& y, const MatrixRef& x,
                         const QmleOptions& opt) {
  check_inputs(y, x);
  const Eigen::Index d = x.cols();

  FittedModel out;
  out.support.resize(static_cast<std::size_t>(d));
  std::iota(out.support.begin(), out.support.end(), 0);

  const double score_scale = 1.0 + (x.transpose() * y).cwiseAbs().maxCoeff();
  const double threshold = opt.score_tol * score_scale;
  const double theta_limit = 10.0 * family.theta_cap;
  const bool check_divergence = family.kind != Family::Kind::gaussian;

  Vector beta = Vector::Zero(d);
  Vector theta = Vector::Zero(x.rows());
  double ll = quasi_log_likelihood_at(family, y, theta);
  out.loglik_trace.push_back(ll);

  int iter = 0;
  bool converged = false;
  double score_norm = 0.0;
  for (;; ++iter) {
    const Vector mu = mean(family, theta);
    const Vector score = x.transpose() * (y - mu);
    score_norm = score.cwiseAbs().maxCoeff();
    if (score_norm <= threshold) {
      converged = true;
      break;
    }
    if (iter >= opt.max_iter) break;

    const auto llt = factor_normal_matrix(x, variance(family, theta), opt.rank_tol);
    const Vector step = llt.solve(score);

    double t = 1.0;
    bool accepted = false;
    Vector trial_beta;
    Vector trial_theta;
    double trial_ll = 0.0;
    for (int h = 0; h <= opt.max_halvings; ++h, t *= 0.5) {
      trial_beta = beta + t * step;
      trial_theta = x * trial_beta;
      if (check_divergence && trial_theta.cwiseAbs().maxCoeff() > theta_limit) {
        throw Divergence(fmt::format("QMLE iterate diverged: ||X beta||_inf exceeds {:g} (possible separation)",
                                     theta_limit),
                         trial_beta);
      }
      trial_ll = quasi_log_likelihood_at(family, y, trial_theta);
      if (trial_ll >= ll) {
        accepted = true;
        break;
      }
      // Near the optimum the likelihood change drops below round-off; take
      // the full step if it still shrinks the score.
      if (h == 0 && ll - trial_ll <= kRoundoff * (1.0 + std::abs(ll))) {
        const Vector trial_score = x.transpose() * (y - mean(family, trial_theta));
        if (trial_score.cwiseAbs().maxCoeff() < score_norm) {
          accepted = true;
          break;
        }
      }
    }
    // No ascent along the Newton direction: the iterate is already at the
    // numerical optimum (or the problem is stuck); the score test decides.
    if (!accepted) break;

    beta = std::move(trial_beta);
    theta = std::move(trial_theta);
    ll = trial_ll;
    out.loglik_trace.push_back(ll);
  }

  out.beta_hat = std::move(beta);
  out.loglik = quasi_log_likelihood(family, y, x, out.beta_hat);
  out.score_inf_norm = score_norm;
  out.iterations = iter;
  out.converged = converged;
  return out;
}

}  // namespace

FittedModel fit(const Family& family, const VectorRef& y, const MatrixRef& x,
                const QmleOptions& options) {
  return newton_solve(family, y, x, options);
}

FittedModel fit(const Family& family, const VectorRef& y, const MatrixRef& x_full,
                const Support& support, const QmleOptions& options) {
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (support[k] < 0 || support[k] >= x_full.cols()) throw InvalidArgument("support index out of range");
    if (k > 0 && support[k] <= support[k - 1]) throw InvalidArgument("support must be strictly increasing");
  }
  FittedModel out = newton_solve(family, y, select_columns(x_full, support), options);
  out.support = support;
  return out;
}

Vector best_misspecified_params(const Family& family, const VectorRef& expected_y,
                                const MatrixRef& x) {
  if (family.kind == Family::Kind::bernoulli &&
      ((expected_y.array() <= 0.0).any() || (expected_y.array() >= 1.0).any())) {
    throw InvalidArgument("bernoulli mean response must lie strictly inside (0, 1)");
  }
  if (family.kind == Family::Kind::poisson && (expected_y.array() <= 0.0).any()) {
    throw InvalidArgument("poisson mean response must be positive");
  }
  QmleOptions opt;
  opt.score_tol = 1e-10;
  opt.max_iter = 200;
  FittedModel f = newton_solve(family, expected_y, x, opt);
  if (!f.converged) {
    throw Error("population normal equation did not converge (score " + std::to_string(f.score_inf_norm) + ")");
  }
  return f.beta_hat;
}

}  // namespace qmsel
