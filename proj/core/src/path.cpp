#include "qmsel/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "qmsel/errors.hpp"

namespace qmsel {
namespace {

double soft_threshold(double g, double t) {
  if (g > t) return g - t;
  if (g < -t) return g + t;
  return 0.0;
}

double inverse_link_of_mean(const Family& family, double ybar) {
  switch (family.kind) {
    case Family::Kind::gaussian: return ybar;
    case Family::Kind::bernoulli: {
      const double p = std::clamp(ybar, 1e-6, 1.0 - 1e-6);
      return std::log(p / (1.0 - p));
    }
    case Family::Kind::poisson: return std::log(std::max(ybar, 1e-6));
  }
  return 0.0;
}

// Weighted-lasso GLM solver on standardized columns; keeps its iterate
// between calls so the path can warm start.
class WeightedLassoSolver {
 public:
  WeightedLassoSolver(const Family& family, const VectorRef& y, const Matrix& z, bool intercept,
                      const PathConfig& config)
      : family_(family), y_(y), z_(z), intercept_(intercept), cfg_(config),
        n_(static_cast<double>(z.rows())), beta_(Vector::Zero(z.cols())), theta_(Vector::Zero(z.rows())) {}

  void reset(double b0) {
    beta_.setZero();
    b0_ = b0;
    theta_.setConstant(b0);
  }

  const Vector& beta() const { return beta_; }
  double intercept() const { return b0_; }
  const Vector& theta() const { return theta_; }

  double penalized_objective(const Vector& w, const Vector& beta, const Vector& theta) const {
    double pen = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) pen += w[j] * std::abs(beta[j]);
    return -quasi_log_likelihood_at(family_, y_, theta) / n_ + pen;
  }

  /// Minimizes -l/n + sum_j w_j |beta_j| from the current iterate.
  bool solve(const Vector& w) {
    const bool gaussian = family_.kind == Family::Kind::gaussian;
    Vector weights = Vector::Ones(z_.rows());
    Vector resid(z_.rows());
    for (int it = 0; it < cfg_.max_irls; ++it) {
      if (gaussian) {
        resid = y_ - theta_;
      } else {
        const Vector mu = mean(family_, theta_);
        weights = variance(family_, theta_);
        resid = (y_ - mu).cwiseQuotient(weights);
      }
      const Vector beta_old = beta_;
      const double b0_old = b0_;
      const double f_old = gaussian ? 0.0 : penalized_objective(w, beta_old, theta_);

      const bool cd_ok = coordinate_descent(weights, resid, w);
      theta_ = z_ * beta_;
      theta_.array() += b0_;
      if (gaussian) return cd_ok;

      // Guard the IRLS step against objective increase.
      double f_new = penalized_objective(w, beta_, theta_);
      for (int h = 0; h < 20 && f_new > f_old + 1e-12 * std::abs(f_old); ++h) {
        beta_ = 0.5 * (beta_ + beta_old);
        b0_ = 0.5 * (b0_ + b0_old);
        theta_ = z_ * beta_;
        theta_.array() += b0_;
        f_new = penalized_objective(w, beta_, theta_);
      }
      const double change = std::max((beta_ - beta_old).cwiseAbs().maxCoeff(), std::abs(b0_ - b0_old));
      if (change < cfg_.tol) return cd_ok;
    }
    return false;
  }

 private:
  double sweep(const Vector& weights, Vector& resid, const Vector& w, const Vector& v, const std::vector<int>& coords,
               bool with_intercept) {
    double max_change = 0.0;
    if (with_intercept) {
      const double v0 = weights.sum() / n_;
      const double g = weights.dot(resid) / n_ + v0 * b0_;
      const double next = g / v0;
      const double delta = next - b0_;
      if (delta != 0.0) {
        resid.array() -= delta;
        b0_ = next;
        max_change = std::abs(delta);
      }
    }
    for (int j : coords) {
      if (v[j] <= 0.0) continue;
      const auto col = z_.col(j);
      double g = 0.0;
      for (Eigen::Index i = 0; i < col.size(); ++i) g += weights[i] * col[i] * resid[i];
      g = g / n_ + v[j] * beta_[j];
      const double next = soft_threshold(g, w[j]) / v[j];
      const double delta = next - beta_[j];
      if (delta != 0.0) {
        resid -= delta * col;
        beta_[j] = next;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    return max_change;
  }

  bool coordinate_descent(const Vector& weights, Vector& resid, const Vector& w) {
    const Eigen::Index q = z_.cols();
    Vector v(q);
    for (Eigen::Index j = 0; j < q; ++j) v[j] = weights.dot(z_.col(j).cwiseAbs2()) / n_;

    std::vector<int> all(static_cast<std::size_t>(q));
    std::iota(all.begin(), all.end(), 0);
    int sweeps = 0;
    while (sweeps < cfg_.max_sweeps) {
      const double full = sweep(weights, resid, w, v, all, intercept_);
      ++sweeps;
      if (full < cfg_.tol) return true;
      std::vector<int> active;
      for (Eigen::Index j = 0; j < q; ++j) {
        if (beta_[j] != 0.0) active.push_back(static_cast<int>(j));
      }
      while (sweeps < cfg_.max_sweeps) {
        const double change = sweep(weights, resid, w, v, active, intercept_);
        ++sweeps;
        if (change < cfg_.tol) break;
      }
    }
    return false;
  }

  const Family& family_;
  const VectorRef& y_;
  const Matrix& z_;
  bool intercept_;
  const PathConfig& cfg_;
  double n_;
  Vector beta_;
  double b0_ = 0.0;
  Vector theta_;
};

}  // namespace

std::string_view to_string(Penalty penalty) {
  return penalty == Penalty::sica ? "sica" : "lasso";
}

Penalty parse_penalty(std::string_view name) {
  if (name == "sica") return Penalty::sica;
  if (name == "lasso") return Penalty::lasso;
  throw InvalidArgument("unknown penalty '" + std::string(name) + "'");
}

double sica_penalty(double t, double lambda, double a) { return lambda * (a + 1.0) * t / (a + t); }

double sica_derivative(double t, double lambda, double a) {
  return lambda * (a + 1.0) * a / ((a + t) * (a + t));
}

double saturated_loglik(const Family& family, const VectorRef& y) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double v = y[i];
    switch (family.kind) {
      case Family::Kind::gaussian: s += 0.5 * v * v; break;
      case Family::Kind::bernoulli:
        if (v > 0.0 && v < 1.0) s += v * std::log(v) + (1.0 - v) * std::log(1.0 - v);
        break;
      case Family::Kind::poisson:
        if (v > 0.0) s += v * std::log(v) - v;
        break;
    }
  }
  return s;
}

CandidatePath penalized_path(const Family& family, const VectorRef& y, const MatrixRef& x,
                             const Support& screen_set, const PathConfig& config) {
  if (x.rows() != y.size()) throw ShapeError("design rows do not match response length");
  if (config.penalty == Penalty::sica && !(config.a > 0.0)) throw InvalidArgument("SICA shape a must be positive");
  if (config.lambdas.empty() && config.n_lambda < 2) throw InvalidArgument("n_lambda must be at least 2");
  if (config.lambdas.empty() && !(config.lambda_min_ratio > 0.0 && config.lambda_min_ratio < 1.0)) {
    throw InvalidArgument("lambda_min_ratio must lie in (0, 1)");
  }
  for (std::size_t k = 0; k < screen_set.size(); ++k) {
    if (screen_set[k] < 0 || screen_set[k] >= x.cols()) throw InvalidArgument("screen index out of range");
    if (k > 0 && screen_set[k] <= screen_set[k - 1]) throw InvalidArgument("screen set must be strictly increasing");
  }

  const Eigen::Index n = x.rows();
  const auto q = static_cast<Eigen::Index>(screen_set.size());
  const double dn = static_cast<double>(n);

  CandidatePath out;
  out.screen_set = screen_set;

  Matrix z(n, q);
  Vector scale(q);
  for (Eigen::Index j = 0; j < q; ++j) {
    const auto col = x.col(screen_set[static_cast<std::size_t>(j)]);
    scale[j] = std::sqrt(col.squaredNorm() / dn);
    if (scale[j] > 0.0) {
      z.col(j) = col / scale[j];
    } else {
      z.col(j).setZero();
      out.warnings.push_back("column " + std::to_string(screen_set[static_cast<std::size_t>(j)]) +
                             " is identically zero; never enters the path");
    }
  }

  const double b0_init = config.intercept ? inverse_link_of_mean(family, y.mean()) : 0.0;
  WeightedLassoSolver solver(family, y, z, config.intercept, config);
  solver.reset(b0_init);
  if (config.intercept) {
    // Settle the intercept-only fit before measuring lambda_max.
    solver.solve(Vector::Constant(q, std::numeric_limits<double>::infinity()));
  }

  const Vector start_theta = solver.theta();
  const Vector start_resid = y - mean(family, start_theta);
  const double grad_max = q > 0 ? (z.transpose() * start_resid).cwiseAbs().maxCoeff() / dn : 0.0;
  const double penalty_factor = config.penalty == Penalty::sica ? config.a / (config.a + 1.0) : 1.0;
  out.lambda_max = grad_max * penalty_factor;

  if (!config.lambdas.empty()) {
    out.lambda_grid = Eigen::Map<const Vector>(config.lambdas.data(), static_cast<Eigen::Index>(config.lambdas.size()));
  } else {
    out.lambda_grid.resize(config.n_lambda);
    for (int k = 0; k < config.n_lambda; ++k) {
      const double frac = static_cast<double>(k) / static_cast<double>(config.n_lambda - 1);
      out.lambda_grid[k] = out.lambda_max * std::pow(config.lambda_min_ratio, frac);
    }
  }

  const long max_support = config.max_support > 0
                               ? config.max_support
                               : std::min<long>(static_cast<long>(n) - 1, static_cast<long>(q));
  const double ll_sat = saturated_loglik(family, y);
  const double dev_null = 2.0 * (ll_sat - quasi_log_likelihood_at(family, y, start_theta));
  const int rounds = config.penalty == Penalty::lasso ? 1 : std::max(1, config.max_lla_rounds);

  std::set<Support> seen;
  Vector w(q);
  for (Eigen::Index k = 0; k < out.lambda_grid.size(); ++k) {
    const double lambda = out.lambda_grid[k];
    if (config.cold_start) solver.reset(b0_init);

    bool converged = true;
    for (int r = 0; r < rounds; ++r) {
      for (Eigen::Index j = 0; j < q; ++j) {
        w[j] = config.penalty == Penalty::lasso ? lambda : sica_derivative(std::abs(solver.beta()[j]), lambda, config.a);
      }
      const Vector before = solver.beta();
      converged = solver.solve(w);
      if (!converged) break;
      if (r > 0 && (solver.beta() - before).cwiseAbs().maxCoeff() < config.tol) break;
    }

    PathPoint point;
    point.lambda = lambda;
    point.converged = converged;
    point.beta = solver.beta().cwiseQuotient(scale.cwiseMax(1e-300));
    point.intercept = solver.intercept();
    for (Eigen::Index j = 0; j < q; ++j) {
      if (solver.beta()[j] != 0.0) point.support.push_back(screen_set[static_cast<std::size_t>(j)]);
    }

    if (static_cast<long>(point.support.size()) > max_support) {
      out.warnings.push_back("path stopped at lambda index " + std::to_string(k) + ": support size " +
                             std::to_string(point.support.size()) + " exceeds " + std::to_string(max_support));
      break;
    }
    if (!converged) {
      out.warnings.push_back("inner solve did not converge at lambda index " + std::to_string(k) + "; skipped");
      continue;
    }
    if (seen.insert(point.support).second) out.supports.push_back(point.support);
    out.points.push_back(std::move(point));

    if (dev_null > 0.0) {
      const double dev = 2.0 * (ll_sat - quasi_log_likelihood_at(family, y, solver.theta()));
      if (1.0 - dev / dev_null > config.max_deviance_ratio) break;
    }
  }
  return out;
}

CandidatePath sica_path(const Family& family, const VectorRef& y, const MatrixRef& x_screened, PathConfig config) {
  config.penalty = Penalty::sica;
  Support all(static_cast<std::size_t>(x_screened.cols()));
  std::iota(all.begin(), all.end(), 0);
  return penalized_path(family, y, x_screened, all, config);
}

CandidatePath lasso_path(const Family& family, const VectorRef& y, const MatrixRef& x_screened, PathConfig config) {
  config.penalty = Penalty::lasso;
  Support all(static_cast<std::size_t>(x_screened.cols()));
  std::iota(all.begin(), all.end(), 0);
  return penalized_path(family, y, x_screened, all, config);
}

}  // namespace qmsel
