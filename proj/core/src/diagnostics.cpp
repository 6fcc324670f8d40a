#include "qmsel/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qmsel/contrast.hpp"
#include "qmsel/errors.hpp"
#include "qmsel/qmle.hpp"
#include "qmsel/rng.hpp"
#include "qmsel/scenario.hpp"
#include "qmsel/stats.hpp"

namespace qmsel {
namespace {

Matrix normal_design(int n, int d, std::uint64_t seed) {
  Matrix x(n, d);
  for (int j = 0; j < d; ++j) {
    x.col(j) = gaussian_column(stream_seed(seed, 0, Stream::diagnostic_design, static_cast<std::uint64_t>(j)), n);
  }
  return x;
}

double logistic(double t) { return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t)); }

// Symmetric inverse square root of an SPD matrix.
Matrix inverse_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
    throw NonSpdError("matrix is not positive definite");
  }
  return eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
}

}  // namespace

DiagnosticDesign multiple_index_design(int n, int d, double sigma, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("design needs at least one column");
  DiagnosticDesign out;
  out.x = normal_design(n, d, seed);
  Matrix lead = Matrix::Zero(n, 5);
  lead.leftCols(std::min(d, 5)) = out.x.leftCols(std::min(d, 5));
  out.truth.expected_y = scenario_mean(Scenario::multiple_index, lead);
  out.truth.var_y = Vector::Constant(n, sigma * sigma);
  out.truth.noise = Truth::Noise::gaussian;
  return out;
}

DiagnosticDesign linear_design(int n, const VectorRef& beta_star, double sigma, std::uint64_t seed) {
  DiagnosticDesign out;
  out.x = normal_design(n, static_cast<int>(beta_star.size()), seed);
  out.truth.expected_y = out.x * beta_star;
  out.truth.var_y = Vector::Constant(n, sigma * sigma);
  out.truth.noise = Truth::Noise::gaussian;
  return out;
}

DiagnosticDesign logistic_design(int n, const VectorRef& beta_star, std::uint64_t seed) {
  DiagnosticDesign out;
  out.x = normal_design(n, static_cast<int>(beta_star.size()), seed);
  const Vector theta = out.x * beta_star;
  out.truth.expected_y = theta.unaryExpr([](double t) { return logistic(t); });
  out.truth.var_y = out.truth.expected_y.array() * (1.0 - out.truth.expected_y.array());
  out.truth.noise = Truth::Noise::bernoulli;
  return out;
}

Vector draw_response(const Truth& truth, std::uint64_t seed, int rep) {
  const int base = rep - (rep % 2);
  const bool mirror = (rep % 2) == 1;
  Engine engine(stream_seed(seed, static_cast<std::uint64_t>(base), Stream::diagnostic_noise));
  const Eigen::Index n = truth.expected_y.size();
  Vector y(n);
  if (truth.noise == Truth::Noise::gaussian) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double e = normal(engine) * std::sqrt(truth.var_y[i]);
      y[i] = truth.expected_y[i] + (mirror ? -e : e);
    }
  } else {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double u0 = unif(engine);
      const double u = mirror ? 1.0 - u0 : u0;
      y[i] = u < truth.expected_y[i] ? 1.0 : 0.0;
    }
  }
  return y;
}

KlDiagnostic kl_expansion_diagnostic(const Family& family, const MatrixRef& x, const Truth& truth, int n_reps,
                                     std::uint64_t seed) {
  if (n_reps < 1) throw InsufficientReplications("KL expansion diagnostic needs at least one replication");
  const ContrastEstimate population = true_contrast(family, x, truth.expected_y, truth.var_y);

  KlDiagnostic out;
  out.trace_h = population.trace_h;
  out.n_reps = n_reps;
  double sum_eta = 0.0;
  double sum_ll = 0.0;
  for (int r = 0; r < n_reps; ++r) {
    const Vector y = draw_response(truth, seed, r);
    const FittedModel f = fit(family, y, x);
    const Vector theta = x * f.beta_hat;
    sum_eta += truth.expected_y.dot(theta) - cumulant_sum(family, theta);
    sum_ll += f.loglik;
  }
  out.lhs = sum_eta / n_reps;
  out.rhs = sum_ll / n_reps - out.trace_h;
  out.rel_gap = std::abs(out.lhs - out.rhs) / std::max(out.trace_h, 1.0);
  return out;
}

NormalityDiagnostic normality_diagnostic(const Family& family, const MatrixRef& x, const Truth& truth,
                                         const VectorRef& direction, int n_reps, std::uint64_t seed, double alpha) {
  if (n_reps < 100) throw InsufficientReplications("normality diagnostic needs at least 100 replications");
  if (direction.size() != x.cols()) throw ShapeError("direction length must equal the number of columns");
  const double norm = direction.norm();
  if (!(norm > 0.0)) throw InvalidArgument("direction must be non-zero");
  const Vector a = direction / norm;

  const Vector beta0 = best_misspecified_params(family, truth.expected_y, x);
  const ContrastEstimate population = true_contrast(family, x, truth.expected_y, truth.var_y);
  const Matrix c = inverse_sqrt(population.b_hat) * population.a_hat;
  const Vector projector = c.transpose() * a;

  std::vector<double> z;
  z.reserve(static_cast<std::size_t>(n_reps));
  for (int r = 0; r < n_reps; ++r) {
    // Antithetic partners are not independent; use even draws only.
    const Vector y = draw_response(truth, seed, 2 * r);
    const FittedModel f = fit(family, y, x);
    z.push_back(projector.dot(f.beta_hat - beta0));
  }
  NormalityDiagnostic out;
  out.n_reps = n_reps;
  out.ks_stat = ks_statistic_normal(z);
  out.p_value = kolmogorov_survival(std::sqrt(static_cast<double>(n_reps)) * out.ks_stat);
  out.pass = out.p_value >= alpha;
  return out;
}

std::vector<ConsistencyPoint> consistency_curve(const std::vector<int>& ns, int d, double sigma, int n_reps,
                                                std::uint64_t seed) {
  if (n_reps < 1) throw InsufficientReplications("consistency curve needs at least one replication");
  const Family family = Family::gaussian();
  std::vector<ConsistencyPoint> out;
  for (int n : ns) {
    const DiagnosticDesign design = multiple_index_design(n, d, sigma, mix64(seed ^ static_cast<std::uint64_t>(n)));
    const Vector beta0 = best_misspecified_params(family, design.truth.expected_y, design.x);
    const ContrastEstimate population = true_contrast(family, design.x, design.truth.expected_y, design.truth.var_y);

    ConsistencyPoint pt;
    pt.n = n;
    pt.trace_h = population.trace_h;
    int ok = 0;
    for (int r = 0; r < n_reps; ++r) {
      // Even draws only, so replications are independent.
      const Vector y = draw_response(design.truth, seed, 2 * r);
      const FittedModel f = fit(family, y, design.x);
      pt.mean_beta_error += (f.beta_hat - beta0).norm();
      try {
        const ContrastEstimate est = estimate_contrast(family, design.x, y, f.beta_hat);
        pt.mean_trace_error += std::abs(est.trace_h - population.trace_h);
        pt.mean_trace_hat += est.trace_h;
        ++ok;
      } catch (const DegenerateContrast&) {
        ++pt.failures;
      }
    }
    pt.mean_beta_error /= n_reps;
    if (ok > 0) {
      pt.mean_trace_error /= ok;
      pt.mean_trace_hat /= ok;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace qmsel
