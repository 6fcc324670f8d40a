#pragma once

#include <cstdint>
#include <vector>

#include "qmsel/family.hpp"
#include "qmsel/types.hpp"

namespace qmsel {

/// Known data-generating distribution of a fixed design: mean, variance and
/// how a response vector is drawn from them.
struct Truth {
  enum class Noise { gaussian, bernoulli };
  Vector expected_y;
  Vector var_y;
  Noise noise = Noise::gaussian;
};

/// Fixed design plus truth used by the theory diagnostics.
struct DiagnosticDesign {
  Matrix x;
  Truth truth;
};

/// n x d standard normal design with Ey = f(x1) + f(x2 - x3) + f(x4 - x5)
/// restricted to the available columns (d = 5 reproduces the simulation
/// truth exactly) and var_y = sigma^2.
DiagnosticDesign multiple_index_design(int n, int d, double sigma, std::uint64_t seed);

/// Gaussian truth Ey = X beta_star, var_y = sigma^2: the working model is correct.
DiagnosticDesign linear_design(int n, const VectorRef& beta_star, double sigma, std::uint64_t seed);

/// Bernoulli truth drawn from the logistic working model itself.
DiagnosticDesign logistic_design(int n, const VectorRef& beta_star, std::uint64_t seed);

/// Draws replication `rep` of the response. Draws come in antithetic pairs:
/// odd replications mirror the preceding even one (noise -e for gaussian,
/// uniforms 1 - u for bernoulli).
Vector draw_response(const Truth& truth, std::uint64_t seed, int rep);

struct KlDiagnostic {
  /// Monte Carlo mean of eta(beta_hat) = Ey'X beta_hat - 1'b(X beta_hat).
  double lhs = 0.0;
  /// Monte Carlo mean of l(y, beta_hat) - tr(H_n).
  double rhs = 0.0;
  /// |lhs - rhs| / max(tr(H_n), 1).
  double rel_gap = 0.0;
  double trace_h = 0.0;
  int n_reps = 0;
};

/// Checks E eta(beta_hat) = E l(y, beta_hat) - tr(H_n) by simulation on a
/// fixed design. Throws InsufficientReplications when n_reps < 1.
KlDiagnostic kl_expansion_diagnostic(const Family& family, const MatrixRef& x, const Truth& truth, int n_reps,
                                     std::uint64_t seed);

struct NormalityDiagnostic {
  double ks_stat = 0.0;
  double p_value = 0.0;
  bool pass = false;
  int n_reps = 0;
};

/// Standardized projection z = a' B_n^{-1/2} A_n (beta_hat - beta0) per
/// replication, tested against N(0, 1) with the asymptotic Kolmogorov
/// distribution. `direction` is normalized to unit length. Requires
/// n_reps >= 100.
NormalityDiagnostic normality_diagnostic(const Family& family, const MatrixRef& x, const Truth& truth,
                                         const VectorRef& direction, int n_reps, std::uint64_t seed,
                                         double alpha = 0.01);

struct ConsistencyPoint {
  int n = 0;
  double mean_beta_error = 0.0;   ///< mean ||beta_hat - beta0||_2
  double mean_trace_error = 0.0;  ///< mean |tr(H_hat) - tr(H_n)|
  double mean_trace_hat = 0.0;
  double trace_h = 0.0;
  int failures = 0;
};

/// QMLE and contrast-estimate errors against their population targets on
/// the multiple-index truth (gaussian working model, d columns) for each n.
std::vector<ConsistencyPoint> consistency_curve(const std::vector<int>& ns, int d, double sigma, int n_reps,
                                                std::uint64_t seed);

}  // namespace qmsel
