#pragma once

#include <string>
#include <string_view>

#include "qmsel/types.hpp"

namespace qmsel {

/// Canonical-link exponential family given by its cumulant function b(theta).
///
///   gaussian   b = theta^2 / 2        mean = theta          var = 1
///   bernoulli  b = log(1 + e^theta)   mean = logistic(theta) var = mean (1 - mean)
///   poisson    b = e^theta            mean = e^theta        var = e^theta
///
/// The gaussian member has unit dispersion; any other response variance is
/// picked up by the B matrix of the contrast estimate.
struct Family {
  enum class Kind { gaussian, bernoulli, poisson };

  Kind kind = Kind::gaussian;
  /// Bound on |theta| used by the QMLE solver to flag divergence. Never used
  /// to alter reported likelihoods.
  double theta_cap = 30.0;

  static Family gaussian() { return {Kind::gaussian}; }
  static Family bernoulli() { return {Kind::bernoulli}; }
  static Family poisson() { return {Kind::poisson}; }

  friend bool operator==(const Family&, const Family&) = default;
};

/// Solver-side floor on b''(theta).
inline constexpr double kVarianceFloor = 1e-10;

std::string_view to_string(Family::Kind kind);
/// Accepts "gaussian", "bernoulli" (alias "logistic", "binomial") and "poisson".
Family parse_family(std::string_view name);

double cumulant(const Family& family, double theta);
double mean(const Family& family, double theta);
/// b''(theta) floored at kVarianceFloor.
double variance(const Family& family, double theta);
/// b''(theta) without the floor.
double raw_variance(const Family& family, double theta);

// Elementwise forms over a linear predictor. All throw InvalidArgument on
// non-finite entries.
Vector mean(const Family& family, const VectorRef& theta);
Vector variance(const Family& family, const VectorRef& theta);
double cumulant_sum(const Family& family, const VectorRef& theta);

/// l(y, beta) = y'X beta - 1'b(X beta), with the beta-free base-measure term
/// dropped.
double quasi_log_likelihood(const Family& family, const VectorRef& y, const MatrixRef& x,
                            const VectorRef& beta);

/// Same quantity given the linear predictor theta = X beta directly.
double quasi_log_likelihood_at(const Family& family, const VectorRef& y, const VectorRef& theta);

}  // namespace qmsel
