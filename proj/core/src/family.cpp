#include "qmsel/family.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmsel/errors.hpp"

namespace qmsel {
namespace {

void require_finite(double theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("non-finite natural parameter");
}

void require_finite(const VectorRef& theta) {
  if (!theta.allFinite()) throw InvalidArgument("non-finite natural parameter");
}

double logistic(double theta) {
  if (theta >= 0.0) {
    return 1.0 / (1.0 + std::exp(-theta));
  }
  const double e = std::exp(theta);
  return e / (1.0 + e);
}

}  // namespace

std::string_view to_string(Family::Kind kind) {
  switch (kind) {
    case Family::Kind::gaussian: return "gaussian";
    case Family::Kind::bernoulli: return "bernoulli";
    case Family::Kind::poisson: return "poisson";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "gaussian" || name == "normal") return Family::gaussian();
  if (name == "bernoulli" || name == "logistic" || name == "binomial") return Family::bernoulli();
  if (name == "poisson") return Family::poisson();
  throw InvalidArgument("unknown family '" + std::string(name) + "'");
}

double cumulant(const Family& family, double theta) {
  require_finite(theta);
  switch (family.kind) {
    case Family::Kind::gaussian: return 0.5 * theta * theta;
    case Family::Kind::bernoulli: return std::log1p(std::exp(-std::abs(theta))) + std::max(theta, 0.0);
    case Family::Kind::poisson: return std::exp(theta);
  }
  return 0.0;
}

double mean(const Family& family, double theta) {
  require_finite(theta);
  switch (family.kind) {
    case Family::Kind::gaussian: return theta;
    case Family::Kind::bernoulli: return logistic(theta);
    case Family::Kind::poisson: return std::exp(theta);
  }
  return 0.0;
}

double raw_variance(const Family& family, double theta) {
  require_finite(theta);
  switch (family.kind) {
    case Family::Kind::gaussian: return 1.0;
    case Family::Kind::bernoulli: {
      // e^{-|t|} / (1 + e^{-|t|})^2 keeps precision in both tails.
      const double e = std::exp(-std::abs(theta));
      return e / ((1.0 + e) * (1.0 + e));
    }
    case Family::Kind::poisson: return std::exp(theta);
  }
  return 0.0;
}

double variance(const Family& family, double theta) {
  return std::max(raw_variance(family, theta), kVarianceFloor);
}

Vector mean(const Family& family, const VectorRef& theta) {
  require_finite(theta);
  Vector out(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) out[i] = mean(family, theta[i]);
  return out;
}

Vector variance(const Family& family, const VectorRef& theta) {
  require_finite(theta);
  Vector out(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) out[i] = variance(family, theta[i]);
  return out;
}

double cumulant_sum(const Family& family, const VectorRef& theta) {
  require_finite(theta);
  double s = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) s += cumulant(family, theta[i]);
  return s;
}

double quasi_log_likelihood_at(const Family& family, const VectorRef& y, const VectorRef& theta) {
  if (y.size() != theta.size()) throw ShapeError("response and linear predictor lengths differ");
  return y.dot(theta) - cumulant_sum(family, theta);
}

double quasi_log_likelihood(const Family& family, const VectorRef& y, const MatrixRef& x,
                            const VectorRef& beta) {
  if (x.rows() != y.size()) throw ShapeError("design rows do not match response length");
  if (x.cols() != beta.size()) throw ShapeError("design columns do not match coefficient length");
  if (!y.allFinite() || !x.allFinite() || !beta.allFinite()) {
    throw InvalidArgument("non-finite entry in likelihood input");
  }
  const Vector theta = x * beta;
  return quasi_log_likelihood_at(family, y, theta);
}

}  // namespace qmsel
