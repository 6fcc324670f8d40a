#include "qmsel/screen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qmsel/errors.hpp"
#include "qmsel/rng.hpp"
#include "qmsel/stats.hpp"

namespace qmsel {
namespace {

struct StandardizedColumns {
  Matrix z;
  std::vector<bool> constant;
};

StandardizedColumns standardize(const MatrixRef& x) {
  StandardizedColumns out{Matrix(x.rows(), x.cols()), std::vector<bool>(static_cast<std::size_t>(x.cols()), false)};
  const double n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) m += x(i, j);
    m /= n;
    double ss = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double c = x(i, j) - m;
      out.z(i, j) = c;
      ss += c * c;
    }
    const double norm = std::sqrt(ss);
    if (!(norm > 1e-12 * (1.0 + std::abs(m)) * std::sqrt(n))) {
      out.constant[static_cast<std::size_t>(j)] = true;
      out.z.col(j).setZero();
      continue;
    }
    for (Eigen::Index i = 0; i < x.rows(); ++i) out.z(i, j) /= norm;
  }
  return out;
}

Vector centred(const VectorRef& y) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) m += y[i];
  m /= static_cast<double>(y.size());
  Vector c(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) c[i] = y[i] - m;
  return c;
}

Vector statistic_of(const StandardizedColumns& s, const Vector& yc) {
  Vector stat(s.z.cols());
  for (Eigen::Index j = 0; j < s.z.cols(); ++j) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.z.rows(); ++i) acc += s.z(i, j) * yc[i];
    stat[j] = std::abs(acc);
  }
  return stat;
}

}  // namespace

Vector marginal_statistic(const VectorRef& y, const MatrixRef& x, std::vector<int>* constant_columns) {
  if (x.rows() != y.size()) throw ShapeError("design rows do not match response length");
  const auto s = standardize(x);
  if (constant_columns != nullptr) {
    constant_columns->clear();
    for (std::size_t j = 0; j < s.constant.size(); ++j) {
      if (s.constant[j]) constant_columns->push_back(static_cast<int>(j));
    }
  }
  return statistic_of(s, centred(y));
}

ScreenResult sis_screen(const Family& /*family*/, const VectorRef& y, const MatrixRef& x,
                        const ScreenConfig& config) {
  if (x.cols() < 1) throw InvalidArgument("screening needs at least one column");
  if (x.rows() != y.size()) throw ShapeError("design rows do not match response length");

  const auto s = standardize(x);
  const Vector yc = centred(y);

  ScreenResult out;
  out.statistic = statistic_of(s, yc);
  std::vector<int> candidates;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (s.constant[static_cast<std::size_t>(j)]) {
      out.warnings.push_back("column " + std::to_string(j) + " is constant; excluded from screening");
    } else {
      candidates.push_back(static_cast<int>(j));
    }
  }

  if (const auto* fixed = std::get_if<FixedCount>(&config)) {
    if (fixed->k < 0 || fixed->k > x.cols()) throw InvalidArgument("screen count k must lie in [0, p]");
    out.threshold = std::numeric_limits<double>::quiet_NaN();
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](int a, int b) { return out.statistic[a] > out.statistic[b]; });
    const auto keep = std::min<std::size_t>(static_cast<std::size_t>(fixed->k), candidates.size());
    out.kept.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep));
  } else {
    const auto& perm = std::get<PermutationThreshold>(config);
    if (perm.permutations < 1) throw InvalidArgument("permutation count must be positive");
    if (!(perm.quantile >= 0.0 && perm.quantile <= 1.0)) throw InvalidArgument("quantile must lie in [0, 1]");
    Engine engine(perm.seed);
    Vector y_perm = yc;
    std::vector<double> maxima;
    maxima.reserve(static_cast<std::size_t>(perm.permutations));
    for (int k = 0; k < perm.permutations; ++k) {
      std::shuffle(y_perm.begin(), y_perm.end(), engine);
      const Vector stat = statistic_of(s, y_perm);
      maxima.push_back(stat.maxCoeff());
    }
    out.threshold = quantile(maxima, perm.quantile);
    for (int j : candidates) {
      if (out.statistic[j] > out.threshold) out.kept.push_back(j);
    }
  }
  std::sort(out.kept.begin(), out.kept.end());
  return out;
}

}  // namespace qmsel
