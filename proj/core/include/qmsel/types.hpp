#pragma once

#include <vector>

#include <Eigen/Dense>

namespace qmsel {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;
using MatrixRef = Eigen::Ref<const Eigen::MatrixXd>;

/// Strictly increasing 0-based column indices into a full design.
using Support = std::vector<int>;

/// Copies the columns listed in `support` out of `x`.
inline Matrix select_columns(const MatrixRef& x, const Support& support) {
  Matrix out(x.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = x.col(support[k]);
  return out;
}

}  // namespace qmsel
