#include "qmsel/contrast.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "qmsel/errors.hpp"
#include "qmsel/qmle.hpp"

namespace qmsel {
namespace {

constexpr double kEigFloor = 1e-12;

// X' diag(w) X assembled as a rank update of the lower triangle, mirrored.
Matrix weighted_gram(const MatrixRef& x, const Vector& root_weights) {
  const Matrix xw = root_weights.asDiagonal() * x;
  Matrix g = Matrix::Zero(x.cols(), x.cols());
  g.selfadjointView<Eigen::Lower>().rankUpdate(xw.transpose());
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return g;
}

void check_design(const MatrixRef& x, const VectorRef& beta) {
  if (x.cols() != beta.size()) throw ShapeError("design columns do not match coefficient length");
}

}  // namespace

Matrix estimate_a(const Family& family, const MatrixRef& x, const VectorRef& beta_hat) {
  check_design(x, beta_hat);
  const Vector theta = x * beta_hat;
  return weighted_gram(x, variance(family, theta).cwiseSqrt());
}

Matrix estimate_b(const Family& family, const MatrixRef& x, const VectorRef& y,
                  const VectorRef& beta_hat) {
  check_design(x, beta_hat);
  if (x.rows() != y.size()) throw ShapeError("design rows do not match response length");
  const Vector theta = x * beta_hat;
  const Vector resid = y - mean(family, theta);
  return weighted_gram(x, resid.cwiseAbs());
}

ContrastEstimate contrast(const MatrixRef& a, const MatrixRef& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw ShapeError("contrast matrices must be square and of equal size");
  }
  ContrastEstimate out;
  out.a_hat = a;
  out.b_hat = b;
  const Eigen::Index d = a.rows();
  if (d == 0) {
    out.gen_eigs = Vector(0);
    return out;
  }

  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success || (llt.matrixLLT().diagonal().array() <= 0.0).any()) {
    throw NonSpdError("A is not symmetric positive definite");
  }
  // W = L^{-1} B L^{-T}
  Matrix w = llt.matrixL().solve(b);
  w = llt.matrixL().solve(w.transpose()).eval();
  w = 0.5 * (w + w.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(w, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NonSpdError("generalized eigenproblem failed");
  out.gen_eigs = eig.eigenvalues();

  const double top = std::max(out.gen_eigs.maxCoeff(), 1.0);
  const double floor = kEigFloor * top;
  if (out.gen_eigs.minCoeff() <= floor) {
    throw DegenerateContrast(fmt::format("generalized eigenvalue {:.3g} at or below floor {:.3g}",
                                         out.gen_eigs.minCoeff(), floor));
  }
  out.trace_h = out.gen_eigs.sum();
  out.logdet_h = out.gen_eigs.array().log().sum();
  return out;
}

ContrastEstimate true_contrast(const Family& family, const MatrixRef& x, const VectorRef& expected_y,
                               const VectorRef& var_y) {
  if (x.rows() != expected_y.size() || x.rows() != var_y.size()) {
    throw ShapeError("truth vectors do not match design rows");
  }
  if ((var_y.array() <= 0.0).any()) throw InvalidArgument("var_y must be positive");
  const Vector beta0 = best_misspecified_params(family, expected_y, x);
  const Matrix a = estimate_a(family, x, beta0);
  const Matrix b = weighted_gram(x, var_y.cwiseSqrt());
  return contrast(a, b);
}

ContrastEstimate estimate_contrast(const Family& family, const MatrixRef& x, const VectorRef& y,
                                   const VectorRef& beta_hat) {
  return contrast(estimate_a(family, x, beta_hat), estimate_b(family, x, y, beta_hat));
}

}  // namespace qmsel
