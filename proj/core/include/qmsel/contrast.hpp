#pragma once

#include "qmsel/family.hpp"
#include "qmsel/types.hpp"

namespace qmsel {

/// Plug-in (or population) estimate of the covariance contrast matrix
/// H = A^{-1} B, summarized by its eigenvalues. H itself is never formed:
/// with A = LL', the eigenvalues of H are those of the symmetric L^{-1} B L^{-T}.
struct ContrastEstimate {
  Matrix a_hat;
  Matrix b_hat;
  /// Eigenvalues of A^{-1} B, ascending.
  Vector gen_eigs;
  double trace_h = 0.0;
  double logdet_h = 0.0;
};

/// A = X' diag(b''(X beta)) X, with floored variances. Exactly symmetric.
Matrix estimate_a(const Family& family, const MatrixRef& x, const VectorRef& beta_hat);

/// B = X' diag(r o r) X with r = y - mu(X beta). Exactly symmetric, PSD.
Matrix estimate_b(const Family& family, const MatrixRef& x, const VectorRef& y,
                  const VectorRef& beta_hat);

/// Throws NonSpdError if `a` fails Cholesky and DegenerateContrast if any
/// generalized eigenvalue is <= 1e-12 * max(largest eigenvalue, 1).
ContrastEstimate contrast(const MatrixRef& a, const MatrixRef& b);

/// Population contrast at the KL-closest parameter: A_n = X' Sigma(X beta0) X
/// and B_n = X' diag(var_y) X.
ContrastEstimate true_contrast(const Family& family, const MatrixRef& x, const VectorRef& expected_y,
                               const VectorRef& var_y);

/// Convenience: contrast(estimate_a, estimate_b) at a fitted coefficient vector.
ContrastEstimate estimate_contrast(const Family& family, const MatrixRef& x, const VectorRef& y,
                                   const VectorRef& beta_hat);

}  // namespace qmsel
