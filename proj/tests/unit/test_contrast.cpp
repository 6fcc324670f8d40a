#include <cmath>

#include <gtest/gtest.h>

#include "qmsel/contrast.hpp"
#include "qmsel/errors.hpp"
#include "qmsel/qmle.hpp"
#include "qmsel/scenario.hpp"
#include "test_util.hpp"

using namespace qmsel;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(EstimateA, GaussianIsGram) {
  const Matrix x = testutil::normal_matrix(20, 3, 1);
  const Matrix a = estimate_a(Family::gaussian(), x, Vector{{5.0, -2.0, 1.0}});
  EXPECT_LT((a - x.transpose() * x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EstimateA, BernoulliAtZero) {
  const Matrix a = estimate_a(Family::bernoulli(), Matrix::Identity(2, 2), Vector::Zero(2));
  EXPECT_TRUE(a.isApprox(0.25 * Matrix::Identity(2, 2)));
}

TEST(EstimateA, PoissonHandValue) {
  const Matrix a = estimate_a(Family::poisson(), Matrix::Ones(2, 1), Vector{{std::log(2.0)}});
  EXPECT_NEAR(a(0, 0), 4.0, 1e-14);
}

TEST(EstimateB, ZeroResiduals) {
  const Matrix x = testutil::normal_matrix(15, 2, 2);
  const Vector beta{{0.3, -0.2}};
  for (auto f : {Family::gaussian(), Family::bernoulli(), Family::poisson()}) {
    const Vector y = mean(f, x * beta);
    EXPECT_LT(estimate_b(f, x, y, beta).cwiseAbs().maxCoeff(), 1e-28);
  }
}

TEST(EstimateB, SquaredResiduals) {
  const Matrix b = estimate_b(Family::gaussian(), Matrix::Identity(2, 2), Vector{{1.0, -2.0}}, Vector::Zero(2));
  EXPECT_DOUBLE_EQ(b(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(b(1, 1), 4.0);
  EXPECT_DOUBLE_EQ(b(0, 1), 0.0);
}

TEST(EstimateB, NaiveLoopOracle) {
  const Matrix x = testutil::normal_matrix(50, 3, 3);
  const Vector y = testutil::normal_vector(50, 4);
  const Vector beta{{0.1, 0.2, -0.3}};
  const Matrix b = estimate_b(Family::gaussian(), x, y, beta);
  const Vector r = y - x * beta;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      double s = 0.0;
      for (int i = 0; i < 50; ++i) s += r[i] * r[i] * x(i, j) * x(i, k);
      EXPECT_LE(rel(b(j, k), s), 1e-12);
    }
  EXPECT_EQ((b - b.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Contrast, Identity) {
  const auto c = contrast(Matrix::Identity(2, 2), Matrix::Identity(2, 2));
  EXPECT_DOUBLE_EQ(c.trace_h, 2.0);
  EXPECT_NEAR(c.logdet_h, 0.0, 1e-15);
}

TEST(Contrast, Diagonal) {
  const Matrix a = Vector{{2.0, 2.0}}.asDiagonal();
  const Matrix b = Vector{{4.0, 8.0}}.asDiagonal();
  const auto c = contrast(a, b);
  EXPECT_NEAR(c.gen_eigs[0], 2.0, 1e-14);
  EXPECT_NEAR(c.gen_eigs[1], 4.0, 1e-14);
  EXPECT_NEAR(c.trace_h, 6.0, 1e-14);
  EXPECT_NEAR(c.logdet_h, 2.0794415, 1e-7);
}

TEST(Contrast, DenseInverseOracle) {
  for (int d = 1; d <= 5; ++d) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Matrix a = testutil::spd_matrix(d, seed);
      const Matrix b = testutil::spd_matrix(d, seed + 999);
      const Matrix h = a.inverse() * b;
      const auto c = contrast(a, b);
      EXPECT_LE(rel(c.trace_h, h.trace()), 1e-10);
      EXPECT_LE(rel(c.logdet_h, std::log(h.determinant())), 1e-10);
      for (Eigen::Index k = 1; k < c.gen_eigs.size(); ++k) EXPECT_LE(c.gen_eigs[k - 1], c.gen_eigs[k]);
    }
  }
}

TEST(Contrast, Errors) {
  const Matrix not_spd{{1.0, 2.0}, {2.0, 1.0}};
  EXPECT_THROW(contrast(not_spd, Matrix::Identity(2, 2)), NonSpdError);
  const Matrix singular_b = Vector{{1.0, 0.0}}.asDiagonal();
  EXPECT_THROW(contrast(Matrix::Identity(2, 2), singular_b), DegenerateContrast);
}

TEST(Contrast, FloorIsScaleInvariant) {
  // Tiny but legitimate eigenvalues survive when everything is tiny.
  const auto c = contrast(Matrix::Identity(2, 2), 1e-6 * Matrix::Identity(2, 2));
  EXPECT_NEAR(c.trace_h, 2e-6, 1e-18);
  const Matrix b = Vector{{1e6, 1e-7}}.asDiagonal();
  EXPECT_THROW(contrast(Matrix::Identity(2, 2), b), DegenerateContrast);
}

TEST(TrueContrast, CorrectGaussianUnitVariance) {
  const Matrix x = testutil::normal_matrix(40, 3, 5);
  const auto c = true_contrast(Family::gaussian(), x, x * Vector{{1.0, 0.0, -1.0}}, Vector::Ones(40));
  EXPECT_NEAR(c.trace_h, 3.0, 1e-10);
  EXPECT_NEAR(c.logdet_h, 0.0, 1e-10);
}

TEST(TrueContrast, HomoskedasticRescale) {
  const Matrix x = testutil::normal_matrix(40, 4, 6);
  const double s2 = 0.0625;
  const auto c = true_contrast(Family::gaussian(), x, x.col(0), Vector::Constant(40, s2));
  EXPECT_NEAR(c.trace_h, 4 * s2, 1e-12);
  for (Eigen::Index k = 0; k < 4; ++k) EXPECT_NEAR(c.gen_eigs[k], s2, 1e-12);
}

TEST(TrueContrast, MultipleIndexNaiveAssembly) {
  Matrix x(100, 5);
  for (int j = 0; j < 5; ++j) x.col(j) = gaussian_column(1000 + j, 100);
  const Vector ey = scenario_mean(Scenario::multiple_index, x);
  const Vector var = Vector::Constant(100, 0.0625);
  const auto c = true_contrast(Family::gaussian(), x, ey, var);

  Matrix a = Matrix::Zero(5, 5), b = Matrix::Zero(5, 5);
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        a(j, k) += x(i, j) * x(i, k);
        b(j, k) += var[i] * x(i, j) * x(i, k);
      }
  const Matrix h = a.inverse() * b;
  EXPECT_LE(rel(c.trace_h, h.trace()), 1e-10);
  EXPECT_LE(rel(c.logdet_h, std::log(h.determinant())), 1e-10);
  EXPECT_LT((c.a_hat - a).cwiseAbs().maxCoeff(), 1e-10 * a.cwiseAbs().maxCoeff());
}

TEST(EstimateContrast, SymmetricOutputs) {
  const Matrix x = testutil::normal_matrix(60, 4, 8);
  const Vector y = testutil::bernoulli_response(x.col(0), 9);
  const auto m = fit(Family::bernoulli(), y, x);
  const auto c = estimate_contrast(Family::bernoulli(), x, y, m.beta_hat);
  EXPECT_LE((c.a_hat - c.a_hat.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((c.b_hat - c.b_hat.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GT(c.gen_eigs.minCoeff(), 0.0);
}

TEST(ContrastProperty, ReparameterizationInvariance) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int d = 1 + static_cast<int>(seed % 5);
    const Matrix a = testutil::spd_matrix(d, seed);
    const Matrix b = testutil::spd_matrix(d, seed + 7);
    const Matrix t = testutil::invertible_matrix(d, seed + 13);
    const auto c1 = contrast(a, b);
    const auto c2 = contrast(t.transpose() * a * t, t.transpose() * b * t);
    EXPECT_LE(rel(c2.trace_h, c1.trace_h), 1e-8);
    EXPECT_LE(rel(c2.logdet_h, c1.logdet_h), 1e-8);
  }
}
