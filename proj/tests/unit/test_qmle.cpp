#include <cmath>

#include <gtest/gtest.h>

#include "qmsel/errors.hpp"
#include "qmsel/qmle.hpp"
#include "test_util.hpp"

using namespace qmsel;

TEST(Qmle, GaussianSampleMean) {
  const auto m = fit(Family::gaussian(), Vector{{1.0, 3.0}}, Matrix::Ones(2, 1));
  ASSERT_TRUE(m.converged);
  EXPECT_NEAR(m.beta_hat[0], 2.0, 1e-12);
  EXPECT_NEAR(m.loglik, 4.0, 1e-12);
}

TEST(Qmle, BernoulliInterceptOnly) {
  const auto m = fit(Family::bernoulli(), Vector{{1.0, 1.0, 0.0, 0.0}}, Matrix::Ones(4, 1));
  ASSERT_TRUE(m.converged);
  EXPECT_NEAR(m.beta_hat[0], 0.0, 1e-12);
  EXPECT_NEAR(m.loglik, -2.7725887, 1e-7);
}

TEST(Qmle, BernoulliMatchesGridSearch) {
  const Matrix x = testutil::normal_matrix(20, 2, 7);
  const Vector y = testutil::bernoulli_response(x * Vector{{1.0, -0.7}}, 8);
  const auto m = fit(Family::bernoulli(), y, x);
  ASSERT_TRUE(m.converged);

  // Coarse pass at 1e-2, then 1e-3 around the coarse optimum.
  auto ll = [&](double b0, double b1) { return quasi_log_likelihood(Family::bernoulli(), y, x, Vector{{b0, b1}}); };
  double best = -1e300, g0 = 0, g1 = 0;
  for (int i = -500; i <= 500; ++i)
    for (int j = -500; j <= 500; ++j) {
      const double v = ll(i * 1e-2, j * 1e-2);
      if (v > best) best = v, g0 = i * 1e-2, g1 = j * 1e-2;
    }
  const double c0 = g0, c1 = g1;
  for (int i = -20; i <= 20; ++i)
    for (int j = -20; j <= 20; ++j) {
      const double b0 = c0 + i * 1e-3, b1 = c1 + j * 1e-3;
      if (std::abs(b0) > 5 || std::abs(b1) > 5) continue;
      const double v = ll(b0, b1);
      if (v > best) best = v, g0 = b0, g1 = b1;
    }
  EXPECT_NEAR(m.beta_hat[0], g0, 2e-3);
  EXPECT_NEAR(m.beta_hat[1], g1, 2e-3);
}

TEST(Qmle, LoglikEqualsLikelihoodAtEstimate) {
  const Matrix x = testutil::normal_matrix(40, 3, 3);
  const Vector y = (0.5 * (x * Vector{{0.2, -0.4, 0.1}})).array().exp().round().matrix();
  const auto m = fit(Family::poisson(), y, x);
  EXPECT_EQ(m.loglik, quasi_log_likelihood(Family::poisson(), y, x, m.beta_hat));
}

TEST(Qmle, SupportOverloadRecordsSupport) {
  const Matrix x = testutil::normal_matrix(30, 6, 4);
  const Vector y = x.col(1) - x.col(4) + 0.1 * testutil::normal_vector(30, 5);
  const auto m = fit(Family::gaussian(), y, x, Support{1, 4});
  EXPECT_EQ(m.support, (Support{1, 4}));
  EXPECT_NEAR(m.beta_hat[0], 1.0, 0.1);
  EXPECT_NEAR(m.beta_hat[1], -1.0, 0.1);
}

TEST(Qmle, SingularDesign) {
  Matrix x = testutil::normal_matrix(10, 2, 1);
  x.col(1) = 2.0 * x.col(0);
  EXPECT_THROW(fit(Family::gaussian(), Vector::Ones(10), x), SingularDesign);
  EXPECT_THROW(fit(Family::gaussian(), Vector::Ones(2), testutil::normal_matrix(2, 3, 1)), SingularDesign);
}

TEST(Qmle, SeparationDiverges) {
  const Matrix x{{-1.0}, {-50.0}, {1.0}, {50.0}};
  const Vector y{{0.0, 0.0, 1.0, 1.0}};
  try {
    fit(Family::bernoulli(), y, x);
    FAIL() << "expected divergence";
  } catch (const Divergence& e) {
    EXPECT_GT((x * e.last_iterate()).cwiseAbs().maxCoeff(), 300.0);
  }
}

TEST(Qmle, BestMisspecifiedInterceptOnly) {
  const Vector b = best_misspecified_params(Family::bernoulli(), Vector{{0.75, 0.75}}, Matrix::Ones(2, 1));
  EXPECT_NEAR(b[0], std::log(3.0), 1e-9);
}

TEST(Qmle, BestMisspecifiedCorrectGaussian) {
  const Matrix x = testutil::normal_matrix(25, 3, 9);
  const Vector beta{{0.5, -1.0, 2.0}};
  EXPECT_LT((best_misspecified_params(Family::gaussian(), x * beta, x) - beta).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Qmle, BestMisspecifiedCubicIsProjection) {
  Matrix x(10, 2);
  Vector ey(10);
  for (int i = 0; i < 10; ++i) {
    const double t = -1.0 + 2.0 * i / 9.0;
    x(i, 0) = 1.0;
    x(i, 1) = t;
    ey[i] = t * t * t + 0.5 * t;
  }
  const Vector proj = (x.transpose() * x).ldlt().solve(x.transpose() * ey);
  EXPECT_LT((best_misspecified_params(Family::gaussian(), ey, x) - proj).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Qmle, BestMisspecifiedRejectsOutOfRangeMean) {
  EXPECT_THROW(best_misspecified_params(Family::bernoulli(), Vector{{1.0, 0.5}}, Matrix::Ones(2, 1)),
               InvalidArgument);
  EXPECT_THROW(best_misspecified_params(Family::poisson(), Vector{{0.0, 1.0}}, Matrix::Ones(2, 1)), InvalidArgument);
}

// Properties.

TEST(QmleProperty, OlsEquivalence) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Matrix x = testutil::normal_matrix(50, 5, seed);
    const Vector y = testutil::normal_vector(50, seed + 1000) + x.col(0);
    const auto m = fit(Family::gaussian(), y, x);
    const Vector ols = x * (x.transpose() * x).ldlt().solve(x.transpose() * y);
    EXPECT_LE((x * m.beta_hat - ols).cwiseAbs().maxCoeff(), 1e-8) << "seed " << seed;
  }
}

TEST(QmleProperty, ScoreNormExitCondition) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Matrix x = testutil::normal_matrix(80, 4, seed);
    const Vector theta = x * Vector{{0.8, -0.5, 0.3, 0.0}};
    const Vector yb = testutil::bernoulli_response(theta, seed + 7);
    const Vector yp = theta.array().exp().round().matrix();
    for (auto [f, y] : {std::pair{Family::bernoulli(), yb}, std::pair{Family::poisson(), yp}}) {
      const auto m = fit(f, y, x);
      ASSERT_TRUE(m.converged);
      const double limit = 1e-8 * (1.0 + (x.transpose() * y).cwiseAbs().maxCoeff());
      EXPECT_LE(m.score_inf_norm, limit);
      const Vector score = x.transpose() * (y - mean(f, x * m.beta_hat));
      EXPECT_NEAR(score.cwiseAbs().maxCoeff(), m.score_inf_norm, 1e-12 * (1.0 + limit));
    }
  }
}

TEST(QmleProperty, Equivariance) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Matrix x = testutil::normal_matrix(60, 3, seed);
    const Matrix t = testutil::invertible_matrix(3, seed + 50);
    const Vector y = testutil::bernoulli_response(x * Vector{{1.0, -0.5, 0.25}}, seed + 60);
    const auto a = fit(Family::bernoulli(), y, x);
    const auto b = fit(Family::bernoulli(), y, x * t);
    EXPECT_LT((t * b.beta_hat - a.beta_hat).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_NEAR(a.loglik, b.loglik, 1e-9);
  }
}

TEST(QmleProperty, MonotoneAscent) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Matrix x = testutil::normal_matrix(50, 4, seed);
    const Vector theta = x * Vector{{2.0, -1.0, 1.5, 0.5}};
    const Vector y = testutil::bernoulli_response(theta, seed + 1);
    try {
      const auto m = fit(Family::bernoulli(), y, x);
      for (std::size_t k = 1; k < m.loglik_trace.size(); ++k)
        EXPECT_GE(m.loglik_trace[k], m.loglik_trace[k - 1] - 1e-13 * (1.0 + std::abs(m.loglik_trace[k - 1])))
            << "seed " << seed << " step " << k;
    } catch (const Divergence&) {
      // Separated draw; nothing to check.
    }
  }
}
