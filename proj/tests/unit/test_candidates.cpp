#include <cmath>

#include <gtest/gtest.h>

#include "qmsel/candidates.hpp"
#include "qmsel/scenario.hpp"
#include "test_util.hpp"

using namespace qmsel;

TEST(Candidates, NullModelConvention) {
  const Matrix x = testutil::normal_matrix(20, 3, 1);
  const Vector y = testutil::bernoulli_response(x.col(0), 2);
  const auto c = refit_candidate(Family::bernoulli(), y, x, {}, 20, 3);
  ASSERT_TRUE(c.scores.has_value());
  EXPECT_EQ(c.scores->model_size, 0u);
  EXPECT_NEAR(c.scores->loglik, -20.0 * std::log(2.0), 1e-12);
  EXPECT_EQ(*c.scores->trace_h, 0.0);
  EXPECT_EQ(*c.scores->logdet_h, 0.0);
  EXPECT_EQ(*c.scores->gbicp, c.scores->aic);
}

TEST(Candidates, SingleCandidate) {
  const Matrix x = testutil::normal_matrix(30, 4, 3);
  const Vector y = x.col(1) + testutil::normal_vector(30, 4);
  const auto fits = refit_and_score(std::vector<Support>{{1}}, Family::gaussian(), y, x, 30, 4);
  ASSERT_EQ(fits.size(), 1u);
  EXPECT_EQ(fits[0].status, "ok");
}

TEST(Candidates, FailuresAreFlaggedNotThrown) {
  Matrix x = testutil::normal_matrix(12, 3, 5);
  x.col(2) = x.col(0);
  Vector y = testutil::normal_vector(12, 6);
  const auto fits = refit_and_score(std::vector<Support>{{0}, {0, 2}}, Family::gaussian(), y, x, 12, 3);
  ASSERT_EQ(fits.size(), 2u);
  EXPECT_TRUE(fits[0].fitted.has_value());
  EXPECT_FALSE(fits[1].fitted.has_value());
  EXPECT_FALSE(fits[1].scores.has_value());
  EXPECT_NE(fits[1].status, "ok");

  // Perfect fit: B is singular, only AIC/BIC remain.
  Matrix xi = Matrix::Identity(3, 3);
  const auto exact = refit_candidate(Family::gaussian(), Vector{{1.0, 2.0, 3.0}}, xi, {0, 1, 2}, 3, 3);
  ASSERT_TRUE(exact.scores.has_value());
  EXPECT_FALSE(exact.contrast.has_value());
  EXPECT_FALSE(exact.scores->gbicp.has_value());
  EXPECT_TRUE(exact.scores->value(Criterion::bic).has_value());
}

TEST(Candidates, CompositionReplay) {
  const auto data = generate(default_config(Scenario::multiple_index, 80), 4);
  const auto path = sica_path(data.family, data.y, data.x, {});
  const long n = data.x.rows(), p = data.x.cols();
  const auto fits = refit_and_score(path, data.family, data.y, data.x, n, p);
  ASSERT_EQ(fits.size(), path.supports.size());
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const auto& s = path.supports[i];
    if (s.empty() || !fits[i].contrast) continue;
    const auto m = fit(data.family, data.y, data.x, s);
    const auto c = estimate_contrast(data.family, select_columns(data.x, s), data.y, m.beta_hat);
    const auto sc = score_model(m, &c, n, p);
    for (auto crit : kAllCriteria) EXPECT_EQ(*fits[i].scores->value(crit), *sc.value(crit));
  }
}
