#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qmsel/contrast.hpp"
#include "qmsel/criteria.hpp"
#include "qmsel/errors.hpp"
#include "qmsel/qmle.hpp"
#include "test_util.hpp"

using namespace qmsel;

TEST(Score, HandEvaluation) {
  const auto s = score(-50.0, 3, 3.5, -0.4, 100, 1000);
  EXPECT_EQ(s.p_star, 1000);
  EXPECT_DOUBLE_EQ(s.aic, 106.0);
  EXPECT_NEAR(s.bic, 113.8155106, 1e-7);
  EXPECT_NEAR(*s.gaic, 107.0, 1e-12);
  EXPECT_NEAR(*s.gbic, 114.2155106, 1e-7);
  EXPECT_NEAR(*s.gbicp_l, 117.7155106, 1e-7);
  EXPECT_NEAR(*s.gbicp, 145.3465317, 1e-7);
}

TEST(Score, IdentityContrastReduction) {
  const auto s = score(-12.5, 4, 4.0, 0.0, 80, 300);
  EXPECT_EQ(*s.gaic, s.aic);
  EXPECT_EQ(*s.gbicp_l, s.bic + 4.0);
}

TEST(Score, PStarIsNWhenPSmall) {
  const auto s = score(-10.0, 2, 2.5, 0.3, 200, 50);
  EXPECT_EQ(s.p_star, 200);
  EXPECT_NEAR(*s.gbicp, 20.0 + 2.0 * std::log(200.0) * 2 + 2.5 - 0.3, 1e-12);
}

TEST(Score, MissingContrastLeavesGeneralizedEmpty) {
  const auto s = score(-10.0, 2, std::nullopt, std::nullopt, 50, 60);
  EXPECT_FALSE(s.gaic || s.gbic || s.gbicp_l || s.gbicp);
  EXPECT_TRUE(s.value(Criterion::aic).has_value());
  EXPECT_TRUE(s.value(Criterion::bic).has_value());
}

TEST(ScoreModel, NonConvergedFit) {
  FittedModel m;
  m.support = {0, 1};
  m.loglik = -3.0;
  m.converged = false;
  ContrastEstimate c;
  c.trace_h = 2.0;
  c.logdet_h = 0.1;
  const auto s = score_model(m, &c, 10, 10);
  EXPECT_FALSE(s.gaic.has_value());
  EXPECT_DOUBLE_EQ(s.aic, 10.0);
  m.converged = true;
  EXPECT_TRUE(score_model(m, &c, 10, 10).gbicp.has_value());
  EXPECT_FALSE(score_model(m, nullptr, 10, 10).gbicp.has_value());
}

TEST(Select, StrictMinimum) {
  std::vector<ScoredCandidate> c{{0, score(-1.0, 2, 2.0, 0.0, 10, 10)}, {1, score(-0.0, 2, 2.0, 0.0, 10, 10)}};
  c[0].scores->gbicp = 10.0;
  c[1].scores->gbicp = 12.0;
  EXPECT_EQ(select(c, Criterion::gbicp), 0u);
}

TEST(Select, TieBreakBySizeThenId) {
  std::vector<ScoredCandidate> c{{0, score(0.0, 4, 4.0, 0.0, 10, 10)}, {1, score(0.0, 2, 2.0, 0.0, 10, 10)},
                                 {2, score(0.0, 2, 2.0, 0.0, 10, 10)}};
  for (auto& x : c) x.scores->gbicp = 10.0;
  EXPECT_EQ(select(c, Criterion::gbicp), 1u);
}

TEST(Select, SkipsUnavailable) {
  std::vector<ScoredCandidate> c{{0, std::nullopt}, {1, score(0.0, 1, std::nullopt, std::nullopt, 10, 10)},
                                 {2, score(5.0, 3, 3.0, 0.0, 10, 10)}};
  EXPECT_EQ(select(c, Criterion::gbic), 2u);
  EXPECT_EQ(select(c, Criterion::aic), 2u);
  std::vector<ScoredCandidate> none{{0, std::nullopt}, {1, score(0.0, 1, std::nullopt, std::nullopt, 10, 10)}};
  EXPECT_THROW(select(none, Criterion::gaic), NoSelectableModel);
}

TEST(Criterion, Names) {
  for (auto c : kAllCriteria) EXPECT_EQ(parse_criterion(to_string(c)), c);
  EXPECT_EQ(to_string(Criterion::gbicp_l), "gbicp_l");
  EXPECT_THROW(parse_criterion("hqc"), InvalidArgument);
}

TEST(CriteriaProperty, ReparameterizationInvariance) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Matrix x = testutil::normal_matrix(80, 3, seed);
    const Matrix t = testutil::invertible_matrix(3, seed + 31);
    const Vector y = testutil::bernoulli_response(x * Vector{{0.9, -0.6, 0.0}} + x.col(0).cwiseAbs2() * 0.3, seed + 3);
    const Matrix xt = x * t;
    const auto m1 = fit(Family::bernoulli(), y, x);
    const auto m2 = fit(Family::bernoulli(), y, xt);
    const auto c1 = estimate_contrast(Family::bernoulli(), x, y, m1.beta_hat);
    const auto c2 = estimate_contrast(Family::bernoulli(), xt, y, m2.beta_hat);
    const auto s1 = score_model(m1, &c1, 80, 500);
    const auto s2 = score_model(m2, &c2, 80, 500);
    for (auto c : kAllCriteria) EXPECT_NEAR(*s1.value(c), *s2.value(c), 1e-6) << to_string(c);
  }
}

TEST(CriteriaProperty, GaicEqualsAicUnderIdentityContrast) {
  for (int size = 0; size < 50; ++size) {
    const double ll = -0.37 * size - 11.0;
    const auto s = score(ll, static_cast<std::size_t>(size), static_cast<double>(size), 0.0, 100, 400);
    EXPECT_EQ(*s.gaic, s.aic);
  }
}

TEST(CriteriaProperty, GbicpDominatesGbicplWhenPAtLeastN) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto u = testutil::normal_vector(3, seed);
    const long n = 8 + static_cast<long>(seed % 300);
    const long p = n + static_cast<long>(seed * 7 % 1000);
    const std::size_t size = seed % 12;
    const auto s = score(-std::abs(u[0]) * 20, size, std::abs(u[1]) * size, u[2], n, p);
    EXPECT_GE(*s.gbicp, *s.gbicp_l);
    EXPECT_EQ(s.aic, -2.0 * s.loglik + 2.0 * static_cast<double>(size));
    EXPECT_EQ(s.bic, -2.0 * s.loglik + std::log(static_cast<double>(n)) * static_cast<double>(size));
  }
}
