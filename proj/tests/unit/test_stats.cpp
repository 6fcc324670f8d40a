#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qmsel/stats.hpp"

using namespace qmsel;

TEST(Stats, QuantileType7) {
  const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile(v, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(median(v), 2.5);
  EXPECT_THROW(quantile(std::vector<double>{}, 0.5), std::exception);
}

TEST(Stats, RobustSd) {
  EXPECT_EQ(robust_sd(std::vector<double>(9, 3.25)), 0.0);
  std::vector<double> v;
  for (int i = 0; i <= 100; ++i) v.push_back(i);
  EXPECT_NEAR(robust_sd(v), 50.0 / 1.349, 1e-12);
}

TEST(Stats, NormalCdf) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
}

TEST(Stats, KolmogorovSurvival) {
  // Reference values of the limiting distribution.
  EXPECT_NEAR(kolmogorov_survival(1.3580986393225505), 0.05, 1e-6);
  EXPECT_NEAR(kolmogorov_survival(1.6276236115189), 0.01, 1e-6);
  EXPECT_DOUBLE_EQ(kolmogorov_survival(0.0), 1.0);
  EXPECT_LT(kolmogorov_survival(5.0), 1e-20);
  // Median of the limiting distribution.
  EXPECT_NEAR(kolmogorov_survival(0.8275735551899077), 0.5, 1e-9);
  // Both series agree where they hand over.
  EXPECT_NEAR(kolmogorov_survival(1.0 - 1e-12), kolmogorov_survival(1.0), 1e-10);
}

TEST(Stats, KsStatistic) {
  EXPECT_NEAR(ks_statistic_normal({0.0}), 0.5, 1e-15);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  std::vector<double> s(2000);
  for (auto& v : s) v = z(rng);
  EXPECT_LT(ks_statistic_normal(s), 0.04);
  for (auto& v : s) v += 0.5;
  EXPECT_GT(ks_statistic_normal(s), 0.15);
}
