#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "qmsel/errors.hpp"
#include "qmsel/rng.hpp"
#include "qmsel/scenario.hpp"
#include "qmsel/screen.hpp"
#include "qmsel/stats.hpp"
#include "test_util.hpp"

using namespace qmsel;

TEST(Screen, PerfectCorrelationTopOne) {
  const Matrix x = testutil::normal_matrix(50, 8, 1);
  const auto r = sis_screen(Family::gaussian(), x.col(3), x, FixedCount{1});
  EXPECT_EQ(r.kept, (Support{3}));
  EXPECT_NEAR(r.statistic[3], (x.col(3).array() - x.col(3).mean()).matrix().norm(), 1e-10);
}

TEST(Screen, KeepAllDropsConstantColumns) {
  Matrix x = testutil::normal_matrix(30, 6, 2);
  x.col(2).setConstant(4.0);
  const auto r = sis_screen(Family::gaussian(), testutil::normal_vector(30, 3), x, FixedCount{6});
  EXPECT_EQ(r.kept, (Support{0, 1, 3, 4, 5}));
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("column 2"), std::string::npos);
}

TEST(Screen, InvalidConfig) {
  const Matrix x = testutil::normal_matrix(10, 3, 4);
  const Vector y = testutil::normal_vector(10, 5);
  EXPECT_THROW(sis_screen(Family::gaussian(), y, x, FixedCount{4}), InvalidArgument);
  EXPECT_THROW(sis_screen(Family::gaussian(), y, x, PermutationThreshold{0, 1.0, 1}), InvalidArgument);
  EXPECT_THROW(sis_screen(Family::gaussian(), y, x, PermutationThreshold{5, 1.5, 1}), InvalidArgument);
  EXPECT_THROW(sis_screen(Family::gaussian(), Vector::Zero(9), x, FixedCount{1}), ShapeError);
}

namespace {

// Straightforward re-implementation of the permutation screen.
Support naive_permutation_screen(const Matrix& x, const Vector& y, int permutations, double q, std::uint64_t seed) {
  const auto n = x.rows();
  Matrix z(n, x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    double m = 0;
    for (Eigen::Index i = 0; i < n; ++i) m += x(i, j);
    m /= static_cast<double>(n);
    double ss = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      z(i, j) = x(i, j) - m;
      ss += z(i, j) * z(i, j);
    }
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) /= std::sqrt(ss);
  }
  double ym = 0;
  for (Eigen::Index i = 0; i < n; ++i) ym += y[i];
  ym /= static_cast<double>(n);
  Vector yc(n);
  for (Eigen::Index i = 0; i < n; ++i) yc[i] = y[i] - ym;
  auto stat = [&](const Vector& v, Eigen::Index j) {
    double acc = 0;
    for (Eigen::Index i = 0; i < n; ++i) acc += z(i, j) * v[i];
    return std::abs(acc);
  };
  Engine engine(seed);
  Vector yp = yc;
  std::vector<double> maxima;
  for (int k = 0; k < permutations; ++k) {
    std::shuffle(yp.begin(), yp.end(), engine);
    double mx = 0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) mx = std::max(mx, stat(yp, j));
    maxima.push_back(mx);
  }
  std::sort(maxima.begin(), maxima.end());
  const double h = (permutations - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min<std::size_t>(lo + 1, maxima.size() - 1);
  const double thr = maxima[lo] + (h - std::floor(h)) * (maxima[hi] - maxima[lo]);
  Support kept;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    if (stat(yc, j) > thr) kept.push_back(static_cast<int>(j));
  return kept;
}

}  // namespace

TEST(Screen, PermutationMatchesNaiveLoop) {
  auto cfg = default_config(Scenario::multiple_index, 200);
  const auto data = generate(cfg, 0);
  const std::uint64_t seed = 4242;
  const auto r = sis_screen(Family::gaussian(), data.y, data.x, PermutationThreshold{10, 1.0, seed});
  EXPECT_EQ(r.kept, naive_permutation_screen(data.x, data.y, 10, 1.0, seed));
  EXPECT_FALSE(r.kept.empty());

  const auto r2 = sis_screen(Family::gaussian(), data.y, data.x, PermutationThreshold{10, 0.5, seed});
  EXPECT_EQ(r2.kept, naive_permutation_screen(data.x, data.y, 10, 0.5, seed));
}

TEST(ScreenProperty, KeepsStrongEffectsInLinearScenario) {
  auto cfg = default_config(Scenario::linear_interaction_weak, 200);
  int all_kept = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto data = generate(cfg, rep);
    const auto r = sis_screen(data.family, data.y, data.x,
                              PermutationThreshold{10, 1.0, stream_seed(cfg.master_seed, rep, Stream::screen_permutation)});
    all_kept += std::includes(r.kept.begin(), r.kept.end(), data.oracle_strong.begin(), data.oracle_strong.end());
  }
  EXPECT_GE(all_kept, 95);
}
