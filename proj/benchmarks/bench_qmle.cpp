#include <benchmark/benchmark.h>

#include "qmsel/contrast.hpp"
#include "qmsel/qmle.hpp"
#include "qmsel/rng.hpp"
#include "qmsel/scenario.hpp"

using namespace qmsel;

namespace {

Matrix design(int n, int d) {
  Matrix x(n, d);
  for (int j = 0; j < d; ++j) x.col(j) = gaussian_column(mix64(17 + static_cast<std::uint64_t>(j)), n);
  return x;
}

Vector logistic_response(const Matrix& x) {
  const Vector u = gaussian_column(mix64(99), x.rows());
  Vector y(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) y[i] = u[i] < 0.7 * x(i, 0) - 0.4 * x(i, 1) ? 1.0 : 0.0;
  return y;
}

void BM_FitBernoulli(benchmark::State& state) {
  const Matrix x = design(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const Vector y = logistic_response(x);
  for (auto _ : state) benchmark::DoNotOptimize(fit(Family::bernoulli(), y, x).loglik);
}
BENCHMARK(BM_FitBernoulli)->Args({200, 5})->Args({2000, 10})->Args({2000, 40});

void BM_EstimateContrast(benchmark::State& state) {
  const Matrix x = design(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const Vector y = logistic_response(x);
  const auto f = fit(Family::bernoulli(), y, x);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_contrast(Family::bernoulli(), x, y, f.beta_hat).trace_h);
}
BENCHMARK(BM_EstimateContrast)->Args({200, 5})->Args({2000, 40});

}  // namespace
