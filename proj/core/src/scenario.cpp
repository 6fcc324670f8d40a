#include "qmsel/scenario.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qmsel/errors.hpp"
#include "qmsel/rng.hpp"

namespace qmsel {
namespace {

constexpr double kBetaLinear[10] = {1.0, -1.25, 0.75, -0.95, 1.5, 0.1, -0.1, 0.1, -0.1, 0.1};
constexpr double kBetaLogistic[5] = {2.5, -1.9, 2.8, -2.2, 3.0};

int leading_columns(Scenario s) {
  return (s == Scenario::linear_interaction_weak || s == Scenario::linear_interaction_weak_correct) ? 10 : 5;
}

bool is_linear_interaction(Scenario s) {
  return s == Scenario::linear_interaction_weak || s == Scenario::linear_interaction_weak_correct;
}

Support range(int lo, int hi) {
  Support s;
  for (int j = lo; j < hi; ++j) s.push_back(j);
  return s;
}

double logistic(double t) { return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t)); }

Vector uniform_draws(std::uint64_t seed, Eigen::Index rows) {
  Engine engine(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector u(rows);
  for (Eigen::Index i = 0; i < rows; ++i) u[i] = unif(engine);
  return u;
}

// Response draw given the mean; `noise_seed` feeds Gaussian errors or the
// Bernoulli uniforms.
Vector draw_response(Scenario s, const Vector& ey, double sigma, std::uint64_t noise_seed) {
  if (s == Scenario::logistic_interaction) {
    const Vector u = uniform_draws(noise_seed, ey.size());
    Vector y(ey.size());
    for (Eigen::Index i = 0; i < ey.size(); ++i) y[i] = u[i] < ey[i] ? 1.0 : 0.0;
    return y;
  }
  return ey + sigma * gaussian_column(noise_seed, ey.size());
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::linear_interaction_weak: return "linear_interaction_weak";
    case Scenario::linear_interaction_weak_correct: return "linear_interaction_weak_correct";
    case Scenario::multiple_index: return "multiple_index";
    case Scenario::logistic_interaction: return "logistic_interaction";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  for (Scenario s : {Scenario::linear_interaction_weak, Scenario::linear_interaction_weak_correct,
                     Scenario::multiple_index, Scenario::logistic_interaction}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidArgument("unknown scenario '" + std::string(name) + "'");
}

Family working_family(Scenario s) {
  return s == Scenario::logistic_interaction ? Family::bernoulli() : Family::gaussian();
}

double multiple_index_link(double t) { return t * t * t / (t * t + 1.0); }

ScenarioConfig default_config(Scenario s, int p) {
  ScenarioConfig c;
  c.scenario = s;
  c.p = p;
  c.n = s == Scenario::logistic_interaction ? 200 : 100;
  c.sigma = 0.25;
  return c;
}

void validate(const ScenarioConfig& c) {
  if (c.n < 10) throw InvalidArgument("n must be at least 10");
  if (c.p < 10) throw InvalidArgument("p must be at least 10");
  if (c.test_size < 1) throw InvalidArgument("test_size must be at least 1");
  if (c.n_reps < 1) throw InvalidArgument("n_reps must be at least 1");
  if (!(c.sigma >= 0.0)) throw InvalidArgument("sigma must be non-negative");
  if (c.workers < 0) throw InvalidArgument("workers must be non-negative");
  if (c.screen.mode == ScreenSettings::Mode::fixed_count && (c.screen.k < 1 || c.screen.k > c.p)) {
    throw InvalidArgument("screen k must lie in [1, p]");
  }
}

Vector gaussian_column(std::uint64_t seed, Eigen::Index rows) {
  Engine engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(rows);
  for (Eigen::Index i = 0; i < rows; ++i) v[i] = normal(engine);
  return v;
}

Vector scenario_mean(Scenario s, const MatrixRef& c) {
  if (c.cols() < leading_columns(s)) throw ShapeError("not enough leading columns for the scenario mean");
  const Eigen::Index n = c.rows();
  Vector ey(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    switch (s) {
      case Scenario::linear_interaction_weak:
      case Scenario::linear_interaction_weak_correct: {
        double v = c(i, 0) * c(i, 1);
        for (int j = 0; j < 10; ++j) v += kBetaLinear[j] * c(i, j);
        ey[i] = v;
        break;
      }
      case Scenario::multiple_index:
        ey[i] = multiple_index_link(c(i, 0)) + multiple_index_link(c(i, 1) - c(i, 2)) +
                multiple_index_link(c(i, 3) - c(i, 4));
        break;
      case Scenario::logistic_interaction: {
        double theta = 2.0 * c(i, 0) * c(i, 1) + 2.0 * c(i, 2) * c(i, 3);
        for (int j = 0; j < 5; ++j) theta += kBetaLogistic[j] * c(i, j);
        ey[i] = logistic(theta);
        break;
      }
    }
  }
  return ey;
}

TestSet::TestSet(Scenario scenario, int p, int size, double sigma, std::uint64_t master_seed, std::uint64_t rep)
    : scenario_(scenario), p_(p), size_(size), master_seed_(master_seed), rep_(rep) {
  Matrix lead(size, leading_columns(scenario));
  for (int j = 0; j < lead.cols(); ++j) lead.col(j) = column(j);
  ey_ = scenario_mean(scenario, lead);
  y_ = draw_response(scenario, ey_, sigma, stream_seed(master_seed, rep, Stream::test_noise));
}

Vector TestSet::column(int j) const {
  if (j == p_ && scenario_ == Scenario::linear_interaction_weak_correct) {
    return column(0).cwiseProduct(column(1));
  }
  if (j < 0 || j >= p_) throw InvalidArgument("test column index out of range");
  return gaussian_column(stream_seed(master_seed_, rep_, Stream::test_design, static_cast<std::uint64_t>(j)), size_);
}

Matrix TestSet::design(const Support& columns) const {
  Matrix out(size_, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = column(columns[k]);
  return out;
}

Dataset generate(const ScenarioConfig& config, int rep_index) {
  validate(config);
  const auto rep = static_cast<std::uint64_t>(rep_index);
  const std::uint64_t seed = config.master_seed;
  const Scenario s = config.scenario;

  Dataset d;
  d.scenario = s;
  d.family = working_family(s);

  const bool correct = s == Scenario::linear_interaction_weak_correct;
  d.x.resize(config.n, config.p + (correct ? 1 : 0));
  for (int j = 0; j < config.p; ++j) {
    d.x.col(j) = gaussian_column(stream_seed(seed, rep, Stream::train_design, static_cast<std::uint64_t>(j)), config.n);
  }
  if (correct) d.x.col(config.p) = d.x.col(0).cwiseProduct(d.x.col(1));

  d.expected_y = scenario_mean(s, d.x.leftCols(leading_columns(s)));
  d.y = draw_response(s, d.expected_y, config.sigma, stream_seed(seed, rep, Stream::train_noise));
  if (s == Scenario::logistic_interaction) {
    d.var_y = d.expected_y.array() * (1.0 - d.expected_y.array());
  } else {
    d.var_y = Vector::Constant(config.n, config.sigma * config.sigma);
  }

  if (is_linear_interaction(s)) {
    d.oracle = range(0, 10);
    d.oracle_strong = range(0, 5);
    d.oracle_weak = range(5, 10);
    if (correct) {
      d.oracle.push_back(config.p);
      d.oracle_strong.push_back(config.p);
    }
    d.target = d.oracle_strong;
  } else {
    d.oracle = range(0, 5);
    d.oracle_strong = d.oracle;
    d.target = d.oracle;
  }

  d.test = TestSet(s, config.p, config.test_size, config.sigma, seed, rep);
  return d;
}

}  // namespace qmsel
