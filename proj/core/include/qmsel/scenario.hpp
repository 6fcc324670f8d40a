#pragma once

#include <cstdint>
#include <map>
#include <string_view>

#include "qmsel/family.hpp"
#include "qmsel/path.hpp"
#include "qmsel/screen.hpp"
#include "qmsel/types.hpp"

namespace qmsel {

/// Simulation designs. Rows of X are iid N(0, I_p) throughout.
///
///   linear_interaction_weak          y = X b + x1 o x2 + e,  b = (1, -1.25, 0.75, -0.95, 1.5, 0.1, -0.1, 0.1, -0.1, 0.1, 0, ...)
///   linear_interaction_weak_correct  same data, x1 o x2 appended as design column p
///   multiple_index                   y = f(x1) + f(x2 - x3) + f(x4 - x5) + e,  f(t) = t^3 / (t^2 + 1)
///   logistic_interaction             y ~ Bernoulli(logistic(X b + 2 x1 o x2 + 2 x3 o x4)),  b = (2.5, -1.9, 2.8, -2.2, 3, 0, ...)
enum class Scenario { linear_interaction_weak, linear_interaction_weak_correct, multiple_index, logistic_interaction };

std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view name);
Family working_family(Scenario s);

/// f(t) = t^3 / (t^2 + 1).
double multiple_index_link(double t);

struct ScreenSettings {
  enum class Mode { none, fixed_count, permutation };
  Mode mode = Mode::none;
  int k = 0;
  int permutations = 10;
  double quantile = 1.0;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::multiple_index;
  int n = 100;
  /// Number of generated covariates (the correct variant adds one more design column).
  int p = 200;
  double sigma = 0.25;
  int n_reps = 100;
  int test_size = 10000;
  std::uint64_t master_seed = 20160401;
  PathConfig path;
  ScreenSettings screen;
  /// 0 selects std::thread::hardware_concurrency().
  int workers = 0;
};

/// n = 100 and sigma = 0.25 for the linear designs, n = 200 for the logistic one.
ScenarioConfig default_config(Scenario s, int p);
void validate(const ScenarioConfig& config);

/// N(0, 1) column of length `rows` drawn from its own seeded stream.
Vector gaussian_column(std::uint64_t seed, Eigen::Index rows);

/// Independent test sample. Design columns are regenerated on demand from
/// per-column streams, so only the columns a selected model touches are
/// ever materialized.
class TestSet {
 public:
  TestSet() = default;
  TestSet(Scenario scenario, int p, int size, double sigma, std::uint64_t master_seed, std::uint64_t rep);

  int size() const { return size_; }
  const Vector& y() const { return y_; }
  const Vector& expected_y() const { return ey_; }

  /// Design column j of the test sample (j == p is x1 o x2 in the correct variant).
  Vector column(int j) const;
  Matrix design(const Support& columns) const;

 private:
  Scenario scenario_ = Scenario::multiple_index;
  int p_ = 0;
  int size_ = 0;
  std::uint64_t master_seed_ = 0;
  std::uint64_t rep_ = 0;
  Vector y_;
  Vector ey_;
};

struct Dataset {
  Scenario scenario = Scenario::multiple_index;
  Family family;
  Matrix x;
  Vector y;
  Vector expected_y;
  Vector var_y;
  /// Oracle working model, its strong and weak parts, and the set selection
  /// is scored against (strong effects for the linear-interaction design).
  Support oracle;
  Support oracle_strong;
  Support oracle_weak;
  Support target;
  TestSet test;

  long p_design() const { return static_cast<long>(x.cols()); }
};

/// Deterministic in (master_seed, rep_index).
Dataset generate(const ScenarioConfig& config, int rep_index);

/// Mean response (and, for the logistic design, success probability) given
/// the first few generated columns. `cols` must hold at least 10 columns for
/// the linear-interaction designs and 5 otherwise.
Vector scenario_mean(Scenario s, const MatrixRef& leading_cols);

}  // namespace qmsel
