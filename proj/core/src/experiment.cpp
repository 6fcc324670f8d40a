#include "qmsel/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "qmsel/errors.hpp"
#include "qmsel/rng.hpp"
#include "qmsel/stats.hpp"

namespace qmsel {
namespace {

bool contains(const Support& s, int j) { return std::binary_search(s.begin(), s.end(), j); }

int count_missing(const Support& from, const Support& in) {
  int c = 0;
  for (int j : from) c += contains(in, j) ? 0 : 1;
  return c;
}

Support sorted(Support s) {
  std::sort(s.begin(), s.end());
  return s;
}

ScreenConfig screen_config_for(const ScenarioConfig& config, int rep_index, long p_design) {
  switch (config.screen.mode) {
    case ScreenSettings::Mode::fixed_count:
      return FixedCount{static_cast<int>(std::min<long>(config.screen.k, p_design))};
    case ScreenSettings::Mode::permutation:
      return PermutationThreshold{config.screen.permutations, config.screen.quantile,
                                  stream_seed(config.master_seed, static_cast<std::uint64_t>(rep_index),
                                              Stream::screen_permutation)};
    case ScreenSettings::Mode::none: break;
  }
  return FixedCount{static_cast<int>(p_design)};
}

}  // namespace

std::string_view row_label(std::size_t row) {
  if (row < kAllCriteria.size()) return to_string(kAllCriteria[row]);
  return "oracle";
}

TestColumns materialize_test_columns(const Dataset& data, const std::vector<Support>& supports) {
  TestColumns cols;
  for (const auto& s : supports) {
    for (int j : s) {
      if (!cols.contains(j)) cols.emplace(j, data.test.column(j));
    }
  }
  return cols;
}

SelectionMetrics evaluate(const Support& selected, const VectorRef& beta_hat, const Dataset& data,
                          const TestColumns& test_columns, const Support* target) {
  if (static_cast<std::size_t>(beta_hat.size()) != selected.size()) {
    throw ShapeError("coefficient length does not match the selected support");
  }
  const Support& tgt = target != nullptr ? *target : data.target;
  const Support oracle = sorted(data.oracle);
  const Support strong = sorted(data.oracle_strong);
  const Support weak = sorted(data.oracle_weak);
  const Support sel = sorted(selected);
  const Support tgt_sorted = sorted(tgt);

  SelectionMetrics m;
  m.available = true;
  m.selected = selected;
  m.consistent = sel == tgt_sorted;
  m.includes = std::includes(sel.begin(), sel.end(), tgt_sorted.begin(), tgt_sorted.end());
  m.false_positives = count_missing(sel, oracle);
  m.false_negatives_strong = count_missing(strong, sel);
  m.false_negatives_weak = count_missing(weak, sel);

  Vector theta = Vector::Zero(data.test.size());
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const auto it = test_columns.find(selected[k]);
    const Vector col = it != test_columns.end() ? it->second : data.test.column(selected[k]);
    theta += beta_hat[static_cast<Eigen::Index>(k)] * col;
  }
  const Vector& y = data.test.y();
  if (data.family.kind == Family::Kind::bernoulli) {
    int wrong = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) wrong += ((theta[i] > 0.0 ? 1.0 : 0.0) != y[i]) ? 1 : 0;
    m.error = static_cast<double>(wrong) / static_cast<double>(y.size());
  } else {
    m.error = (y - theta).squaredNorm() / static_cast<double>(y.size());
  }
  return m;
}

SelectionMetrics evaluate(const Support& selected, const Dataset& data) {
  const CandidateFit f = refit_candidate(data.family, data.y, data.x, selected, data.x.rows(), data.p_design());
  if (!f.fitted) return SelectionMetrics{};
  const TestColumns cols = materialize_test_columns(data, {selected});
  return evaluate(selected, f.fitted->beta_hat, data, cols);
}

ReplicationTrace trace_replication(const ScenarioConfig& config, int rep_index) {
  ReplicationTrace t{generate(config, rep_index), {}, {}, {}, {}};
  const Dataset& d = t.data;
  const long n = d.x.rows();
  const long p = d.p_design();

  t.screen = sis_screen(d.family, d.y, d.x, screen_config_for(config, rep_index, p));
  t.path = penalized_path(d.family, d.y, d.x, t.screen.kept, config.path);
  t.candidates = refit_and_score(t.path, d.family, d.y, d.x, n, p);

  const auto view = scored_view(t.candidates);
  for (std::size_t c = 0; c < kAllCriteria.size(); ++c) {
    try {
      t.selected_ids[c] = select(view, kAllCriteria[c]);
    } catch (const NoSelectableModel&) {
      t.selected_ids[c] = std::nullopt;
    }
  }
  return t;
}

ReplicationResult run_replication(const ScenarioConfig& config, int rep_index) {
  const ReplicationTrace t = trace_replication(config, rep_index);
  const Dataset& d = t.data;

  ReplicationResult r;
  r.rep_index = rep_index;
  r.n_candidates = t.candidates.size();
  r.screen_size = t.screen.kept.size();
  r.warnings = t.path.warnings;
  r.warnings.insert(r.warnings.end(), t.screen.warnings.begin(), t.screen.warnings.end());

  const CandidateFit oracle_fit = refit_candidate(d.family, d.y, d.x, d.oracle, d.x.rows(), d.p_design());

  std::vector<Support> touched{d.oracle};
  for (const auto& id : t.selected_ids) {
    if (id) touched.push_back(t.candidates[*id].support);
  }
  const TestColumns cols = materialize_test_columns(d, touched);

  for (std::size_t c = 0; c < kAllCriteria.size(); ++c) {
    const auto& id = t.selected_ids[c];
    if (!id) continue;
    const CandidateFit& cand = t.candidates[*id];
    r.rows[c] = evaluate(cand.support, cand.fitted->beta_hat, d, cols);
  }
  if (oracle_fit.fitted) {
    r.rows[kAllCriteria.size()] = evaluate(d.oracle, oracle_fit.fitted->beta_hat, d, cols, &d.oracle);
  }
  return r;
}

std::vector<SummaryRow> summarize(const std::vector<ReplicationResult>& reps) {
  std::vector<SummaryRow> rows;
  const double total = static_cast<double>(reps.size());
  for (std::size_t row = 0; row < kSummaryRows; ++row) {
    SummaryRow s;
    s.label = std::string(row_label(row));
    std::vector<double> err, fp, fns, fnw;
    int consistent = 0;
    int included = 0;
    for (const auto& r : reps) {
      const SelectionMetrics& m = r.rows[row];
      if (!m.available) continue;
      ++s.available;
      consistent += m.consistent ? 1 : 0;
      included += m.includes ? 1 : 0;
      err.push_back(m.error);
      fp.push_back(m.false_positives);
      fns.push_back(m.false_negatives_strong);
      fnw.push_back(m.false_negatives_weak);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.consistent_pct = total > 0 ? 100.0 * consistent / total : nan;
    s.inclusion_pct = total > 0 ? 100.0 * included / total : nan;
    s.median_err = err.empty() ? nan : median(err);
    s.rsd_err = err.empty() ? nan : robust_sd(err);
    s.median_fp = fp.empty() ? nan : median(fp);
    s.median_fn_strong = fns.empty() ? nan : median(fns);
    s.median_fn_weak = fnw.empty() ? nan : median(fnw);
    rows.push_back(std::move(s));
  }
  return rows;
}

ExperimentResult run_experiment(const ScenarioConfig& config) {
  validate(config);
  ExperimentResult out;
  out.config = config;
  out.replications.resize(static_cast<std::size_t>(config.n_reps));

  unsigned workers = config.workers > 0 ? static_cast<unsigned>(config.workers) : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(config.n_reps));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int rep = next++; rep < config.n_reps; rep = next++) {
      try {
        out.replications[static_cast<std::size_t>(rep)] = run_replication(config, rep);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  out.rows = summarize(out.replications);
  return out;
}

}  // namespace qmsel
