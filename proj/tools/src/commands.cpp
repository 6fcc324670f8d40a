#include "qmsel_cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "qmsel/candidates.hpp"
#include "qmsel/diagnostics.hpp"
#include "qmsel/errors.hpp"
#include "qmsel/experiment.hpp"
#include "qmsel/report.hpp"
#include "qmsel/rng.hpp"
#include "qmsel_cli/csv.hpp"

namespace fs = std::filesystem;

namespace qmsel::cli {
namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CsvError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DegenerateContrast& e) {
    err << "error: degenerate contrast: " << e.what() << '\n';
    return kDegenerate;
  } catch (const Divergence& e) {
    err << "error: divergence: " << e.what() << '\n';
    return kSolver;
  } catch (const Error& e) {
    err << "error: solver: " << e.what() << '\n';
    return kSolver;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  const auto path = fs::path(dir) / name;
  std::ofstream os(path);
  if (!os) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  return os;
}

Support parse_support(std::string_view text, long cols, const std::string& where) {
  Support s;
  std::string normalized(text);
  for (auto& c : normalized)
    if (c == ' ' || c == '\t') c = ',';
  for (const auto& item : split_list(normalized)) {
    int j = -1;
    try {
      std::size_t used = 0;
      j = std::stoi(item, &used);
      if (used != item.size()) j = -1;
    } catch (const std::exception&) {
      j = -1;
    }
    if (j < 0 || j >= cols)
      throw InvalidArgument(fmt::format("{}: bad column index '{}' (design has {} columns)", where, item, cols));
    s.push_back(j);
  }
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw InvalidArgument(fmt::format("{}: repeated column index", where));
  return s;
}

std::string join_support(const Support& s, char sep = ' ') {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(s[i]);
  }
  return out;
}

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : "NA"; }

struct LoadedData {
  Family family;
  Matrix x;
  Vector y;
};

LoadedData load_data(const DataArgs& a) {
  if (a.design.empty() || a.response.empty()) throw ConfigError("--design and --response are required");
  LoadedData d{parse_family(a.family), read_matrix(a.design, a.header), read_vector(a.response, a.header)};
  if (d.y.size() != d.x.rows())
    throw ShapeError(fmt::format("response has {} rows but design has {}", d.y.size(), d.x.rows()));
  return d;
}

KeyValueConfig load_optional(const std::string& path) {
  if (path.empty()) return {};
  return KeyValueConfig::load(path);
}

ScreenConfig to_screen_config(const ScreenSettings& s, long cols, std::uint64_t seed) {
  switch (s.mode) {
    case ScreenSettings::Mode::fixed_count: return FixedCount{static_cast<int>(std::min<long>(s.k, cols))};
    case ScreenSettings::Mode::permutation:
      return PermutationThreshold{s.permutations, s.quantile, stream_seed(seed, 0, Stream::screen_permutation)};
    case ScreenSettings::Mode::none: break;
  }
  return FixedCount{static_cast<int>(cols)};
}

struct PathRun {
  ScreenResult screen;
  CandidatePath path;
};

PathRun build_path(const LoadedData& d, KeyValueConfig& cfg, std::optional<std::uint64_t> seed) {
  PathConfig pc;
  ScreenSettings ss;
  apply_path_section(cfg, pc);
  apply_screen_section(cfg, ss);
  const auto master = static_cast<std::uint64_t>(cfg.get_int64("screen", "seed", 0));
  cfg.reject_unknown();
  PathRun run;
  run.screen = sis_screen(d.family, d.y, d.x, to_screen_config(ss, d.x.cols(), seed.value_or(master)));
  run.path = penalized_path(d.family, d.y, d.x, run.screen.kept, pc);
  return run;
}

}  // namespace

void apply_path_section(KeyValueConfig& cfg, PathConfig& c) {
  c.penalty = parse_penalty(cfg.get_string("path", "penalty", std::string(to_string(c.penalty))));
  c.a = cfg.get_double("path", "a", c.a);
  c.n_lambda = cfg.get_int("path", "n_lambda", c.n_lambda);
  c.lambda_min_ratio = cfg.get_double("path", "lambda_min_ratio", c.lambda_min_ratio);
  c.max_lla_rounds = cfg.get_int("path", "max_lla_rounds", c.max_lla_rounds);
  c.max_sweeps = cfg.get_int("path", "max_sweeps", c.max_sweeps);
  c.tol = cfg.get_double("path", "tol", c.tol);
  c.max_irls = cfg.get_int("path", "max_irls", c.max_irls);
  c.max_support = cfg.get_int("path", "max_support", c.max_support);
  c.max_deviance_ratio = cfg.get_double("path", "max_deviance_ratio", c.max_deviance_ratio);
  c.cold_start = cfg.get_bool("path", "cold_start", c.cold_start);
  c.intercept = cfg.get_bool("path", "intercept", c.intercept);
  for (const auto& v : cfg.get_list("path", "lambdas")) {
    try {
      c.lambdas.push_back(std::stod(v));
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("[path] lambdas: cannot parse '{}'", v));
    }
  }
}

void apply_screen_section(KeyValueConfig& cfg, ScreenSettings& s) {
  const auto mode = cfg.get_string("screen", "mode", "none");
  if (mode == "none") s.mode = ScreenSettings::Mode::none;
  else if (mode == "fixed_count") s.mode = ScreenSettings::Mode::fixed_count;
  else if (mode == "permutation") s.mode = ScreenSettings::Mode::permutation;
  else throw ConfigError(fmt::format("[screen] mode: unknown value '{}'", mode));
  s.k = cfg.get_int("screen", "k", s.k);
  s.permutations = cfg.get_int("screen", "permutations", s.permutations);
  s.quantile = cfg.get_double("screen", "quantile", s.quantile);
}

std::vector<ScenarioConfig> simulation_configs(KeyValueConfig& cfg) {
  if (!cfg.has_section("simulate")) throw ConfigError("missing [simulate] section");
  auto scenarios = cfg.get_list("simulate", "scenario");
  auto ps = cfg.get_list("simulate", "p");
  if (scenarios.empty()) throw ConfigError("[simulate] scenario is required");
  if (ps.empty()) throw ConfigError("[simulate] p is required");

  const bool has_n = cfg.has("simulate", "n");
  const int n = cfg.get_int("simulate", "n", 0);
  const bool has_sigma = cfg.has("simulate", "sigma");
  const double sigma = cfg.get_double("simulate", "sigma", 0.0);
  const int n_reps = cfg.get_int("simulate", "n_reps", 100);
  const int test_size = cfg.get_int("simulate", "test_size", 10000);
  const auto seed = cfg.get_int64("simulate", "master_seed", 20160401);
  const int workers = cfg.get_int("simulate", "workers", 0);
  PathConfig path;
  ScreenSettings screen;
  apply_path_section(cfg, path);
  apply_screen_section(cfg, screen);
  // Manifests are valid configs; their bookkeeping keys are informational.
  cfg.get_string("manifest", "toolkit_version", "");
  cfg.get_string("manifest", "output", "");
  cfg.reject_unknown();

  std::vector<ScenarioConfig> out;
  for (const auto& s : scenarios) {
    Scenario sc;
    try {
      sc = parse_scenario(s);
    } catch (const InvalidArgument& e) {
      throw ConfigError(fmt::format("[simulate] scenario: {}", e.what()));
    }
    for (const auto& p_text : ps) {
      int p = 0;
      try {
        std::size_t used = 0;
        p = std::stoi(p_text, &used);
        if (used != p_text.size()) throw std::invalid_argument(p_text);
      } catch (const std::exception&) {
        throw ConfigError(fmt::format("[simulate] p: cannot parse '{}'", p_text));
      }
      auto c = default_config(sc, p);
      if (has_n) c.n = n;
      if (has_sigma) c.sigma = sigma;
      c.n_reps = n_reps;
      c.test_size = test_size;
      c.master_seed = static_cast<std::uint64_t>(seed);
      c.workers = workers;
      c.path = path;
      c.screen = screen;
      try {
        validate(c);
      } catch (const InvalidArgument& e) {
        throw ConfigError(fmt::format("[simulate] {}", e.what()));
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

int cmd_fit(const FitArgs& args, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const auto d = load_data(args.data);
    Support support;
    if (args.support.empty()) {
      for (long j = 0; j < d.x.cols(); ++j) support.push_back(static_cast<int>(j));
    } else {
      support = parse_support(args.support, d.x.cols(), "--support");
    }
    const long n = d.x.rows();
    const long p = d.x.cols();
    const FittedModel fitted = fit(d.family, d.y, d.x, support);
    const Matrix xs = select_columns(d.x, support);

    std::optional<ContrastEstimate> contrast;
    std::string contrast_status = "ok";
    try {
      contrast = estimate_contrast(d.family, xs, d.y, fitted.beta_hat);
    } catch (const DegenerateContrast& e) {
      contrast_status = fmt::format("degenerate: {}", e.what());
    } catch (const NonSpdError& e) {
      contrast_status = fmt::format("non_spd: {}", e.what());
    }
    const auto scores = score_model(fitted, contrast ? &*contrast : nullptr, n, p);

    auto report = open_out(args.out, "fit_report.txt");
    report << "family = " << to_string(d.family.kind) << '\n'
           << "n = " << n << '\n'
           << "p = " << p << '\n'
           << "support = " << join_support(support, ',') << '\n'
           << "converged = " << (fitted.converged ? "true" : "false") << '\n'
           << "iterations = " << fitted.iterations << '\n'
           << "loglik = " << fmt::format("{:.17g}", fitted.loglik) << '\n'
           << "score_inf_norm = " << format_number(fitted.score_inf_norm) << '\n'
           << "contrast = " << contrast_status << '\n'
           << "trace_h = " << opt_number(scores.trace_h) << '\n'
           << "logdet_h = " << opt_number(scores.logdet_h) << '\n';
    for (auto c : kAllCriteria) report << to_string(c) << " = " << opt_number(scores.value(c)) << '\n';
    for (std::size_t k = 0; k < support.size(); ++k)
      report << "beta_" << support[k] << " = " << fmt::format("{:.17g}", fitted.beta_hat[static_cast<Eigen::Index>(k)])
             << '\n';

    auto coef = open_out(args.out, "coefficients.csv");
    coef << "column,beta\n";
    for (std::size_t k = 0; k < support.size(); ++k)
      coef << support[k] << ',' << fmt::format("{:.17g}", fitted.beta_hat[static_cast<Eigen::Index>(k)]) << '\n';

    log << fmt::format("fit: {} columns, loglik {}, converged {}\n", support.size(), format_number(fitted.loglik),
                       fitted.converged);
    if (!contrast) {
      err << "warning: contrast " << contrast_status << "; generalized criteria not available\n";
      return static_cast<int>(kDegenerate);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_path(const PathArgs& args, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const auto d = load_data(args.data);
    auto cfg = load_optional(args.config);
    const auto run = build_path(d, cfg, args.seed);
    auto os = open_out(args.out, "path.csv");
    os << "lambda,size,support\n";
    for (const auto& pt : run.path.points)
      os << fmt::format("{:.17g}", pt.lambda) << ',' << pt.support.size() << ',' << join_support(pt.support) << '\n';
    for (const auto& w : run.screen.warnings) err << "warning: " << w << '\n';
    for (const auto& w : run.path.warnings) err << "warning: " << w << '\n';
    log << fmt::format("path: {} screened columns, {} points, {} distinct supports\n", run.screen.kept.size(),
                       run.path.points.size(), run.path.supports.size());
    return static_cast<int>(kOk);
  });
}

int cmd_score(const ScoreArgs& args, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const auto d = load_data(args.data);
    std::vector<Support> supports;
    if (!args.supports.empty()) {
      std::ifstream in(args.supports);
      if (!in) throw CsvError(fmt::format("{}: cannot open file", args.supports));
      std::string line;
      int line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        supports.push_back(parse_support(line, d.x.cols(), fmt::format("{}:{}", args.supports, line_no)));
      }
      if (supports.empty()) throw CsvError(fmt::format("{}: no supports", args.supports));
    } else {
      auto cfg = load_optional(args.config);
      supports = build_path(d, cfg, args.seed).path.supports;
    }
    const long n = d.x.rows();
    const long p = d.x.cols();
    const auto fits = refit_and_score(supports, d.family, d.y, d.x, n, p);

    auto os = open_out(args.out, "scores.csv");
    os << "id,size,status,loglik,trace_h,logdet_h";
    for (auto c : kAllCriteria) os << ',' << to_string(c);
    os << ",support\n";
    for (std::size_t i = 0; i < fits.size(); ++i) {
      const auto& f = fits[i];
      os << i << ',' << f.support.size() << ',' << f.status;
      if (f.scores) {
        os << ',' << fmt::format("{:.17g}", f.scores->loglik) << ',' << opt_number(f.scores->trace_h) << ','
           << opt_number(f.scores->logdet_h);
        for (auto c : kAllCriteria) os << ',' << opt_number(f.scores->value(c));
      } else {
        os << ",NA,NA,NA,NA,NA,NA,NA,NA,NA";
      }
      os << ',' << join_support(f.support) << '\n';
    }

    const auto view = scored_view(fits);
    auto sel = open_out(args.out, "selected.txt");
    for (auto c : kAllCriteria) {
      try {
        const auto id = select(view, c);
        sel << to_string(c) << " = " << id << '\n';
        log << fmt::format("{:8} -> candidate {} ({{{}}})\n", to_string(c), id, join_support(fits[id].support, ','));
      } catch (const NoSelectableModel&) {
        sel << to_string(c) << " = NA\n";
        log << fmt::format("{:8} -> no candidate\n", to_string(c));
      }
    }
    return static_cast<int>(kOk);
  });
}

int cmd_simulate(const SimulateArgs& args, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    if (args.config.empty()) throw ConfigError("--config is required");
    auto cfg = KeyValueConfig::load(args.config);
    auto configs = simulation_configs(cfg);
    for (auto& c : configs) {
      if (args.seed) c.master_seed = *args.seed;
      if (args.workers) c.workers = *args.workers;
      const auto result = run_experiment(c);
      const auto stem = fmt::format("{}_{}", to_string(c.scenario), c.p);
      auto table = open_out(args.out, stem + ".csv");
      write_summary_csv(table, result.rows);
      // Worker count is not echoed: output does not depend on it.
      auto manifest = open_out(args.out, stem + ".manifest");
      manifest << "[manifest]\n"
               << "toolkit_version = " << toolkit_version() << '\n'
               << "output = " << stem << ".csv\n";
      write_config_echo(manifest, c);
      std::size_t warnings = 0;
      for (const auto& r : result.replications) warnings += r.warnings.size();
      log << fmt::format("simulate: {} ({} reps, {} warnings)\n", stem, c.n_reps, warnings);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_diagnose(const DiagnoseArgs& args, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    if (args.config.empty()) throw ConfigError("--config is required");
    auto cfg = KeyValueConfig::load(args.config);
    const auto kind = cfg.get_string("diagnose", "kind", "kl");
    const auto family = parse_family(cfg.get_string("diagnose", "family", "gaussian"));
    const int n = cfg.get_int("diagnose", "n", 500);
    const int d = cfg.get_int("diagnose", "d", 5);
    const double sigma = cfg.get_double("diagnose", "sigma", 0.25);
    const int n_reps = cfg.get_int("diagnose", "n_reps", 1000);
    const auto seed = args.seed.value_or(static_cast<std::uint64_t>(cfg.get_int64("diagnose", "seed", 20160401)));
    const auto ns_text = cfg.get_list("diagnose", "ns");
    cfg.reject_unknown();

    auto design = [&] {
      if (family.kind == Family::Kind::bernoulli) {
        Vector beta = Vector::Zero(d);
        for (int j = 0; j < d; ++j) beta[j] = (j % 2 == 0 ? 0.5 : -0.5);
        return logistic_design(n, beta, seed);
      }
      if (family.kind != Family::Kind::gaussian)
        throw ConfigError("[diagnose] family must be gaussian or bernoulli");
      return multiple_index_design(n, d, sigma, seed);
    };

    auto os = open_out(args.out, "diagnose.txt");
    os << "kind = " << kind << '\n' << "family = " << to_string(family.kind) << '\n' << "seed = " << seed << '\n';
    if (kind == "kl") {
      const auto dd = design();
      const auto r = kl_expansion_diagnostic(family, dd.x, dd.truth, n_reps, seed);
      os << "n = " << n << "\nd = " << d << "\nn_reps = " << r.n_reps << "\nlhs = " << format_number(r.lhs)
         << "\nrhs = " << format_number(r.rhs) << "\ntrace_h = " << format_number(r.trace_h)
         << "\nrel_gap = " << format_number(r.rel_gap) << '\n';
      log << fmt::format("kl: rel_gap {}\n", format_number(r.rel_gap));
    } else if (kind == "normality") {
      const auto dd = design();
      const Vector dir = Vector::Ones(d);
      const auto r = normality_diagnostic(family, dd.x, dd.truth, dir, n_reps, seed);
      os << "n = " << n << "\nd = " << d << "\nn_reps = " << r.n_reps << "\nks_stat = " << format_number(r.ks_stat)
         << "\np_value = " << format_number(r.p_value) << "\npass = " << (r.pass ? "true" : "false") << '\n';
      log << fmt::format("normality: ks {} p {}\n", format_number(r.ks_stat), format_number(r.p_value));
    } else if (kind == "consistency") {
      if (family.kind != Family::Kind::gaussian)
        throw ConfigError("[diagnose] consistency uses the gaussian working model");
      std::vector<int> ns;
      for (const auto& t : ns_text) {
        try {
          ns.push_back(std::stoi(t));
        } catch (const std::exception&) {
          throw ConfigError(fmt::format("[diagnose] ns: cannot parse '{}'", t));
        }
      }
      if (ns.empty()) ns = {100, 200, 400, 800};
      const auto curve = consistency_curve(ns, d, sigma, n_reps, seed);
      os << "n,mean_beta_error,mean_trace_error,mean_trace_hat,trace_h,failures\n";
      for (const auto& pt : curve)
        os << pt.n << ',' << format_number(pt.mean_beta_error) << ',' << format_number(pt.mean_trace_error) << ','
           << format_number(pt.mean_trace_hat) << ',' << format_number(pt.trace_h) << ',' << pt.failures << '\n';
      log << fmt::format("consistency: {} sample sizes\n", curve.size());
    } else {
      throw ConfigError(fmt::format("[diagnose] kind: unknown value '{}'", kind));
    }
    return static_cast<int>(kOk);
  });
}

}  // namespace qmsel::cli
