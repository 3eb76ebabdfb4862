#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <vector>

#include "rssiest/errors.hpp"
#include "rssiest/experiment.hpp"
#include "rssiest/metrics.hpp"
#include "rssiest/sweep_file.hpp"

namespace rssiest::cli {

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

struct RawFlags {
  std::string spec_path;
  std::string snr;
  std::string m;
  std::string estimators;
  std::size_t trials = 0;
  Seed seed = 0;
  std::size_t antennas = 0;
  std::size_t users = 0;
  double prior_variance = 0.0;
  int threads = 0;
  std::string out;
  bool serial = false;
  std::size_t user = 0;
};

struct Options {
  CLI::Option* snr = nullptr;
  CLI::Option* m = nullptr;
  CLI::Option* estimators = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* antennas = nullptr;
  CLI::Option* users = nullptr;
  CLI::Option* prior = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* out = nullptr;
};

void add_system_options(CLI::App* sub, RawFlags& raw, Options& opt) {
  opt.antennas = sub->add_option("--antennas", raw.antennas, "Transmit antennas N");
  opt.users = sub->add_option("--users", raw.users, "Single-antenna users K");
  opt.prior = sub->add_option("--prior-variance", raw.prior_variance,
                              "Prior variance of every channel coefficient");
  opt.threads = sub->add_option("--threads", raw.threads, "OpenMP threads (0 = default)");
  sub->add_flag("--serial", raw.serial, "Use the serial reference kernel");
}

// Flags that were given on the command line, as overrides.
SweepOverrides flag_overrides(const RawFlags& raw, const Options& opt) {
  SweepOverrides o;
  auto given = [](const CLI::Option* option) { return option && option->count() > 0; };
  if (given(opt.snr)) o.snr_db = parse_real_list(raw.snr);
  if (given(opt.m)) o.m = parse_count_list(raw.m);
  if (given(opt.estimators)) o.estimators = parse_estimator_list(raw.estimators);
  if (given(opt.trials)) o.trials = raw.trials;
  if (given(opt.seed)) o.seed = raw.seed;
  if (given(opt.antennas)) o.antennas = raw.antennas;
  if (given(opt.users)) o.users = raw.users;
  if (given(opt.prior)) o.prior_variance = raw.prior_variance;
  if (given(opt.threads)) o.threads = raw.threads;
  if (given(opt.out)) o.out = raw.out;
  return o;
}

std::filesystem::path default_output_path() {
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir)
    return std::filesystem::path(dir) / "sweep.csv";
  return "sweep.csv";
}

int run_sweep_command(const SweepOverrides& overrides, bool serial, std::ostream& out) {
  SweepSpec spec = build_sweep_spec(overrides);
  if (serial) spec.execution = Execution::kSerial;
  const std::filesystem::path path =
      overrides.out ? std::filesystem::path(*overrides.out) : default_output_path();
  const SweepReport report = run_sweep(spec);
  emit_report(report, path);
  out << "wrote " << report.cells.size() << " cells to " << path.string() << " ("
      << fmt9(report.metadata.wall_clock_seconds) << " s)\n";
  return kExitOk;
}

int run_eval_command(const SweepOverrides& o, bool serial, std::ostream& out) {
  const SweepSpec spec = build_sweep_spec(o);
  if (!o.estimators || o.estimators->size() != 1)
    throw ConfigError("eval needs exactly one --estimator");
  MonteCarloOptions options;
  options.n_trials = spec.n_trials;
  options.seed = spec.master_seed;
  options.threads = spec.threads;
  options.execution = serial ? Execution::kSerial : Execution::kParallel;
  const EstimatorTag tag = o.estimators->front();
  out << kCsvHeader << '\n';
  for (double snr : spec.snr_grid_db)
    for (std::size_t m : spec.m_grid) {
      const MseEstimate est = empirical_mse(tag, m, snr, spec.config, options);
      const MseEstimate base = empirical_mse(tag, 0, snr, spec.config, options);
      out << fmt9(snr) << ',' << m << ',' << to_string(tag) << ',' << fmt9(est.mean) << ','
          << fmt9(est.std_error) << ','
          << (base.mean > 0.0 ? fmt9(relative_reduction(base, est)) : std::string()) << ','
          << est.n_trials << '\n';
    }
  return kExitOk;
}

int run_bound_command(const SweepOverrides& o, std::size_t user, std::ostream& out) {
  const SweepSpec spec = build_sweep_spec(o);
  for (double snr : spec.snr_grid_db) {
    const SystemConfig config = spec.config.with_snr_db(snr);
    const LowerBoundValue bound = mse_lower_bound(config, user);
    out << "snr_db = " << fmt9(snr) << ", lower_bound = " << fmt9(bound.value)
        << ", quadrature_error = " << fmt9(bound.quadrature_error) << '\n';
  }
  return kExitOk;
}

struct CheckLine {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<CheckLine> run_checks(const SystemConfig& base, const MonteCarloOptions& options) {
  std::vector<CheckLine> lines;
  const std::size_t n = base.n_antennas();

  // m = 0: every estimator coincides with the classical MMSE trial by trial.
  for (double snr : {-20.0, 0.0, 20.0}) {
    const auto reference = trial_errors(EstimatorTag::kMmseClassical, 0, snr, base, options);
    bool same = true;
    for (EstimatorTag tag : kAllEstimators)
      same = same && trial_errors(tag, 0, snr, base, options) == reference;
    lines.push_back({"m0_coincidence@" + fmt9(snr) + "dB", same,
                     "all estimators bit-identical at m = 0"});
  }

  for (double snr : {-20.0, 0.0, 20.0}) {
    std::vector<MseEstimate> per_m;
    for (std::size_t m = 0; m <= n; ++m)
      per_m.push_back(empirical_mse(EstimatorTag::kMmseFeedback, m, snr, base, options));

    bool monotone = true;
    std::string detail;
    for (std::size_t m = 0; m + 1 < per_m.size(); ++m) {
      const double slack = 3.0 * std::hypot(per_m[m].std_error, per_m[m + 1].std_error);
      monotone = monotone && per_m[m + 1].mean <= per_m[m].mean + slack;
      detail += (m ? " " : "") + fmt9(per_m[m].mean);
    }
    detail += " " + fmt9(per_m.back().mean);
    lines.push_back({"monotonicity@" + fmt9(snr) + "dB", monotone, "delta(m) = " + detail});

    const LowerBoundValue bound = mse_lower_bound(base.with_snr_db(snr), options.user);
    bool above = true;
    for (const auto& est : per_m) above = above && est.mean >= bound.value - 3.0 * est.std_error;
    lines.push_back({"lower_bound@" + fmt9(snr) + "dB", above,
                     "bound = " + fmt9(bound.value) + ", delta(N) = " + fmt9(per_m.back().mean)});

    bool agree = true;
    for (std::size_t m = 0; m <= n; ++m) {
      const MseEstimate analytic = analytic_mse(m, snr, base, options);
      agree = agree && std::abs(analytic.mean - per_m[m].mean) <=
                           3.0 * std::hypot(analytic.std_error, per_m[m].std_error);
    }
    lines.push_back({"closed_form_agreement@" + fmt9(snr) + "dB", agree,
                     "Monte-Carlo delta vs mean conditional MSE, m = 0.." + std::to_string(n)});
  }

  const double low = asymptotic_ratio(EstimatorTag::kMapFeedback, -40.0, base, options.n_trials,
                                      options.seed);
  lines.push_back({"map_ratio@-40dB", low >= 1.9 && low <= 2.1,
                   "ratio = " + fmt9(low) + ", expected [1.9, 2.1]"});
  const double high = asymptotic_ratio(EstimatorTag::kMapFeedback, 40.0, base, options.n_trials,
                                       options.seed);
  lines.push_back({"map_ratio@+40dB", high >= 0.45 && high <= 0.55,
                   "ratio = " + fmt9(high) + ", expected [0.45, 0.55]"});
  return lines;
}

int run_verify_command(const SweepOverrides& o, bool serial, std::ostream& out) {
  const SweepSpec spec = build_sweep_spec(o);
  MonteCarloOptions options;
  options.n_trials = spec.n_trials;
  options.seed = spec.master_seed;
  options.threads = spec.threads;
  options.execution = serial ? Execution::kSerial : Execution::kParallel;
  bool all = true;
  for (const CheckLine& line : run_checks(spec.config, options)) {
    out << (line.pass ? "[PASS] " : "[FAIL] ") << line.name << ": " << line.detail << '\n';
    all = all && line.pass;
  }
  out << (all ? "all checks passed\n" : "some checks failed\n");
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int parse_and_dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"MIMO channel estimation with receive-power feedback", "rssiest"};
  app.require_subcommand(1);
  RawFlags raw;

  Options sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "Run an (SNR x m x estimator) Monte-Carlo sweep");
  sweep->add_option("--spec", raw.spec_path, "Sweep file with 'key = value' lines")
      ->check(CLI::ExistingFile);
  sweep_opt.snr = sweep->add_option("--snr", raw.snr, "Comma-separated SNR grid in dB");
  sweep_opt.m = sweep->add_option("--m", raw.m, "Comma-separated feedback counts");
  sweep_opt.estimators = sweep->add_option("--estimator", raw.estimators,
                                           "Comma-separated estimators");
  sweep_opt.trials = sweep->add_option("--trials", raw.trials, "Trials per cell");
  sweep_opt.seed = sweep->add_option("--seed", raw.seed, "Master seed");
  sweep_opt.out = sweep->add_option("--out", raw.out, "Output CSV path");
  add_system_options(sweep, raw, sweep_opt);

  Options eval_opt;
  auto* eval = app.add_subcommand("eval", "Evaluate one estimator");
  eval_opt.estimators = eval->add_option("--estimator", raw.estimators, "Estimator")->required();
  eval_opt.snr = eval->add_option("--snr", raw.snr, "SNR in dB (list allowed)");
  eval_opt.m = eval->add_option("--m", raw.m, "Feedback count (list allowed)");
  eval_opt.trials = eval->add_option("--trials", raw.trials, "Trials");
  eval_opt.seed = eval->add_option("--seed", raw.seed, "Master seed");
  add_system_options(eval, raw, eval_opt);

  Options bound_opt;
  auto* bound = app.add_subcommand("bound", "Evaluate the MSE lower bound by quadrature");
  bound_opt.snr = bound->add_option("--snr", raw.snr, "SNR in dB (list allowed)");
  bound->add_option("--user", raw.user, "User index");
  add_system_options(bound, raw, bound_opt);

  Options verify_opt;
  auto* verify = app.add_subcommand("verify", "Run the estimator property checks");
  verify_opt.trials = verify->add_option("--trials", raw.trials, "Trials per check");
  verify_opt.seed = verify->add_option("--seed", raw.seed, "Master seed");
  add_system_options(verify, raw, verify_opt);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sweep) {
      SweepOverrides file;
      if (!raw.spec_path.empty()) file = load_sweep_file(raw.spec_path);
      return run_sweep_command(merge(file, flag_overrides(raw, sweep_opt)), raw.serial, out);
    }
    if (*eval) {
      SweepOverrides o = flag_overrides(raw, eval_opt);
      if (!o.snr_db) o.snr_db = std::vector<double>{0.0};
      if (!o.m) o.m = std::vector<std::size_t>{0};
      return run_eval_command(o, raw.serial, out);
    }
    if (*bound) {
      SweepOverrides o = flag_overrides(raw, bound_opt);
      if (!o.snr_db) o.snr_db = std::vector<double>{0.0};
      return run_bound_command(o, raw.user, out);
    }
    if (*verify) return run_verify_command(flag_overrides(raw, verify_opt), raw.serial, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace rssiest::cli
