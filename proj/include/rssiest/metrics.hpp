#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rssiest/estimators.hpp"
#include "rssiest/random.hpp"
#include "rssiest/system_config.hpp"

namespace rssiest {

/// Monte-Carlo estimate of the real MSE Δ_{j;m}.
/// std_error is the sample standard deviation over sqrt(n_trials), and is 0
/// for a single trial.
struct MseEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_trials = 0;
};

struct LowerBoundValue {
  double value = 0.0;
  double quadrature_error = 0.0;  // absolute error estimate of the quadrature
};

struct ReductionEstimate {
  double percent = 0.0;
  double std_error = 0.0;  // in percentage points
};

enum class Execution { kSerial, kParallel };

inline constexpr std::size_t kDefaultTrials = 100000;

struct MonteCarloOptions {
  std::size_t n_trials = kDefaultTrials;
  Seed seed = 0;
  Execution execution = Execution::kParallel;
  int threads = 0;  // OpenMP team size, 0 for the runtime default
  std::size_t user = 0;
};

// Mean and standard error, summed in index order.
MseEstimate summarize(std::span<const double> samples);

// sum_i N0 μ_i / (βP μ_i + N0)
double conditional_mse(const ConditionalSecondMoment& moment, const SystemConfig& config);

// Per-trial squared errors for one estimator at one SNR (N0 = 1,
// βP = 10^(snr_db/10), prior taken from `config`). Every call with the same
// seed reuses the same channel and noise draws for trial t regardless of the
// estimator, m or SNR: common random numbers across a sweep.
std::vector<double> trial_errors(EstimatorTag estimator, std::size_t m, double snr_db,
                                 const SystemConfig& config, const MonteCarloOptions& options);

MseEstimate empirical_mse(EstimatorTag estimator, std::size_t m, double snr_db,
                          const SystemConfig& config, const MonteCarloOptions& options);

MseEstimate empirical_mse(EstimatorTag estimator, std::size_t m, double snr_db,
                          const SystemConfig& config, std::size_t n_trials, Seed seed);

// Average of conditional_mse over the same draws empirical_mse would use for
// the feedback-conditioned MMSE: the law-of-total-expectation route to Δ.
MseEstimate analytic_mse(std::size_t m, double snr_db, const SystemConfig& config,
                         const MonteCarloOptions& options);

// sum_i E_g[N0 g / (βP g + N0)], g ~ Exp(mean σ²_ij). This is the MSE a
// genie that knew every gain would reach, and no number of feedbacks can do
// better. Evaluated by adaptive Gauss-Kronrod quadrature.
LowerBoundValue mse_lower_bound(const SystemConfig& config, std::size_t user = 0);

// (baseline - improved) / baseline * 100. Negative when the estimator
// degrades. Throws std::domain_error for a zero baseline.
double relative_reduction(const MseEstimate& baseline, const MseEstimate& improved);

// Relative reduction from paired per-trial errors (common random numbers),
// with a delta-method standard error of the ratio estimator.
ReductionEstimate paired_relative_reduction(std::span<const double> baseline,
                                            std::span<const double> improved);

// Δ(MAP_FEEDBACK, m = N) / Δ(MAP_CLASSICAL) at one SNR, on shared draws.
double asymptotic_ratio(EstimatorTag estimator, double snr_db, const SystemConfig& config,
                        std::size_t n_trials, Seed seed);

}  // namespace rssiest
