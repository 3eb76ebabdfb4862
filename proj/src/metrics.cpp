#include "rssiest/metrics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "rssiest/errors.hpp"
#include "rssiest/trial_kernel.hpp"

namespace rssiest {

namespace {

void check_tag(EstimatorTag tag) {
  for (EstimatorTag known : kAllEstimators)
    if (tag == known) return;
  throw UsageError("unknown estimator tag");
}

std::vector<double> run_trials(const SystemConfig& config, const TrialRequest& request,
                               const MonteCarloOptions& options) {
  if (options.n_trials == 0) throw UsageError("n_trials must be at least 1");
  std::vector<double> out(options.n_trials);
  if (options.execution == Execution::kSerial)
    fill_trials_serial(config, request, options.seed, out);
  else
    fill_trials_parallel(config, request, options.seed, out, 0, options.threads);
  return out;
}

// ∫_0^∞ t / (a t + 1) e^{-t} dt, mapped to [0, 1) through t = u / (1 - u).
double exponential_shrinkage_integral(double a, double& abs_error) {
  auto integrand = [a](double u) {
    if (u >= 1.0) return 0.0;
    const double w = 1.0 - u;
    const double t = u / w;
    return t / (a * t + 1.0) * std::exp(-t) / (w * w);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, 20,
                                                                        1e-13, &abs_error);
}

}  // namespace

MseEstimate summarize(std::span<const double> samples) {
  MseEstimate est;
  est.n_trials = samples.size();
  if (samples.empty()) return est;
  double sum = 0.0;
  for (double x : samples) sum += x;
  est.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - est.mean) * (x - est.mean);
    const double n = static_cast<double>(samples.size());
    est.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return est;
}

double conditional_mse(const ConditionalSecondMoment& moment, const SystemConfig& config) {
  if (moment.per_antenna.size() != config.n_antennas())
    throw DimensionError("second moment dimension differs from n_antennas");
  const double pilot = config.pilot_energy();
  const double noise = config.noise_power();
  double total = 0.0;
  for (double mu : moment.per_antenna) total += noise * mu / (pilot * mu + noise);
  return total;
}

std::vector<double> trial_errors(EstimatorTag estimator, std::size_t m, double snr_db,
                                 const SystemConfig& config, const MonteCarloOptions& options) {
  check_tag(estimator);
  const TrialRequest request{estimator, m, options.user, TrialQuantity::kSquaredError};
  return run_trials(config.with_snr_db(snr_db), request, options);
}

MseEstimate empirical_mse(EstimatorTag estimator, std::size_t m, double snr_db,
                          const SystemConfig& config, const MonteCarloOptions& options) {
  return summarize(trial_errors(estimator, m, snr_db, config, options));
}

MseEstimate empirical_mse(EstimatorTag estimator, std::size_t m, double snr_db,
                          const SystemConfig& config, std::size_t n_trials, Seed seed) {
  MonteCarloOptions options;
  options.n_trials = n_trials;
  options.seed = seed;
  return empirical_mse(estimator, m, snr_db, config, options);
}

MseEstimate analytic_mse(std::size_t m, double snr_db, const SystemConfig& config,
                         const MonteCarloOptions& options) {
  const TrialRequest request{EstimatorTag::kMmseFeedback, m, options.user,
                             TrialQuantity::kConditionalMse};
  return summarize(run_trials(config.with_snr_db(snr_db), request, options));
}

LowerBoundValue mse_lower_bound(const SystemConfig& config, std::size_t user) {
  LowerBoundValue bound;
  const double snr = config.pilot_energy() / config.noise_power();
  for (double variance : config.prior_variances(user)) {
    if (variance == 0.0) continue;
    // With g = σ² t: N0 g / (βP g + N0) = σ² t / (a t + 1), a = σ² βP / N0.
    double err = 0.0;
    const double integral = exponential_shrinkage_integral(variance * snr, err);
    bound.value += variance * integral;
    bound.quadrature_error += variance * err;
  }
  return bound;
}

double relative_reduction(const MseEstimate& baseline, const MseEstimate& improved) {
  if (baseline.mean == 0.0) throw std::domain_error("relative reduction of a zero baseline");
  return (baseline.mean - improved.mean) / baseline.mean * 100.0;
}

ReductionEstimate paired_relative_reduction(std::span<const double> baseline,
                                            std::span<const double> improved) {
  if (baseline.size() != improved.size() || baseline.empty())
    throw DimensionError("paired samples must be non-empty and of equal length");
  const std::size_t n = baseline.size();
  double sum_b = 0.0;
  double sum_i = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    sum_b += baseline[t];
    sum_i += improved[t];
  }
  const double mean_b = sum_b / static_cast<double>(n);
  const double mean_i = sum_i / static_cast<double>(n);
  if (mean_b == 0.0) throw std::domain_error("relative reduction of a zero baseline");
  const double ratio = mean_i / mean_b;

  ReductionEstimate out;
  out.percent = (1.0 - ratio) * 100.0;
  if (n > 1) {
    // Linearised residuals of the ratio estimator mean_i / mean_b.
    double ss = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double r = improved[t] - ratio * baseline[t];
      ss += r * r;
    }
    const double var = ss / static_cast<double>(n - 1) / static_cast<double>(n);
    out.std_error = std::sqrt(var) / mean_b * 100.0;
  }
  return out;
}

double asymptotic_ratio(EstimatorTag estimator, double snr_db, const SystemConfig& config,
                        std::size_t n_trials, Seed seed) {
  if (estimator != EstimatorTag::kMapFeedback)
    throw UsageError("asymptotic ratio is defined for map_feedback only");
  MonteCarloOptions options;
  options.n_trials = n_trials;
  options.seed = seed;
  const MseEstimate feedback =
      empirical_mse(EstimatorTag::kMapFeedback, config.n_antennas(), snr_db, config, options);
  const MseEstimate classical =
      empirical_mse(EstimatorTag::kMapClassical, 0, snr_db, config, options);
  if (classical.mean == 0.0) throw std::domain_error("classical MAP MSE is zero");
  return feedback.mean / classical.mean;
}

}  // namespace rssiest
