#include "rssiest/trial_kernel.hpp"

#include <omp.h>

#include <string>
#include <vector>

#include "rssiest/channel_model.hpp"
#include "rssiest/errors.hpp"

namespace rssiest {

namespace {

struct TrialScratch {
  explicit TrialScratch(std::size_t n) : h(n), s(n), est(n), g(n) {}
  std::vector<Complex> h;
  std::vector<Complex> s;
  std::vector<Complex> est;
  std::vector<double> g;
};

double run_trial(const SystemConfig& config, const TrialRequest& request,
                 std::span<const double> prior, Seed master, std::uint64_t trial,
                 TrialScratch& scratch) {
  const Seed seed = derive_seed(master, StreamDomain::kTrial, trial);
  const double pilot = config.pilot_energy();
  const double noise = config.noise_power();
  const std::size_t n = scratch.h.size();

  draw_user_coefficients(prior, seed, request.user, scratch.h);
  for (std::size_t i = 0; i < n; ++i) scratch.g[i] = std::norm(scratch.h[i]);

  if (request.quantity == TrialQuantity::kConditionalMse) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mu = i < request.feedback_count ? scratch.g[i] : prior[i];
      total += noise * mu / (pilot * mu + noise);
    }
    return total;
  }

  draw_pilot_samples(scratch.h, pilot, noise, seed, request.user, scratch.s);
  estimate_into(request.estimator, scratch.s, prior, scratch.g, request.feedback_count, pilot,
                noise, scratch.est);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += std::norm(scratch.est[i] - scratch.h[i]);
  return total;
}

}  // namespace

void validate_request(const SystemConfig& config, const TrialRequest& request) {
  if (request.user >= config.n_users())
    throw DimensionError("user index " + std::to_string(request.user) + " out of range");
  if (request.feedback_count > config.n_antennas())
    throw RangeError("feedback count " + std::to_string(request.feedback_count) +
                     " exceeds n_antennas");
}

void fill_trials_serial(const SystemConfig& config, const TrialRequest& request, Seed master,
                        std::span<double> out, std::uint64_t first_trial) {
  validate_request(config, request);
  const auto prior = config.prior_variances(request.user);
  TrialScratch scratch(config.n_antennas());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = run_trial(config, request, prior, master, first_trial + k, scratch);
}

void fill_trials_parallel(const SystemConfig& config, const TrialRequest& request, Seed master,
                          std::span<double> out, std::uint64_t first_trial, int threads) {
  validate_request(config, request);
  const auto prior = config.prior_variances(request.user);
  const auto count = static_cast<std::int64_t>(out.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(team)
  {
    TrialScratch scratch(config.n_antennas());
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < count; ++k)
      out[k] = run_trial(config, request, prior, master,
                         first_trial + static_cast<std::uint64_t>(k), scratch);
  }
}

}  // namespace rssiest
