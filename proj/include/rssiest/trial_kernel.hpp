#pragma once

// Monte-Carlo trial kernels. Trial t of a run seeded with `master` draws its
// channel and pilot noise from derive_seed(master, kTrial, t), so the value
// of trial t depends only on (config, estimator, m, master, t). The OpenMP
// kernel and the serial reference therefore fill identical buffers.

#include <cstddef>
#include <cstdint>
#include <span>

#include "rssiest/estimators.hpp"
#include "rssiest/random.hpp"
#include "rssiest/system_config.hpp"

namespace rssiest {

enum class TrialQuantity {
  kSquaredError,    // sum_i |ĥ_ij - h_ij|^2
  kConditionalMse,  // sum_i N0 μ_i / (βP μ_i + N0), μ from the trial's disclosure
};

struct TrialRequest {
  EstimatorTag estimator = EstimatorTag::kMmseClassical;
  std::size_t feedback_count = 0;  // m
  std::size_t user = 0;
  TrialQuantity quantity = TrialQuantity::kSquaredError;
};

// Throws DimensionError / RangeError for a user or m the config cannot hold.
void validate_request(const SystemConfig& config, const TrialRequest& request);

// out[k] receives the value of trial first_trial + k.
void fill_trials_serial(const SystemConfig& config, const TrialRequest& request, Seed master,
                        std::span<double> out, std::uint64_t first_trial = 0);

// threads == 0 uses the OpenMP default team size.
void fill_trials_parallel(const SystemConfig& config, const TrialRequest& request, Seed master,
                          std::span<double> out, std::uint64_t first_trial = 0, int threads = 0);

}  // namespace rssiest
