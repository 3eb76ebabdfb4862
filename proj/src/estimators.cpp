#include "rssiest/estimators.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "rssiest/errors.hpp"

namespace rssiest {

namespace {

void check_dims(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw DimensionError(std::string(what) + ": expected " + std::to_string(want) +
                         " entries, got " + std::to_string(got));
}

void check_disclosure(const GainDisclosure& disclosure, std::size_t n) {
  for (std::size_t i : disclosure.known_indices) {
    if (i >= n) throw DimensionError("disclosed antenna index out of range");
    if (!disclosure.known_gains.contains(i))
      throw DimensionError("disclosed antenna has no gain value");
  }
}

}  // namespace

std::string_view to_string(EstimatorTag tag) noexcept {
  switch (tag) {
    case EstimatorTag::kMmseClassical: return "mmse_classical";
    case EstimatorTag::kMmseFeedback: return "mmse_feedback";
    case EstimatorTag::kMapClassical: return "map_classical";
    case EstimatorTag::kMapFeedback: return "map_feedback";
  }
  return "unknown";
}

EstimatorTag parse_estimator(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (EstimatorTag tag : kAllEstimators)
    if (lower == to_string(tag)) return tag;
  throw UsageError("unknown estimator '" + std::string(name) + "'");
}

ConditionalSecondMoment conditional_second_moment(const GainDisclosure& disclosure,
                                                  std::span<const double> prior_variances) {
  check_disclosure(disclosure, prior_variances.size());
  ConditionalSecondMoment moment{{prior_variances.begin(), prior_variances.end()}};
  for (std::size_t i : disclosure.known_indices) moment.per_antenna[i] = disclosure.known_gains.at(i);
  return moment;
}

ChannelEstimate mmse_estimate(const PilotObservation& obs, const ConditionalSecondMoment& moment,
                              const SystemConfig& config) {
  check_dims(obs.samples.size(), config.n_antennas(), "pilot observation");
  check_dims(moment.per_antenna.size(), config.n_antennas(), "second moment");
  ChannelEstimate est{std::vector<Complex>(obs.samples.size()), EstimatorTag::kMmseFeedback};
  for (std::size_t i = 0; i < obs.samples.size(); ++i)
    est.values[i] = shrinkage_coefficient(config.pilot_energy(), config.noise_power(),
                                          moment.per_antenna[i]) *
                    obs.samples[i];
  return est;
}

ChannelEstimate map_classical(const PilotObservation& obs, const SystemConfig& config,
                              std::size_t user) {
  check_dims(obs.samples.size(), config.n_antennas(), "pilot observation");
  const auto prior = config.prior_variances(user);
  ChannelEstimate est{std::vector<Complex>(obs.samples.size()), EstimatorTag::kMapClassical};
  for (std::size_t i = 0; i < obs.samples.size(); ++i)
    est.values[i] =
        shrinkage_coefficient(config.pilot_energy(), config.noise_power(), prior[i]) *
        obs.samples[i];
  return est;
}

ChannelEstimate map_feedback(const PilotObservation& obs, const GainDisclosure& disclosure,
                             const SystemConfig& config, std::size_t user) {
  check_disclosure(disclosure, config.n_antennas());
  ChannelEstimate est = map_classical(obs, config, user);
  est.estimator_tag = EstimatorTag::kMapFeedback;
  for (std::size_t i : disclosure.known_indices)
    est.values[i] = project_to_modulus(obs.samples[i], disclosure.known_gains.at(i));
  return est;
}

ChannelEstimate estimate(EstimatorTag tag, const PilotObservation& obs,
                         const GainDisclosure& disclosure, const SystemConfig& config,
                         std::size_t user) {
  switch (tag) {
    case EstimatorTag::kMmseClassical: {
      ChannelEstimate est =
          mmse_estimate(obs, conditional_second_moment({}, config.prior_variances(user)), config);
      est.estimator_tag = tag;
      return est;
    }
    case EstimatorTag::kMmseFeedback:
      return mmse_estimate(
          obs, conditional_second_moment(disclosure, config.prior_variances(user)), config);
    case EstimatorTag::kMapClassical:
      return map_classical(obs, config, user);
    case EstimatorTag::kMapFeedback:
      return map_feedback(obs, disclosure, config, user);
  }
  throw UsageError("unknown estimator tag");
}

void estimate_into(EstimatorTag tag, std::span<const Complex> samples,
                   std::span<const double> prior_variances, std::span<const double> gains,
                   std::size_t known, double pilot_energy, double noise_power,
                   std::span<Complex> out) {
  const std::size_t n = samples.size();
  const bool uses_feedback =
      tag == EstimatorTag::kMmseFeedback || tag == EstimatorTag::kMapFeedback;
  const std::size_t disclosed = uses_feedback ? std::min(known, n) : 0;
  const bool project = tag == EstimatorTag::kMapFeedback;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < disclosed && project) {
      out[i] = project_to_modulus(samples[i], gains[i]);
    } else {
      const double mu = i < disclosed ? gains[i] : prior_variances[i];
      out[i] = shrinkage_coefficient(pilot_energy, noise_power, mu) * samples[i];
    }
  }
}

}  // namespace rssiest
