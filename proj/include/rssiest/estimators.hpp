#pragma once

// Per-user channel estimators from a pilot observation, optionally sharpened
// by gains disclosed through receive-power feedback.
//
// Every estimator multiplies s_ij by a non-negative real scalar (or projects
// it onto a known modulus), so none of them alters the phase of s_ij.

#include <cmath>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "rssiest/channel_model.hpp"
#include "rssiest/system_config.hpp"

namespace rssiest {

enum class EstimatorTag { kMmseClassical, kMmseFeedback, kMapClassical, kMapFeedback };

inline constexpr EstimatorTag kAllEstimators[] = {
    EstimatorTag::kMmseClassical, EstimatorTag::kMmseFeedback,
    EstimatorTag::kMapClassical, EstimatorTag::kMapFeedback};

// "mmse_classical", "mmse_feedback", "map_classical", "map_feedback".
std::string_view to_string(EstimatorTag tag) noexcept;
// Case-insensitive inverse of to_string; throws UsageError.
EstimatorTag parse_estimator(std::string_view name);

struct ChannelEstimate {
  std::vector<Complex> values;
  EstimatorTag estimator_tag;
};

// E[|h_ij|^2 | feedback]: the disclosed gain for i in S, the prior variance
// otherwise. Off-diagonal conditional moments vanish, which is what makes
// the conditioned MMSE a per-antenna scalar shrinkage.
struct ConditionalSecondMoment {
  std::vector<double> per_antenna;
};

// sqrt(βP) μ / (βP μ + N0). Shared by the MMSE and classical MAP paths so
// the two coincide bit for bit when μ is the prior variance.
inline double shrinkage_coefficient(double pilot_energy, double noise_power,
                                    double second_moment) noexcept {
  return std::sqrt(pilot_energy) * second_moment / (pilot_energy * second_moment + noise_power);
}

// sqrt(g) s / |s|, with s / |s| taken as 1 when s == 0.
inline Complex project_to_modulus(Complex s, double gain) noexcept {
  const double modulus = std::abs(s);
  const double root = std::sqrt(gain);
  if (modulus == 0.0) return {root, 0.0};
  return {root * (s.real() / modulus), root * (s.imag() / modulus)};
}

ConditionalSecondMoment conditional_second_moment(const GainDisclosure& disclosure,
                                                  std::span<const double> prior_variances);

ChannelEstimate mmse_estimate(const PilotObservation& obs, const ConditionalSecondMoment& moment,
                              const SystemConfig& config);

ChannelEstimate map_classical(const PilotObservation& obs, const SystemConfig& config,
                              std::size_t user = 0);

// Gain-relaxed MAP: for i in S the observation's phase is kept and its
// modulus replaced by sqrt(g_ij); for i outside S the classical MAP value.
// Of the two stationary roots of the per-antenna Lagrange condition this is
// the one with a positive real multiplier.
ChannelEstimate map_feedback(const PilotObservation& obs, const GainDisclosure& disclosure,
                             const SystemConfig& config, std::size_t user = 0);

// Dispatch on tag. Classical estimators ignore the disclosure.
ChannelEstimate estimate(EstimatorTag tag, const PilotObservation& obs,
                         const GainDisclosure& disclosure, const SystemConfig& config,
                         std::size_t user = 0);

// Allocation-free variant used by the trial kernel. The first `known` antennas
// are disclosed with gains taken from `gains`.
void estimate_into(EstimatorTag tag, std::span<const Complex> samples,
                   std::span<const double> prior_variances, std::span<const double> gains,
                   std::size_t known, double pilot_energy, double noise_power,
                   std::span<Complex> out);

}  // namespace rssiest
