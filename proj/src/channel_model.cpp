#include "rssiest/channel_model.hpp"

#include <cmath>
#include <string>

#include "rssiest/errors.hpp"

namespace rssiest {

namespace {

void check_user(const ChannelRealization& channel, std::size_t user) {
  if (user >= channel.coefficients.size())
    throw DimensionError("user index " + std::to_string(user) + " out of range");
}

}  // namespace

PowerAllocation::PowerAllocation(std::size_t n_antennas,
                                 std::vector<std::vector<double>> per_slot_powers)
    : n_antennas_(n_antennas), rows_(std::move(per_slot_powers)) {
  for (const auto& row : rows_) {
    if (row.size() != n_antennas_)
      throw DimensionError("power allocation row length differs from n_antennas");
    for (double p : row)
      if (!std::isfinite(p) || p < 0.0)
        throw ConfigError("transmit powers must be finite and non-negative");
  }
}

void draw_user_coefficients(std::span<const double> prior_variances, Seed seed,
                            std::size_t user, std::span<Complex> out) {
  if (out.size() != prior_variances.size())
    throw DimensionError("coefficient buffer size differs from prior size");
  ComplexGaussian gauss(derive_seed(seed, StreamDomain::kChannel, user));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = gauss(prior_variances[i]);
}

void draw_pilot_samples(std::span<const Complex> coefficients, double pilot_energy,
                        double noise_power, Seed seed, std::size_t user,
                        std::span<Complex> out) {
  if (out.size() != coefficients.size())
    throw DimensionError("pilot buffer size differs from channel size");
  ComplexGaussian gauss(derive_seed(seed, StreamDomain::kPilotNoise, user));
  const double amplitude = std::sqrt(pilot_energy);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = amplitude * coefficients[i] + gauss(noise_power);
}

ChannelRealization sample_channel(const SystemConfig& config, Seed seed) {
  ChannelRealization channel;
  channel.coefficients.reserve(config.n_users());
  channel.gains.reserve(config.n_users());
  for (std::size_t j = 0; j < config.n_users(); ++j) {
    auto& h = channel.coefficients.emplace_back(sample_user_channel(config, j, seed));
    auto& g = channel.gains.emplace_back(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) g[i] = std::norm(h[i]);
  }
  return channel;
}

std::vector<Complex> sample_user_channel(const SystemConfig& config, std::size_t user, Seed seed) {
  std::vector<Complex> h(config.n_antennas());
  draw_user_coefficients(config.prior_variances(user), seed, user, h);
  return h;
}

PilotObservation observe_pilots(const ChannelRealization& channel, std::size_t user,
                                const SystemConfig& config, Seed seed) {
  check_user(channel, user);
  const auto& h = channel.coefficients[user];
  if (h.size() != config.n_antennas())
    throw DimensionError("channel dimension differs from n_antennas");
  PilotObservation obs{std::vector<Complex>(h.size())};
  draw_pilot_samples(h, config.pilot_energy(), config.noise_power(), seed, user, obs.samples);
  return obs;
}

RssiSequence compute_rssi(const ChannelRealization& channel, std::size_t user,
                          const PowerAllocation& allocation, const SystemConfig& config) {
  check_user(channel, user);
  const auto& g = channel.gains[user];
  if (allocation.n_antennas() != g.size())
    throw DimensionError("power allocation width differs from channel dimension");
  RssiSequence rssi;
  rssi.values.reserve(allocation.n_slots());
  for (std::size_t n = 0; n < allocation.n_slots(); ++n) {
    const auto powers = allocation.slot(n);
    double received = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) received += g[i] * powers[i];
    rssi.values.push_back(received + config.noise_power());
  }
  return rssi;
}

GainDisclosure disclose_gains(const ChannelRealization& channel, std::size_t user, std::size_t m) {
  check_user(channel, user);
  const auto& g = channel.gains[user];
  if (m > g.size())
    throw RangeError("cannot disclose " + std::to_string(m) + " gains with " +
                     std::to_string(g.size()) + " antennas");
  GainDisclosure disclosure;
  disclosure.known_indices.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    disclosure.known_indices.push_back(i);
    disclosure.known_gains.emplace(i, g[i]);
  }
  return disclosure;
}

}  // namespace rssiest
