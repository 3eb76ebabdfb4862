#pragma once

// Rayleigh block-fading channel draws, pilot observations, receive-power
// (RSSI) feedback and the gain disclosures derived from it.
//
// Antenna and user indices are zero-based throughout. All draws are pure
// functions of (inputs, seed): user j's channel comes from the stream
// derive_seed(seed, kChannel, j) and its pilot noise from
// derive_seed(seed, kPilotNoise, j).

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "rssiest/random.hpp"
#include "rssiest/system_config.hpp"

namespace rssiest {

using Complex = std::complex<double>;

struct ChannelRealization {
  std::vector<std::vector<Complex>> coefficients;  // [user][antenna], h_ij
  std::vector<std::vector<double>> gains;          // [user][antenna], |h_ij|^2
};

struct PilotObservation {
  std::vector<Complex> samples;  // s_ij for one user
};

// Per-slot transmit powers P_i(n): one row per slot, one column per antenna.
class PowerAllocation {
 public:
  PowerAllocation(std::size_t n_antennas, std::vector<std::vector<double>> per_slot_powers);

  [[nodiscard]] std::size_t n_slots() const noexcept { return rows_.size(); }
  [[nodiscard]] std::size_t n_antennas() const noexcept { return n_antennas_; }
  [[nodiscard]] std::span<const double> slot(std::size_t n) const { return rows_.at(n); }

 private:
  std::size_t n_antennas_;
  std::vector<std::vector<double>> rows_;
};

struct RssiSequence {
  std::vector<double> values;  // r_{j,1..m}
};

// The set S of antennas whose gain is known from feedback, with the values.
struct GainDisclosure {
  std::vector<std::size_t> known_indices;     // ascending
  std::map<std::size_t, double> known_gains;  // index -> g_ij

  [[nodiscard]] std::size_t feedback_count() const noexcept { return known_indices.size(); }
  [[nodiscard]] bool empty() const noexcept { return known_indices.empty(); }
};

// Span kernels used by the Monte-Carlo loop; no allocation.
void draw_user_coefficients(std::span<const double> prior_variances, Seed seed,
                            std::size_t user, std::span<Complex> out);
void draw_pilot_samples(std::span<const Complex> coefficients, double pilot_energy,
                        double noise_power, Seed seed, std::size_t user,
                        std::span<Complex> out);

ChannelRealization sample_channel(const SystemConfig& config, Seed seed);

// Coefficients of a single user; identical to sample_channel(...).coefficients[user].
std::vector<Complex> sample_user_channel(const SystemConfig& config, std::size_t user, Seed seed);

PilotObservation observe_pilots(const ChannelRealization& channel, std::size_t user,
                                const SystemConfig& config, Seed seed);

// r_{j,n} = sum_i g_ij P_i(n) + N0, noiseless.
RssiSequence compute_rssi(const ChannelRealization& channel, std::size_t user,
                          const PowerAllocation& allocation, const SystemConfig& config);

// Each feedback reconstructs one gain exactly, in antenna order: m feedbacks
// disclose antennas {0, ..., m-1}. Throws RangeError when m > N.
GainDisclosure disclose_gains(const ChannelRealization& channel, std::size_t user, std::size_t m);

}  // namespace rssiest
