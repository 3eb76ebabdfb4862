#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rssiest {

// Frame bookkeeping carried for reference only; no computation uses it.
struct FrameLayout {
  std::size_t slots_per_frame = 0;   // M
  std::size_t symbols_per_slot = 0;  // T
};

/// Ground rules of one experiment: N transmit antennas, K single-antenna
/// users, pilot energy (the product of pilot count and pilot power), noise
/// power and the diagonal channel prior of every user.
///
/// Instances are always valid; the constructor throws ConfigError otherwise.
class SystemConfig {
 public:
  SystemConfig(std::size_t n_antennas, std::size_t n_users, double pilot_energy,
               double noise_power,
               std::vector<std::vector<double>> prior_variances,
               std::optional<FrameLayout> frame = std::nullopt);

  // Same prior variance on every (antenna, user) pair.
  static SystemConfig uniform(std::size_t n_antennas, std::size_t n_users,
                              double pilot_energy, double noise_power,
                              double prior_variance);

  // Noise power fixed to 1 and pilot energy 10^(snr_db / 10).
  static SystemConfig from_snr_db(double snr_db, std::size_t n_antennas,
                                  std::size_t n_users, double prior_variance);

  // Copy with N0 = 1 and pilot energy 10^(snr_db / 10); the prior is kept.
  [[nodiscard]] SystemConfig with_snr_db(double snr_db) const;

  [[nodiscard]] std::size_t n_antennas() const noexcept { return n_antennas_; }
  [[nodiscard]] std::size_t n_users() const noexcept { return n_users_; }
  [[nodiscard]] double pilot_energy() const noexcept { return pilot_energy_; }
  [[nodiscard]] double noise_power() const noexcept { return noise_power_; }
  [[nodiscard]] double snr() const noexcept { return pilot_energy_ / noise_power_; }
  [[nodiscard]] std::span<const double> prior_variances(std::size_t user) const;
  [[nodiscard]] const std::optional<FrameLayout>& frame() const noexcept { return frame_; }

  // Canonical one-line-per-field text, used for digests.
  [[nodiscard]] std::string canonical_text() const;

 private:
  std::size_t n_antennas_;
  std::size_t n_users_;
  double pilot_energy_;
  double noise_power_;
  std::vector<std::vector<double>> prior_variances_;
  std::optional<FrameLayout> frame_;
};

double db_to_linear(double db);

}  // namespace rssiest
