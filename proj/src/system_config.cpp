#include "rssiest/system_config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "rssiest/errors.hpp"

namespace rssiest {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

SystemConfig::SystemConfig(std::size_t n_antennas, std::size_t n_users,
                           double pilot_energy, double noise_power,
                           std::vector<std::vector<double>> prior_variances,
                           std::optional<FrameLayout> frame)
    : n_antennas_(n_antennas),
      n_users_(n_users),
      pilot_energy_(pilot_energy),
      noise_power_(noise_power),
      prior_variances_(std::move(prior_variances)),
      frame_(frame) {
  if (n_antennas_ == 0) throw ConfigError("n_antennas must be positive");
  if (n_users_ == 0) throw ConfigError("n_users must be positive");
  if (!positive_finite(pilot_energy_))
    throw ConfigError("pilot_energy must be positive and finite");
  if (!positive_finite(noise_power_))
    throw ConfigError("noise_power must be positive and finite");
  if (prior_variances_.size() != n_users_)
    throw ConfigError("prior_variances must have one row per user");
  for (const auto& row : prior_variances_) {
    if (row.size() != n_antennas_)
      throw ConfigError("prior_variances rows must have n_antennas entries");
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0)
        throw ConfigError("prior variances must be finite and non-negative");
    }
  }
}

SystemConfig SystemConfig::uniform(std::size_t n_antennas, std::size_t n_users,
                                   double pilot_energy, double noise_power,
                                   double prior_variance) {
  return SystemConfig(
      n_antennas, n_users, pilot_energy, noise_power,
      std::vector<std::vector<double>>(n_users, std::vector<double>(n_antennas, prior_variance)));
}

SystemConfig SystemConfig::from_snr_db(double snr_db, std::size_t n_antennas,
                                       std::size_t n_users, double prior_variance) {
  return uniform(n_antennas, n_users, db_to_linear(snr_db), 1.0, prior_variance);
}

SystemConfig SystemConfig::with_snr_db(double snr_db) const {
  return SystemConfig(n_antennas_, n_users_, db_to_linear(snr_db), 1.0,
                      prior_variances_, frame_);
}

std::span<const double> SystemConfig::prior_variances(std::size_t user) const {
  if (user >= n_users_) throw DimensionError("user index out of range");
  return prior_variances_[user];
}

std::string SystemConfig::canonical_text() const {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "n_antennas=" << n_antennas_ << '\n'
      << "n_users=" << n_users_ << '\n'
      << "pilot_energy=" << fmt(pilot_energy_) << '\n'
      << "noise_power=" << fmt(noise_power_) << '\n';
  for (std::size_t j = 0; j < n_users_; ++j) {
    out << "prior[" << j << "]=";
    for (std::size_t i = 0; i < n_antennas_; ++i)
      out << (i ? "," : "") << fmt(prior_variances_[j][i]);
    out << '\n';
  }
  if (frame_)
    out << "frame=" << frame_->slots_per_frame << "x" << frame_->symbols_per_slot << '\n';
  return out.str();
}

}  // namespace rssiest
