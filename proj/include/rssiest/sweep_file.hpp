#pragma once

// Line-oriented `key = value` sweep description. Lists are comma-separated,
// `#` starts a comment. Recognised keys:
//
//   snr_db, m, estimators, trials, seed, antennas, users, prior_variance,
//   threads, out

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rssiest/experiment.hpp"

namespace rssiest {

struct SweepOverrides {
  std::optional<std::vector<double>> snr_db;
  std::optional<std::vector<std::size_t>> m;
  std::optional<std::vector<EstimatorTag>> estimators;
  std::optional<std::size_t> trials;
  std::optional<Seed> seed;
  std::optional<std::size_t> antennas;
  std::optional<std::size_t> users;
  std::optional<double> prior_variance;
  std::optional<int> threads;
  std::optional<std::string> out;
};

// Throws ConfigError naming the offending line.
std::map<std::string, std::string> parse_key_values(std::string_view text);

std::vector<double> parse_real_list(std::string_view text);
std::vector<std::size_t> parse_count_list(std::string_view text);
std::vector<EstimatorTag> parse_estimator_list(std::string_view text);

SweepOverrides parse_sweep_file(std::string_view text);
SweepOverrides load_sweep_file(const std::string& path);

// Fields set in `top` win over those in `base`.
SweepOverrides merge(SweepOverrides base, const SweepOverrides& top);

// Applies overrides on top of default_sweep_spec() and validates the result.
SweepSpec build_sweep_spec(const SweepOverrides& overrides);

}  // namespace rssiest
