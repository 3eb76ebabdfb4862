#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rssiest/estimators.hpp"
#include "rssiest/metrics.hpp"
#include "rssiest/random.hpp"
#include "rssiest/system_config.hpp"

namespace rssiest {

inline constexpr std::string_view kCsvHeader =
    "snr_db,m,estimator,mse_mean,mse_std_error,rel_reduction_pct,n_trials";

struct SweepSpec {
  std::vector<double> snr_grid_db;
  std::vector<std::size_t> m_grid;
  std::vector<EstimatorTag> estimators;
  std::size_t n_trials = kDefaultTrials;
  Seed master_seed = 0;
  // Dimensions and prior; pilot energy and noise power are set per SNR cell.
  SystemConfig config = SystemConfig::uniform(4, 4, 1.0, 1.0, 1.0);
  Execution execution = Execution::kParallel;
  int threads = 0;
};

// N = K = 4, identity prior, SNR -40..40 dB in 5 dB steps, m = 0..4,
// feedback MMSE and feedback MAP.
SweepSpec default_sweep_spec();

// Throws ConfigError on empty grids, duplicate grid values, m > N, zero
// trials or non-finite SNR values.
void validate(const SweepSpec& spec);

struct SweepCell {
  double snr_db = 0.0;
  std::size_t m = 0;
  EstimatorTag estimator = EstimatorTag::kMmseClassical;
  double mse_mean = 0.0;
  double mse_std_error = 0.0;
  std::optional<double> rel_reduction_pct;  // against the same estimator's m = 0 cell
  std::size_t n_trials = 0;
};

struct SweepMetadata {
  Seed master_seed = 0;
  std::string config_digest;
  std::string tool_version;
  std::size_t n_trials = 0;
  double wall_clock_seconds = 0.0;
};

struct SweepReport {
  std::vector<SweepCell> cells;  // ordered by (snr, m, estimator)
  SweepMetadata metadata;
};

SweepReport run_sweep(const SweepSpec& spec);

std::string_view tool_version() noexcept;

// FNV-1a 64 of SystemConfig::canonical_text(), as 16 hex digits.
std::string config_digest(const SystemConfig& config);

// Reals are printed with 9 significant digits; a missing reduction is an
// empty field.
std::string format_csv(const SweepReport& report);
std::string format_metadata(const SweepReport& report);

// Writes `path` (CSV) and `path` + ".meta". Throws std::runtime_error naming
// the path on I/O failure.
void emit_report(const SweepReport& report, const std::filesystem::path& path);

std::filesystem::path metadata_path(const std::filesystem::path& csv_path);

}  // namespace rssiest
