#include "rssiest/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "rssiest/errors.hpp"

#ifndef RSSIEST_VERSION
#define RSSIEST_VERSION "0.0.0"
#endif

namespace rssiest {

namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing: " +
                                     std::strerror(errno));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

SweepSpec default_sweep_spec() {
  SweepSpec spec;
  for (int db = -40; db <= 40; db += 5) spec.snr_grid_db.push_back(db);
  spec.m_grid = {0, 1, 2, 3, 4};
  spec.estimators = {EstimatorTag::kMmseFeedback, EstimatorTag::kMapFeedback};
  spec.n_trials = kDefaultTrials;
  spec.master_seed = 7;
  spec.config = SystemConfig::uniform(4, 4, 1.0, 1.0, 1.0);
  return spec;
}

void validate(const SweepSpec& spec) {
  if (spec.snr_grid_db.empty()) throw ConfigError("SNR grid is empty");
  if (spec.m_grid.empty()) throw ConfigError("feedback-count grid is empty");
  if (spec.estimators.empty()) throw ConfigError("estimator set is empty");
  if (spec.n_trials == 0) throw ConfigError("n_trials must be at least 1");
  for (double snr : spec.snr_grid_db)
    if (!std::isfinite(snr)) throw ConfigError("SNR values must be finite");
  if (std::set<double>(spec.snr_grid_db.begin(), spec.snr_grid_db.end()).size() !=
      spec.snr_grid_db.size())
    throw ConfigError("SNR grid has duplicate values");
  if (std::set<std::size_t>(spec.m_grid.begin(), spec.m_grid.end()).size() != spec.m_grid.size())
    throw ConfigError("feedback-count grid has duplicate values");
  for (std::size_t m : spec.m_grid)
    if (m > spec.config.n_antennas())
      throw ConfigError("feedback count " + std::to_string(m) + " exceeds n_antennas " +
                        std::to_string(spec.config.n_antennas()));
  if (std::set<EstimatorTag>(spec.estimators.begin(), spec.estimators.end()).size() !=
      spec.estimators.size())
    throw ConfigError("estimator set has duplicates");
}

SweepReport run_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto start = std::chrono::steady_clock::now();

  std::vector<double> snrs = spec.snr_grid_db;
  std::vector<std::size_t> ms = spec.m_grid;
  std::vector<EstimatorTag> tags = spec.estimators;
  std::sort(snrs.begin(), snrs.end());
  std::sort(ms.begin(), ms.end());
  std::sort(tags.begin(), tags.end());

  MonteCarloOptions options;
  options.n_trials = spec.n_trials;
  options.seed = spec.master_seed;
  options.execution = spec.execution;
  options.threads = spec.threads;

  SweepReport report;
  report.cells.reserve(snrs.size() * ms.size() * tags.size());
  for (double snr : snrs) {
    // Baselines per estimator at this SNR, when m = 0 is on the grid.
    std::map<EstimatorTag, MseEstimate> baseline;
    std::map<std::pair<std::size_t, EstimatorTag>, MseEstimate> row;
    for (EstimatorTag tag : tags)
      for (std::size_t m : ms) {
        const MseEstimate est = empirical_mse(tag, m, snr, spec.config, options);
        row[{m, tag}] = est;
        if (m == 0) baseline[tag] = est;
      }
    for (std::size_t m : ms)
      for (EstimatorTag tag : tags) {
        const MseEstimate& est = row.at({m, tag});
        SweepCell cell{snr, m, tag, est.mean, est.std_error, std::nullopt, est.n_trials};
        if (auto it = baseline.find(tag); it != baseline.end() && it->second.mean > 0.0)
          cell.rel_reduction_pct = relative_reduction(it->second, est);
        report.cells.push_back(cell);
      }
  }

  report.metadata.master_seed = spec.master_seed;
  report.metadata.config_digest = config_digest(spec.config);
  report.metadata.tool_version = std::string(tool_version());
  report.metadata.n_trials = spec.n_trials;
  report.metadata.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string_view tool_version() noexcept { return RSSIEST_VERSION; }

std::string config_digest(const SystemConfig& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.canonical_text()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string format_csv(const SweepReport& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const SweepCell& c : report.cells) {
    out += format_real(c.snr_db);
    out += ',' + std::to_string(c.m);
    out += ',' + std::string(to_string(c.estimator));
    out += ',' + format_real(c.mse_mean);
    out += ',' + format_real(c.mse_std_error);
    out += ',';
    if (c.rel_reduction_pct) out += format_real(*c.rel_reduction_pct);
    out += ',' + std::to_string(c.n_trials);
    out += '\n';
  }
  return out;
}

std::string format_metadata(const SweepReport& report) {
  const SweepMetadata& m = report.metadata;
  std::ostringstream out;
  out << "master_seed = " << m.master_seed << '\n'
      << "config_digest = " << m.config_digest << '\n'
      << "version = " << m.tool_version << '\n'
      << "n_trials = " << m.n_trials << '\n'
      << "wall_clock_seconds = " << format_real(m.wall_clock_seconds) << '\n';
  return out.str();
}

std::filesystem::path metadata_path(const std::filesystem::path& csv_path) {
  std::filesystem::path meta = csv_path;
  meta += ".meta";
  return meta;
}

void emit_report(const SweepReport& report, const std::filesystem::path& path) {
  write_file(path, format_csv(report));
  write_file(metadata_path(path), format_metadata(report));
}

}  // namespace rssiest
