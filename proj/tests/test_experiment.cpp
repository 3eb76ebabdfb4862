#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rssiest/errors.hpp"
#include "rssiest/experiment.hpp"
#include "rssiest/sweep_file.hpp"

using namespace rssiest;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.snr_grid_db = {0.0};
  spec.m_grid = {0};
  spec.estimators = {EstimatorTag::kMmseClassical};
  spec.n_trials = 100000;
  spec.master_seed = 7;
  return spec;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string f;
    std::istringstream ls(line);
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

const SweepCell& cell_at(const SweepReport& r, double snr, std::size_t m, EstimatorTag tag) {
  for (const auto& c : r.cells)
    if (c.snr_db == snr && c.m == m && c.estimator == tag) return c;
  throw std::logic_error("cell not found");
}

}  // namespace

TEST_CASE("single-cell sweep reproduces the closed form and a two-line CSV") {
  const auto report = run_sweep(small_spec());
  REQUIRE(report.cells.size() == 1);
  const auto& c = report.cells[0];
  CHECK(std::abs(c.mse_mean - 2.0) <= 3.0 * c.mse_std_error);
  CHECK(c.rel_reduction_pct.has_value());
  CHECK(*c.rel_reduction_pct == 0.0);

  const std::string csv = format_csv(report);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("spec validation") {
  auto spec = small_spec();
  spec.estimators.clear();
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);
  spec = small_spec();
  spec.m_grid = {0, 5};
  CHECK_THROWS_AS(validate(spec), ConfigError);
  spec = small_spec();
  spec.snr_grid_db = {0.0, 0.0};
  CHECK_THROWS_AS(validate(spec), ConfigError);
  spec = small_spec();
  spec.snr_grid_db.clear();
  CHECK_THROWS_AS(validate(spec), ConfigError);
  spec = small_spec();
  spec.n_trials = 0;
  CHECK_THROWS_AS(validate(spec), ConfigError);
  CHECK_NOTHROW(validate(default_sweep_spec()));
}

TEST_CASE("sweep is deterministic, ordered, and consistent at m = 0") {
  SweepSpec spec;
  spec.snr_grid_db = {10.0, -10.0};
  spec.m_grid = {2, 0};
  spec.estimators = {EstimatorTag::kMapFeedback, EstimatorTag::kMmseClassical,
                     EstimatorTag::kMmseFeedback};
  spec.n_trials = 5000;
  spec.master_seed = 3;
  const auto a = run_sweep(spec);
  spec.execution = Execution::kSerial;
  const auto b = run_sweep(spec);
  CHECK(format_csv(a) == format_csv(b));
  REQUIRE(a.cells.size() == 12);
  CHECK(a.cells.front().snr_db == -10.0);
  CHECK(a.cells.front().m == 0);
  CHECK(a.cells.front().estimator == EstimatorTag::kMmseClassical);
  for (double snr : {-10.0, 10.0}) {
    const auto& fb = cell_at(a, snr, 0, EstimatorTag::kMmseFeedback);
    const auto& cl = cell_at(a, snr, 0, EstimatorTag::kMmseClassical);
    CHECK(fb.mse_mean == cl.mse_mean);
    CHECK(fb.mse_std_error == cl.mse_std_error);
    CHECK(cell_at(a, snr, 0, EstimatorTag::kMapFeedback).mse_mean == cl.mse_mean);
  }
}

TEST_CASE("missing baseline leaves the reduction empty") {
  auto spec = small_spec();
  spec.m_grid = {1};
  spec.estimators = {EstimatorTag::kMmseFeedback};
  spec.n_trials = 100;
  const auto report = run_sweep(spec);
  CHECK_FALSE(report.cells[0].rel_reduction_pct.has_value());
  CHECK(csv_rows(format_csv(report))[0][5].empty());
}

TEST_CASE("emitted files are byte-stable and rows recompute their reduction") {
  SweepSpec spec;
  spec.snr_grid_db = {-5.0, 15.0};
  spec.m_grid = {0, 1, 4};
  spec.estimators = {EstimatorTag::kMmseFeedback, EstimatorTag::kMapFeedback};
  spec.n_trials = 4000;
  const auto report = run_sweep(spec);

  const auto dir = std::filesystem::temp_directory_path() / "rssiest_test_experiment";
  std::filesystem::create_directories(dir);
  const auto p1 = dir / "a.csv";
  const auto p2 = dir / "b.csv";
  emit_report(report, p1);
  emit_report(report, p2);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(metadata_path(p1)) == slurp(metadata_path(p2)));

  const auto meta = parse_key_values(slurp(metadata_path(p1)));
  CHECK(meta.at("master_seed") == std::to_string(spec.master_seed));
  CHECK(meta.at("config_digest") == config_digest(spec.config));
  CHECK(meta.at("version") == tool_version());

  const auto rows = csv_rows(slurp(p1));
  REQUIRE(rows.size() == report.cells.size());
  for (const auto& row : rows) {
    REQUIRE(row.size() == 7);
    const double snr = std::stod(row[0]);
    const double mse = std::stod(row[3]);
    const auto base_row = std::find_if(rows.begin(), rows.end(), [&](const auto& r) {
      return std::stod(r[0]) == snr && r[1] == "0" && r[2] == row[2];
    });
    REQUIRE(base_row != rows.end());
    const double base = std::stod((*base_row)[3]);
    const double recomputed = 100.0 * (base - mse) / base;
    // Nine significant digits on both MSE columns.
    CHECK(std::abs(recomputed - std::stod(row[5])) <= 1e-6 * (1.0 + std::abs(recomputed)));
  }

  CHECK_THROWS_AS(emit_report(report, dir / "missing" / "x.csv"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("figure trends on a coarse SNR grid") {
  SweepSpec spec;
  spec.snr_grid_db = {-30.0, -10.0, 0.0, 10.0, 30.0};
  spec.m_grid = {0, 1, 2, 3, 4};
  spec.estimators = {EstimatorTag::kMmseFeedback, EstimatorTag::kMapFeedback};
  spec.n_trials = 100000;
  const auto report = run_sweep(spec);

  // Feedback MMSE: reduction grows with m at every SNR (3-SE slack on the
  // underlying MSE) and peaks away from the extremes.
  for (double snr : spec.snr_grid_db)
    for (std::size_t m = 1; m <= 4; ++m) {
      const auto& prev = cell_at(report, snr, m - 1, EstimatorTag::kMmseFeedback);
      const auto& cur = cell_at(report, snr, m, EstimatorTag::kMmseFeedback);
      CHECK(cur.mse_mean <= prev.mse_mean + 3.0 * std::hypot(cur.mse_std_error, prev.mse_std_error));
    }
  double best_mid = 0.0;
  for (double snr : {-10.0, 0.0, 10.0})
    best_mid = std::max(best_mid, *cell_at(report, snr, 4, EstimatorTag::kMmseFeedback).rel_reduction_pct);
  CHECK(best_mid > *cell_at(report, -30.0, 4, EstimatorTag::kMmseFeedback).rel_reduction_pct);
  CHECK(best_mid > *cell_at(report, 30.0, 4, EstimatorTag::kMmseFeedback).rel_reduction_pct);

  // Feedback MAP: degrades at low SNR, helps at high SNR.
  CHECK(*cell_at(report, -30.0, 4, EstimatorTag::kMapFeedback).rel_reduction_pct < 0.0);
  CHECK(*cell_at(report, 30.0, 4, EstimatorTag::kMapFeedback).rel_reduction_pct > 0.0);
}

TEST_CASE("sweep file parsing and override precedence") {
  const auto file = parse_sweep_file(
      "# reproduction\n"
      "snr_db = -10, 0 ,10\n"
      "m = 0,4\n"
      "estimators = mmse_feedback, MAP_FEEDBACK\n"
      "trials = 500\n"
      "seed = 99\n"
      "antennas = 6\n"
      "out = r.csv\n");
  CHECK(*file.snr_db == std::vector<double>{-10, 0, 10});
  CHECK(*file.m == std::vector<std::size_t>{0, 4});
  CHECK(file.estimators->size() == 2);

  SweepOverrides flags;
  flags.trials = 50;
  flags.m = std::vector<std::size_t>{1};
  const auto spec = build_sweep_spec(merge(file, flags));
  CHECK(spec.n_trials == 50);
  CHECK(spec.m_grid == std::vector<std::size_t>{1});
  CHECK(spec.master_seed == 99);
  CHECK(spec.config.n_antennas() == 6);
  CHECK(spec.config.n_users() == 4);

  CHECK_THROWS_AS(parse_sweep_file("snr_db 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_file("colour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_file("m = 0,,1\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_file("trials = ten\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_file("estimators = ls\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_file("m = 1\nm = 2\n"), ConfigError);
  SweepOverrides too_many;
  too_many.m = std::vector<std::size_t>{5};
  CHECK_THROWS_AS(build_sweep_spec(too_many), ConfigError);
}
