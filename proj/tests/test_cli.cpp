#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using rssiest::cli::parse_and_dispatch;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rssiest");
  std::ostringstream out, err;
  const int status = parse_and_dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name)
      : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("sweep writes one row per m") {
  TempDir dir("rssiest_cli_sweep");
  const auto csv = (dir.path / "r.csv").string();
  const auto r = run({"sweep", "--snr", "0", "--m", "0,1,2,3,4", "--estimator", "mmse_feedback",
                      "--trials", "100000", "--seed", "7", "--out", csv});
  REQUIRE(r.status == 0);
  const std::string text = slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
  CHECK(std::filesystem::exists(csv + ".meta"));

  // Same argv, same bytes.
  const auto again = (dir.path / "r2.csv").string();
  REQUIRE(run({"sweep", "--snr", "0", "--m", "0,1,2,3,4", "--estimator", "mmse_feedback",
               "--trials", "100000", "--seed", "7", "--out", again})
              .status == 0);
  CHECK(slurp(again) == text);
}

TEST_CASE("negative SNR values and spec files") {
  TempDir dir("rssiest_cli_spec");
  const auto spec = dir.path / "s.txt";
  std::ofstream(spec) << "snr_db = -40, 40\nm = 0, 4\nestimators = map_feedback\ntrials = 200\n"
                      << "out = " << (dir.path / "from_file.csv").string() << "\n";
  REQUIRE(run({"sweep", "--spec", spec.string()}).status == 0);
  CHECK(std::filesystem::exists(dir.path / "from_file.csv"));

  // Flags override the file.
  const auto flagged = (dir.path / "flag.csv").string();
  REQUIRE(run({"sweep", "--spec", spec.string(), "--snr", "-20", "--out", flagged}).status == 0);
  const std::string text = slurp(flagged);
  CHECK(text.find("\n-20,0,map_feedback,") != std::string::npos);
  CHECK(text.find("\n-40,") == std::string::npos);
}

TEST_CASE("default output directory from the environment") {
  TempDir dir("rssiest_cli_env");
  ::setenv(rssiest::cli::kOutputDirEnv, dir.path.c_str(), 1);
  const auto r = run({"sweep", "--snr", "0", "--m", "0", "--estimator", "mmse_classical",
                      "--trials", "10"});
  ::unsetenv(rssiest::cli::kOutputDirEnv);
  CHECK(r.status == 0);
  CHECK(std::filesystem::exists(dir.path / "sweep.csv"));
}

TEST_CASE("bound prints the quadrature value") {
  const auto r = run({"bound", "--snr", "0"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("lower_bound = 1.6146105") != std::string::npos);
}

TEST_CASE("eval prints a CSV row") {
  const auto r = run({"eval", "--estimator", "mmse_classical", "--snr", "0", "--trials", "1000"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("0,0,mmse_classical,") != std::string::npos);
}

TEST_CASE("usage and validation errors exit with status 2") {
  CHECK(run({}).status == 2);
  CHECK(run({"sweep", "--bogus"}).status == 2);
  CHECK(run({"sweep", "--trials", "many"}).status == 2);
  CHECK(run({"sweep", "--m", "9", "--out", "/dev/null"}).status == 2);
  CHECK(run({"sweep", "--estimator", "zf", "--out", "/dev/null"}).status == 2);
  CHECK(run({"sweep", "--estimator", "", "--out", "/dev/null"}).status == 2);
  CHECK(run({"eval"}).status == 2);
  CHECK(run({"eval", "--estimator", "mmse_feedback,map_feedback"}).status == 2);
  CHECK(run({"sweep", "--spec", "/no/such/file"}).status == 2);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("unwritable output is a runtime failure") {
  const auto r = run({"sweep", "--snr", "0", "--m", "0", "--estimator", "mmse_classical",
                      "--trials", "10", "--out", "/no/such/dir/x.csv"});
  CHECK(r.status == 1);
  CHECK(r.err.find("/no/such/dir/x.csv") != std::string::npos);
}

TEST_CASE("verify reports every check") {
  const auto r = run({"verify", "--seed", "7", "--trials", "20000"});
  CHECK(r.status == 0);
  for (const char* name : {"m0_coincidence@", "monotonicity@", "lower_bound@",
                           "closed_form_agreement@", "map_ratio@-40dB", "map_ratio@+40dB"})
    CHECK(r.out.find(name) != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}
