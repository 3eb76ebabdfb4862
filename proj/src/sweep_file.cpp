#include "rssiest/sweep_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rssiest/errors.hpp"

namespace rssiest {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> items;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    if (item.empty()) throw ConfigError("empty element in list '" + std::string(text) + "'");
    items.push_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return items;
}

template <typename T>
T parse_number(std::string_view text) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("invalid number '" + std::string(text) + "'");
  return value;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> values;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    if (!values.emplace(std::string(key), std::string(value)).second)
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                        std::string(key) + "'");
  }
  return values;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : split_list(text)) out.push_back(parse_number<double>(item));
  return out;
}

std::vector<std::size_t> parse_count_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (auto item : split_list(text)) out.push_back(parse_number<std::size_t>(item));
  return out;
}

std::vector<EstimatorTag> parse_estimator_list(std::string_view text) {
  std::vector<EstimatorTag> out;
  for (auto item : split_list(text)) {
    try {
      out.push_back(parse_estimator(item));
    } catch (const UsageError& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

SweepOverrides parse_sweep_file(std::string_view text) {
  SweepOverrides o;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "snr_db") o.snr_db = parse_real_list(value);
    else if (key == "m") o.m = parse_count_list(value);
    else if (key == "estimators") o.estimators = parse_estimator_list(value);
    else if (key == "trials") o.trials = parse_number<std::size_t>(value);
    else if (key == "seed") o.seed = parse_number<Seed>(value);
    else if (key == "antennas") o.antennas = parse_number<std::size_t>(value);
    else if (key == "users") o.users = parse_number<std::size_t>(value);
    else if (key == "prior_variance") o.prior_variance = parse_number<double>(value);
    else if (key == "threads") o.threads = parse_number<int>(value);
    else if (key == "out") o.out = value;
    else throw ConfigError("unknown key '" + key + "'");
  }
  return o;
}

SweepOverrides load_sweep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read spec file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_file(buf.str());
}

SweepOverrides merge(SweepOverrides base, const SweepOverrides& top) {
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(base.snr_db, top.snr_db);
  take(base.m, top.m);
  take(base.estimators, top.estimators);
  take(base.trials, top.trials);
  take(base.seed, top.seed);
  take(base.antennas, top.antennas);
  take(base.users, top.users);
  take(base.prior_variance, top.prior_variance);
  take(base.threads, top.threads);
  take(base.out, top.out);
  return base;
}

SweepSpec build_sweep_spec(const SweepOverrides& o) {
  SweepSpec spec = default_sweep_spec();
  if (o.snr_db) spec.snr_grid_db = *o.snr_db;
  if (o.m) spec.m_grid = *o.m;
  if (o.estimators) spec.estimators = *o.estimators;
  if (o.trials) spec.n_trials = *o.trials;
  if (o.seed) spec.master_seed = *o.seed;
  if (o.threads) {
    if (*o.threads < 0) throw ConfigError("threads must be non-negative");
    spec.threads = *o.threads;
  }
  if (o.antennas || o.users || o.prior_variance) {
    spec.config = SystemConfig::uniform(o.antennas.value_or(spec.config.n_antennas()),
                                        o.users.value_or(spec.config.n_users()), 1.0, 1.0,
                                        o.prior_variance.value_or(1.0));
  }
  validate(spec);
  return spec;
}

}  // namespace rssiest
