#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "plenoptic/experiments.hpp"

namespace plenoptic {

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = n == 1 ? a : a + (b - a) * k / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  auto v = linspace(a, b, n);
  for (double& x : v) x = std::pow(10.0, x);
  return v;
}

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"fig-bounds-static", {"p_w", "p_x", "alphabet", "L", "pe_trials"}},
      {"fig-memory", {"p_w", "alphabet", "M", "p_i", "p_w_dynamic", "p_x", "L"}},
      {"fig-dynamic-bounds", {"p_w", "p_i", "contour_p_w", "rho", "L", "p_x", "pe_trials", "tolerance"}},
      {"fig-dpcm", {"p_w", "rho", "L", "t", "trials", "lambda", "snr_db", "trajectory"}},
      {"verify", {"p_w", "static_p_x", "p_i", "block_lengths", "t", "stress_t", "perturb", "tolerance"}},
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_scalar(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("config: bad value '" + std::string(text) + "' for " + std::string(key));
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_scalar<T>(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    if constexpr (std::is_floating_point_v<T>)
      s += format_number(v[i]);
    else
      s += format_number(static_cast<long long>(v[i]));
  }
  return s;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"fig-bounds-static", "fig-memory", "fig-dynamic-bounds", "fig-dpcm",
                                                 "verify"};
  return names;
}

ExperimentConfig default_config(std::string_view experiment) {
  ExperimentConfig c;
  c.experiment = std::string(experiment);
  if (experiment == "fig-bounds-static") {
    c.p_w = linspace(0.0, 0.5, 21);
    c.p_x = 0.5;
    c.alphabet = 2;
    c.L = 9;
    c.pe_trials = 1000000;
  } else if (experiment == "fig-memory") {
    c.p_w = {0.1, 0.5};
    c.alphabet = 256;
    c.M = 1000;
    c.p_i = {0.01, 0.05, 0.1, 0.2, 0.3};
    c.p_w_dynamic = 0.5;
    c.p_x = 0.5;
    c.L = 8;
  } else if (experiment == "fig-dynamic-bounds") {
    c.p_w = {0.05, 0.5};
    // Log-spaced below 0.01 so the p_w = 0.5 / 0.05 crossing near 0.003 is resolved.
    c.p_i = logspace(-4.0, -2.0, 9);
    c.p_i.pop_back();
    for (double v : linspace(0.01, 0.5, 50)) c.p_i.push_back(v);
    c.contour_p_w = linspace(0.025, 0.5, 20);
    c.rho = {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
    c.L = 8;
    c.p_x = 0.5;
    c.pe_trials = 100000;
  } else if (experiment == "fig-dpcm") {
    c.p_w = {0.5, 0.1, 0.5};
    c.rho = {0.99, 0.99, 0.9};
    c.L = 8;
    c.t = 10000;
    c.trials = 20;
    c.lambda = logspace(-4.5, -0.5, 17);
    c.snr_db = linspace(0.0, 40.0, 41);
  } else if (experiment == "verify") {
    c.p_w = {0.1, 0.3, 0.5};
    c.static_p_x = {0.5, 0.3};
    c.p_i = {0.1, 0.05};
    c.block_lengths = {2, 3};
    c.t = 4;
    c.stress_t = 12;
    c.perturb = 0.0;
  } else {
    throw std::invalid_argument("unknown experiment '" + std::string(experiment) + "'");
  }
  return c;
}

void set_config_value(ExperimentConfig& c, std::string_view key_view, std::string_view value) {
  const std::string key(trim(key_view));
  value = trim(value);
  if (key == "experiment") {
    if (value != c.experiment)
      throw std::invalid_argument("config is for experiment '" + std::string(value) + "', not '" + c.experiment + "'");
    return;
  }
  if (key == "seed") {
    c.seed = parse_scalar<std::uint64_t>(key, value);
    return;
  }
  if (key == "out") {
    c.out = std::string(value);
    return;
  }
  const auto& keys = allowed_keys().at(c.experiment);
  if (!keys.count(key)) throw std::invalid_argument("config: unknown key '" + key + "' for " + c.experiment);
  if (key == "p_w") c.p_w = parse_list<double>(key, value);
  else if (key == "p_i") c.p_i = parse_list<double>(key, value);
  else if (key == "rho") c.rho = parse_list<double>(key, value);
  else if (key == "lambda") c.lambda = parse_list<double>(key, value);
  else if (key == "contour_p_w") c.contour_p_w = parse_list<double>(key, value);
  else if (key == "snr_db") c.snr_db = parse_list<double>(key, value);
  else if (key == "static_p_x") c.static_p_x = parse_list<double>(key, value);
  else if (key == "block_lengths") c.block_lengths = parse_list<int>(key, value);
  else if (key == "p_x") c.p_x = parse_scalar<double>(key, value);
  else if (key == "p_w_dynamic") c.p_w_dynamic = parse_scalar<double>(key, value);
  else if (key == "perturb") c.perturb = parse_scalar<double>(key, value);
  else if (key == "tolerance") c.tolerance = parse_scalar<double>(key, value);
  else if (key == "alphabet") c.alphabet = parse_scalar<int>(key, value);
  else if (key == "L") c.L = parse_scalar<int>(key, value);
  else if (key == "M") c.M = parse_scalar<int>(key, value);
  else if (key == "t") c.t = parse_scalar<int>(key, value);
  else if (key == "stress_t") c.stress_t = parse_scalar<int>(key, value);
  else if (key == "trials") c.trials = parse_scalar<std::uint64_t>(key, value);
  else if (key == "pe_trials") c.pe_trials = parse_scalar<std::uint64_t>(key, value);
  else if (key == "trajectory") {
    if (value != "genie" && value != "estimated") throw std::invalid_argument("config: trajectory must be genie or estimated");
    c.trajectory = std::string(value);
  }
}

void apply_config_text(ExperimentConfig& c, std::string_view text) {
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    set_config_value(c, line.substr(0, eq), line.substr(eq + 1));
  }
}

std::vector<std::pair<std::string, std::string>> parameter_echo(const ExperimentConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("experiment", c.experiment);
  out.emplace_back("seed", format_number(static_cast<long long>(c.seed)));
  const auto& keys = allowed_keys().at(c.experiment);
  auto put = [&](const std::string& key, std::string value) {
    if (keys.count(key)) out.emplace_back(key, std::move(value));
  };
  put("p_w", join(c.p_w));
  put("p_i", join(c.p_i));
  put("rho", join(c.rho));
  put("lambda", join(c.lambda));
  put("contour_p_w", join(c.contour_p_w));
  put("snr_db", join(c.snr_db));
  put("static_p_x", join(c.static_p_x));
  put("block_lengths", join(c.block_lengths));
  put("p_x", format_number(c.p_x));
  put("p_w_dynamic", format_number(c.p_w_dynamic));
  put("perturb", format_number(c.perturb));
  put("tolerance", format_number(c.tolerance));
  put("alphabet", format_number(static_cast<long long>(c.alphabet)));
  put("L", format_number(static_cast<long long>(c.L)));
  put("M", format_number(static_cast<long long>(c.M)));
  put("t", format_number(static_cast<long long>(c.t)));
  put("stress_t", format_number(static_cast<long long>(c.stress_t)));
  put("trials", format_number(static_cast<long long>(c.trials)));
  put("pe_trials", format_number(static_cast<long long>(c.pe_trials)));
  put("trajectory", c.trajectory);
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string format_number(long long x) { return std::to_string(x); }

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("csv row width does not match the header");
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& os, const CsvTable& table, const ExperimentConfig& cfg) {
  os << "# schema=" << table.schema;
  for (const auto& [k, v] : parameter_echo(cfg)) os << ' ' << k << '=' << v;
  os << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

void write_file_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << contents;
    f.flush();
    if (!f) throw std::runtime_error("failed writing " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace plenoptic
