#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace plenoptic {

/// Parameters of one experiment run. Files hold `key = value` lines,
/// `#` starts a comment, and lists are comma separated. Keys that the
/// experiment does not use are rejected.
struct ExperimentConfig {
  std::string experiment;

  std::vector<double> p_w;
  std::vector<double> p_i;
  std::vector<double> rho;
  std::vector<double> lambda;
  std::vector<double> contour_p_w;
  std::vector<double> snr_db;
  std::vector<double> static_p_x;
  std::vector<int> block_lengths;

  double p_x = 0.5;
  double p_w_dynamic = 0.5;
  double perturb = 0.0;
  double tolerance = 1e-9;
  int alphabet = 2;
  int L = 8;
  int M = 1000;
  int t = 10000;
  int stress_t = 12;
  std::uint64_t trials = 20;
  std::uint64_t pe_trials = 100000;
  std::uint64_t seed = 1;
  std::string trajectory = "genie";
  std::string out;

  unsigned threads = 1;
  double verify_tolerance = 1e-9;
};

const std::vector<std::string>& experiment_names();

/// Defaults for an experiment; throws on an unknown experiment id.
ExperimentConfig default_config(std::string_view experiment);

/// Applies a config file's contents on top of the experiment defaults.
void apply_config_text(ExperimentConfig& cfg, std::string_view text);
void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Every effective parameter of the experiment as `key=value` pairs in a fixed order.
std::vector<std::pair<std::string, std::string>> parameter_echo(const ExperimentConfig& cfg);

/// Columnar output with a schema line and a parameter echo.
struct CsvTable {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

std::string format_number(double x);
std::string format_number(long long x);

void write_csv(std::ostream& os, const CsvTable& table, const ExperimentConfig& cfg);

/// Writes to a temporary file next to `path` and renames it into place.
void write_file_atomically(const std::string& path, const std::string& contents);

CsvTable run_fig_bounds_static(const ExperimentConfig& cfg);
CsvTable run_fig_memory(const ExperimentConfig& cfg);
CsvTable run_fig_dynamic_bounds(const ExperimentConfig& cfg);
CsvTable run_fig_dpcm(const ExperimentConfig& cfg);

struct VerifyReport {
  std::string json;  // array of {check, params, lower, value, upper, pass}
  int checks = 0;
  int failures = 0;
  int skipped = 0;
  bool ok() const { return failures == 0; }
};

VerifyReport run_verify(const ExperimentConfig& cfg);

}  // namespace plenoptic
