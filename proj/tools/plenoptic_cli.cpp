// Command-line front end: one subcommand per experiment.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "plenoptic/experiments.hpp"

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned threads = 1;
  std::optional<double> verify_tolerance;
};

plenoptic::ExperimentConfig load(const std::string& experiment, const Options& opt) {
  auto cfg = plenoptic::default_config(experiment);
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw std::runtime_error("cannot read config " + opt.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    plenoptic::apply_config_text(cfg, text.str());
  }
  if (opt.seed) cfg.seed = *opt.seed;
  if (!opt.out.empty()) cfg.out = opt.out;
  cfg.threads = opt.threads;
  cfg.verify_tolerance = opt.verify_tolerance.value_or(cfg.tolerance);
  return cfg;
}

void emit(const plenoptic::ExperimentConfig& cfg, const std::string& contents) {
  if (cfg.out.empty() || cfg.out == "-")
    std::cout << contents;
  else
    plenoptic::write_file_atomically(cfg.out, contents);
}

int run(const std::string& experiment, const Options& opt) {
  const auto cfg = load(experiment, opt);
  if (experiment == "verify") {
    const auto report = plenoptic::run_verify(cfg);
    emit(cfg, report.json + "\n");
    std::cerr << report.checks << " checks, " << report.failures << " failed, " << report.skipped << " skipped\n";
    return report.ok() ? 0 : 1;
  }
  plenoptic::CsvTable table;
  if (experiment == "fig-bounds-static") table = plenoptic::run_fig_bounds_static(cfg);
  else if (experiment == "fig-memory") table = plenoptic::run_fig_memory(cfg);
  else if (experiment == "fig-dynamic-bounds") table = plenoptic::run_fig_dynamic_bounds(cfg);
  else table = plenoptic::run_fig_dpcm(cfg);
  std::ostringstream csv;
  plenoptic::write_csv(csv, table, cfg);
  emit(cfg, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plenoptic random-walk information rates and coding experiments"};
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"fig-bounds-static", "Static-wall entropy-rate bounds versus p_w"},
      {"fig-memory", "Memory-constrained conditional entropy bounds"},
      {"fig-dynamic-bounds", "Dynamic-reality bounds: BSC innovations and Gaussian AR(1)"},
      {"fig-dpcm", "Operational DPCM rate-distortion curves with the analytic upper bound"},
      {"verify", "Exhaustive oracle checks of the bounds (JSON report)"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "master seed (overrides the config)");
    sub->add_option("--out", opt.out, "output path, '-' for stdout");
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--verify-tolerance", opt.verify_tolerance, "slack allowed in bound comparisons");
  }
  CLI11_PARSE(app, argc, argv);
  try {
    for (auto* sub : app.get_subcommands()) return run(sub->get_name(), opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
