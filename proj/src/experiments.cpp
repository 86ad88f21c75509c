#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "plenoptic/codec.hpp"
#include "plenoptic/detect.hpp"
#include "plenoptic/entropy.hpp"
#include "plenoptic/experiments.hpp"
#include "plenoptic/oracle.hpp"
#include "plenoptic/rd.hpp"

namespace plenoptic {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Streams for the per-row Monte-Carlo seeds of the figure commands.
constexpr std::uint64_t kStaticPeStream = 0x53504531ULL;
constexpr std::uint64_t kBscPeStream = 0x42504531ULL;
constexpr std::uint64_t kGaussPeStream = 0x47504531ULL;

std::string fmt(double x) { return format_number(x); }
std::string fmt_int(long long x) { return format_number(x); }

std::vector<int> memory_grid(int max_memory) {
  std::vector<int> grid;
  for (int m = 1; m <= std::min(20, max_memory); ++m) grid.push_back(m);
  for (int m = 20; m < max_memory;) {
    m = std::min(max_memory, static_cast<int>(std::ceil(m * 1.25)));
    grid.push_back(m);
  }
  return grid;
}

StaticWallSpec static_wall(const ExperimentConfig& cfg) {
  return cfg.alphabet == 2 ? StaticWallSpec::bernoulli(cfg.p_x) : StaticWallSpec::uniform(cfg.alphabet);
}

}  // namespace

CsvTable run_fig_bounds_static(const ExperimentConfig& cfg) {
  CsvTable table{"bounds_static/1", {"p_w", "lower", "upper", "pe_used", "pe_source"}, {}};
  const StaticWallSpec wall = static_wall(cfg);
  const double hx = discrete_entropy(wall.pmf);
  for (std::size_t k = 0; k < cfg.p_w.size(); ++k) {
    const WalkParams walk(cfg.p_w[k]);
    double pe = 0.0;
    std::string source = "exact";
    try {
      pe = exact_pe(walk, wall, cfg.L);
    } catch (const BudgetExceeded&) {
      const PeConfig pc{walk, wall, cfg.L, 1};
      pe = estimate_pe(pc, DetectorKind::hamming, cfg.pe_trials, derive_seed(cfg.seed, kStaticPeStream, k), cfg.threads)
               .p_e_hat;
      source = "monte_carlo";
    }
    const auto b = static_bounds(walk, hx, fano_term(pe));
    table.add_row({fmt(walk.p_w), fmt(b.lower), fmt(b.upper), fmt(pe), source});
  }
  return table;
}

CsvTable run_fig_memory(const ExperimentConfig& cfg) {
  CsvTable table{"memory/1", {"kind", "p_w", "p_i", "M", "bound", "limit", "difference_bits"}, {}};
  if (cfg.M < 1) throw std::invalid_argument("fig-memory: M must be at least 1");
  const auto grid = memory_grid(cfg.M);
  const double hx = std::log2(static_cast<double>(cfg.alphabet));
  for (double p : cfg.p_w) {
    const WalkParams walk(p);
    const auto curve = conditional_bound_memory_curve(walk, hx, cfg.M);
    const double limit = static_bounds(walk, hx, 0.0).upper;
    for (int m : grid) {
      const double b = curve[static_cast<std::size_t>(m - 1)];
      table.add_row({"static", fmt(p), fmt(0.0), fmt_int(m), fmt(b), fmt(limit), fmt(b - limit)});
    }
  }
  const WalkParams walk(cfg.p_w_dynamic);
  for (double pi : cfg.p_i) {
    const BscFieldSpec field(cfg.p_x, pi);
    const auto curve = dynamic_memory_curve_bsc(walk, field, cfg.L, cfg.M);
    const double rate = dynamic_cond_rate_bsc({walk, field, cfg.L, kDefaultSeriesTolerance}).value;
    const double limit = theorem3_bounds(rate, walk, 0.0).upper;
    for (int m : grid) {
      const double b = curve[static_cast<std::size_t>(m - 1)];
      table.add_row({"bsc", fmt(walk.p_w), fmt(pi), fmt_int(m), fmt(b), fmt(limit), fmt(b - limit)});
    }
  }
  return table;
}

CsvTable run_fig_dynamic_bounds(const ExperimentConfig& cfg) {
  CsvTable table{"dynamic_bounds/1",
                 {"kind", "p_w", "p_i", "rho", "cond_rate", "lower", "upper", "jensen_upper", "pe_used", "pe_ci",
                  "truncation_error"},
                 {}};
  std::uint64_t row = 0;
  for (double p : cfg.p_w) {
    const WalkParams walk(p);
    for (double pi : cfg.p_i) {
      const BscFieldSpec field(cfg.p_x, pi);
      const auto rate = dynamic_cond_rate_bsc({walk, field, cfg.L, cfg.tolerance});
      const auto pe = estimate_pe({walk, field, cfg.L, 1}, DetectorKind::hamming, cfg.pe_trials,
                                  derive_seed(cfg.seed, kBscPeStream, row++), cfg.threads);
      const auto b = theorem3_bounds(rate.value, walk, fano_term(pe.p_e_hat), rate.tail_bound);
      table.add_row({"bsc", fmt(p), fmt(pi), fmt(kNaN), fmt(rate.value), fmt(b.lower), fmt(b.upper), fmt(kNaN),
                     fmt(pe.p_e_hat), fmt(pe.ci95_halfwidth), fmt(rate.tail_bound)});
    }
  }
  for (double p : cfg.contour_p_w) {
    const WalkParams walk(p);
    for (double pi : cfg.p_i) {
      const auto rate = dynamic_cond_rate_bsc({walk, BscFieldSpec(cfg.p_x, pi), cfg.L, cfg.tolerance});
      const auto b = theorem3_bounds(rate.value, walk, 0.0, rate.tail_bound);
      table.add_row({"contour", fmt(p), fmt(pi), fmt(kNaN), fmt(rate.value), fmt(kNaN), fmt(b.upper), fmt(kNaN),
                     fmt(kNaN), fmt(kNaN), fmt(rate.tail_bound)});
    }
  }
  row = 0;
  for (double p : cfg.p_w) {
    const WalkParams walk(p);
    for (double rho : cfg.rho) {
      const Ar1FieldSpec field(rho);
      const auto rate = dynamic_cond_rate_ar1({walk, field, cfg.L, cfg.tolerance});
      const auto pe = estimate_pe({walk, field, cfg.L, 1}, DetectorKind::mmse, cfg.pe_trials,
                                  derive_seed(cfg.seed, kGaussPeStream, row++), cfg.threads);
      const auto b = theorem3_bounds(rate.value, walk, fano_term(pe.p_e_hat), rate.tail_bound);
      const double jensen = binary_entropy(p) + gaussian_diff_entropy(1.0) * (1.0 - 2.0 * p) +
                            (cfg.L - 1) * gaussian_diff_entropy(field.innovation_variance()) +
                            jensen_upper_ar1(walk, rho);
      table.add_row({"gaussian", fmt(p), fmt(kNaN), fmt(rho), fmt(rate.value), fmt(b.lower), fmt(b.upper),
                     fmt(jensen), fmt(pe.p_e_hat), fmt(pe.ci95_halfwidth), fmt(rate.tail_bound)});
    }
  }
  return table;
}

CsvTable run_fig_dpcm(const ExperimentConfig& cfg) {
  CsvTable table{"dpcm/1",
                 {"kind", "p_w", "rho", "L", "M", "lambda", "rate_bits_per_scalar", "snr_db", "ci", "valid"},
                 {}};
  const std::size_t panels = std::max(cfg.p_w.size(), cfg.rho.size());
  if (cfg.p_w.empty() || cfg.rho.empty()) throw std::invalid_argument("fig-dpcm: p_w and rho must be nonempty");
  for (const auto* v : {&cfg.p_w, &cfg.rho})
    if (v->size() != 1 && v->size() != panels)
      throw std::invalid_argument("fig-dpcm: p_w and rho lists differ in length");
  auto pick = [](const std::vector<double>& v, std::size_t k) { return v.size() == 1 ? v[0] : v[k]; };
  for (std::size_t k = 0; k < panels; ++k) {
    const double p = pick(cfg.p_w, k), rho = pick(cfg.rho, k);
    const WalkParams walk(p);
    const Ar1FieldSpec field(rho);
    const auto validity = slb_validity(rho);
    for (int memory : {kOneFrame, kInfiniteMemory}) {
      SweepConfig sweep;
      sweep.base.memory = memory;
      sweep.base.walk = walk;
      sweep.base.field = field;
      sweep.base.block_length = cfg.L;
      sweep.base.horizon = cfg.t;
      sweep.base.seed = derive_seed(cfg.seed, streams::codec, k);
      sweep.base.trajectory = cfg.trajectory == "estimated" ? TrajectoryMode::estimated : TrajectoryMode::genie;
      sweep.lambdas = cfg.lambda;
      sweep.trials = static_cast<int>(cfg.trials);
      sweep.threads = cfg.threads;
      const auto result = run_rd_sweep(sweep);
      const std::string m = memory == kOneFrame ? "1" : "inf";
      for (const auto& pt : result.points) {
        table.add_row({"operational", fmt(p), fmt(rho), fmt_int(cfg.L), m, fmt(pt.lambda), fmt(pt.rate),
                       fmt(pt.snr_db), fmt(pt.snr_ci), pt.mse < validity.d_max ? "1" : "0"});
      }
    }
    for (double snr : cfg.snr_db) {
      const double d = std::pow(10.0, -snr / 10.0);
      const auto pt = slb_ar1_upper(walk, field, cfg.L, d);
      table.add_row({"slb_upper", fmt(p), fmt(rho), fmt_int(cfg.L), "", fmt(kNaN), fmt(pt.rate), fmt(snr), fmt(kNaN),
                     pt.valid ? "1" : "0"});
    }
    table.add_row({"validity_threshold", fmt(p), fmt(rho), fmt_int(cfg.L), "", fmt(kNaN), fmt(kNaN),
                   fmt(validity.snr_threshold_db), fmt(kNaN), ""});
  }
  return table;
}

}  // namespace plenoptic
