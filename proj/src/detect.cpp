#include "plenoptic/detect.hpp"

#include <random>
#include <stdexcept>

#include "plenoptic/entropy.hpp"
#include "plenoptic/view.hpp"

namespace plenoptic {

const char* to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::hamming: return "hamming";
    case DetectorKind::mmse: return "mmse";
    case DetectorKind::map_oracle: return "map_oracle";
  }
  return "unknown";
}

double binomial_ci95(std::uint64_t errors, std::uint64_t trials) {
  if (trials == 0) return 1.0;
  const double n = static_cast<double>(trials);
  if (errors == 0) return 3.0 / n;
  const double p = static_cast<double>(errors) / n;
  return 1.96 * std::sqrt(p * (1.0 - p) / n);
}

double fano_term(double p_e) { return binary_entropy(p_e); }

namespace {

template <typename Frame>
Step run_detector(DetectorKind kind, const Frame& prev, const Frame& cur, const PeConfig& cfg) {
  switch (kind) {
    case DetectorKind::hamming: return hamming_detect(prev, cur);
    case DetectorKind::mmse: return mmse_detect(prev, cur, std::get<Ar1FieldSpec>(cfg.reality).rho, cfg.walk.p_w);
    case DetectorKind::map_oracle: return map_detect(prev, cur, cfg.reality, cfg.walk);
  }
  return kPriorMode;
}

void check_compatible(const PeConfig& cfg, DetectorKind kind) {
  const bool gaussian = std::holds_alternative<Ar1FieldSpec>(cfg.reality);
  if (gaussian && kind != DetectorKind::mmse) throw std::invalid_argument("AR(1) fields need the mmse detector");
  if (!gaussian && kind == DetectorKind::mmse) throw std::invalid_argument("the mmse detector needs an AR(1) field");
  if (cfg.block_length < 2) throw std::invalid_argument("block length must be at least 2");
  if (cfg.step < 1) throw std::invalid_argument("detection step must be positive");
}

// One step from a fresh V_0, drawn directly without materializing a window.
std::uint64_t first_step_errors(const PeConfig& cfg, DetectorKind kind, Engine& engine, std::uint64_t n) {
  const int L = cfg.block_length;
  const std::uint64_t up_threshold = bernoulli_threshold(cfg.walk.p_w);
  std::uint64_t errors = 0;
  if (const auto* ar = std::get_if<Ar1FieldSpec>(&cfg.reality)) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sigma = std::sqrt(ar->innovation_variance());
    Eigen::VectorXd prev(L), cur(L);
    for (std::uint64_t k = 0; k < n; ++k) {
      for (int j = 0; j < L; ++j) prev(j) = gauss(engine);
      const Step truth = engine() < up_threshold ? Step::up : Step::down;
      if (truth == Step::up) {
        for (int j = 0; j < L - 1; ++j) cur(j) = ar->rho * prev(j + 1) + sigma * gauss(engine);
        cur(L - 1) = gauss(engine);
      } else {
        for (int j = 1; j < L; ++j) cur(j) = ar->rho * prev(j - 1) + sigma * gauss(engine);
        cur(0) = gauss(engine);
      }
      if (run_detector(kind, prev, cur, cfg) != truth) ++errors;
    }
    return errors;
  }
  Eigen::VectorXi prev(L), cur(L);
  const auto* bsc = std::get_if<BscFieldSpec>(&cfg.reality);
  std::discrete_distribution<Symbol> draw;
  std::uint64_t one_threshold = 0, flip_threshold = 0;
  if (bsc) {
    one_threshold = bernoulli_threshold(bsc->p_x);
    flip_threshold = bernoulli_threshold(bsc->p_i);
  } else {
    const auto& pmf = std::get<StaticWallSpec>(cfg.reality).pmf;
    draw = std::discrete_distribution<Symbol>(pmf.begin(), pmf.end());
  }
  auto symbol = [&] { return bsc ? static_cast<Symbol>(engine() < one_threshold) : draw(engine); };
  auto evolve = [&](Symbol s) { return bsc && engine() < flip_threshold ? 1 - s : s; };
  for (std::uint64_t k = 0; k < n; ++k) {
    for (int j = 0; j < L; ++j) prev(j) = symbol();
    const Step truth = engine() < up_threshold ? Step::up : Step::down;
    if (truth == Step::up) {
      for (int j = 0; j < L - 1; ++j) cur(j) = evolve(prev(j + 1));
      cur(L - 1) = evolve(symbol());
    } else {
      for (int j = 1; j < L; ++j) cur(j) = evolve(prev(j - 1));
      cur(0) = evolve(symbol());
    }
    if (run_detector(kind, prev, cur, cfg) != truth) ++errors;
  }
  return errors;
}

// Later steps: simulate the whole path and field and detect the last increment.
std::uint64_t later_step_errors(const PeConfig& cfg, DetectorKind kind, Engine& engine, std::uint64_t n) {
  const ViewSpec spec(cfg.block_length);
  std::uint64_t errors = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    const WalkPath path = sample_path(cfg.walk, cfg.step, engine);
    const std::uint64_t seed = engine();
    const Step truth = path.step(cfg.step);
    Step guess;
    if (const auto* ar = std::get_if<Ar1FieldSpec>(&cfg.reality)) {
      const auto view = extract_dynamic(*ar, path, spec, seed);
      guess = run_detector<Eigen::VectorXd>(kind, view.frame(cfg.step - 1).transpose(), view.frame(cfg.step).transpose(), cfg);
    } else if (const auto* bsc = std::get_if<BscFieldSpec>(&cfg.reality)) {
      const auto view = extract_dynamic(*bsc, path, spec, seed);
      guess = run_detector<Eigen::VectorXi>(kind, view.frame(cfg.step - 1).transpose(), view.frame(cfg.step).transpose(), cfg);
    } else {
      const auto [lo, hi] = touched_sites(path, spec);
      const auto wall = gen_static_wall(std::get<StaticWallSpec>(cfg.reality), lo, hi, seed);
      const auto view = extract_static(wall, path, spec);
      guess = run_detector<Eigen::VectorXi>(kind, view.frame(cfg.step - 1).transpose(), view.frame(cfg.step).transpose(), cfg);
    }
    if (guess != truth) ++errors;
  }
  return errors;
}

}  // namespace

DetectorReport estimate_pe(const PeConfig& config, DetectorKind detector, std::uint64_t trials,
                           std::uint64_t master_seed, unsigned threads) {
  if (trials == 0) throw std::invalid_argument("estimate_pe needs at least one trial");
  check_compatible(config, detector);
  const auto counts = run_chunks<std::uint64_t>(trials, threads, [&](std::uint64_t c, std::uint64_t, std::uint64_t n) {
    Engine engine = make_engine(master_seed, streams::detect, c);
    return config.step == 1 ? first_step_errors(config, detector, engine, n)
                            : later_step_errors(config, detector, engine, n);
  });
  DetectorReport r;
  r.detector = detector;
  r.trials = trials;
  for (auto e : counts) r.errors += e;
  r.p_e_hat = static_cast<double>(r.errors) / static_cast<double>(trials);
  r.ci95_halfwidth = binomial_ci95(r.errors, trials);
  return r;
}

}  // namespace plenoptic
