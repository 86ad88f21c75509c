#include "plenoptic/codec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "plenoptic/detect.hpp"
#include "plenoptic/entropy.hpp"

namespace plenoptic {

double empirical_entropy(std::span<const int> labels) {
  if (labels.empty()) return 0.0;
  std::map<int, std::size_t> counts;
  for (int v : labels) ++counts[v];
  const double n = static_cast<double>(labels.size());
  double h = 0.0;
  for (const auto& [label, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

namespace {

// Site-indexed store of the latest reconstruction. Encoder and decoder both
// predict through this class so their arithmetic is identical.
class SiteStore {
 public:
  SiteStore(int lo, int hi, int memory, double rho)
      : lo_(lo), memory_(memory), rho_(rho), value_(static_cast<std::size_t>(hi - lo + 1), 0.0),
        time_(static_cast<std::size_t>(hi - lo + 1), -1) {}

  double predict(int site, int t) const {
    const auto k = static_cast<std::size_t>(site - lo_);
    if (time_[k] < 0 || t - time_[k] > memory_) return 0.0;
    return std::pow(rho_, t - time_[k]) * value_[k];
  }

  void store(int site, int t, double v) {
    const auto k = static_cast<std::size_t>(site - lo_);
    value_[k] = v;
    time_[k] = t;
  }

 private:
  int lo_;
  int memory_;
  double rho_;
  std::vector<double> value_;
  std::vector<int> time_;
};

std::vector<std::int8_t> choose_steps(const ViewSequence<double>& view, const CodecConfig& cfg) {
  const int t = view.horizon();
  std::vector<std::int8_t> steps(static_cast<std::size_t>(t));
  for (int i = 1; i <= t; ++i) {
    Step s = view.path.step(i);
    if (cfg.trajectory == TrajectoryMode::estimated)
      s = mmse_detect(view.frame(i - 1), view.frame(i), cfg.field.rho, cfg.walk.p_w);
    steps[static_cast<std::size_t>(i - 1)] = static_cast<std::int8_t>(displacement(s));
  }
  return steps;
}

struct LoopOutput {
  std::vector<int> indices;
  std::vector<double> residuals;
  FrameMatrix<double> recon;
};

LoopOutput closed_loop(const ViewSequence<double>& view, const std::vector<std::int8_t>& steps, int memory,
                       double rho, const Quantizer& q) {
  const int t = view.horizon();
  const int L = view.block_length();
  SiteStore store(-t, t + L - 1, memory, rho);
  LoopOutput out;
  out.indices.reserve(static_cast<std::size_t>(t) * L);
  out.residuals.reserve(static_cast<std::size_t>(t) * L);
  out.recon.resize(t + 1, L);
  out.recon.row(0) = view.frame(0);
  for (int j = 0; j < L; ++j) store.store(j, 0, view.frames(0, j));
  int pos = 0;
  for (int i = 1; i <= t; ++i) {
    pos += steps[static_cast<std::size_t>(i - 1)];
    for (int j = 0; j < L; ++j) {
      const double pred = store.predict(pos + j, i);
      const double r = view.frames(i, j) - pred;
      const int k = q.index(r);
      const double xhat = pred + q.reconstruct(k);
      store.store(pos + j, i, xhat);
      out.recon(i, j) = xhat;
      out.indices.push_back(k);
      out.residuals.push_back(r);
    }
  }
  return out;
}

}  // namespace

CodecRun dpcm_encode(const ViewSequence<double>& view, const CodecConfig& config, const Quantizer& quantizer) {
  if (view.horizon() < 2) throw std::invalid_argument("dpcm_encode: horizon must be at least 2");
  if (quantizer.cells() == 0) throw std::invalid_argument("dpcm_encode: empty quantizer");
  const int t = view.horizon();
  const int L = view.block_length();
  const auto steps = choose_steps(view, config);
  auto loop = closed_loop(view, steps, config.memory, config.field.rho, quantizer);

  CodecRun run;
  int ups = 0;
  for (int i = 1; i <= t; ++i) {
    ups += steps[static_cast<std::size_t>(i - 1)] > 0;
    run.step_errors += steps[static_cast<std::size_t>(i - 1)] != displacement(view.path.step(i));
  }
  run.side_rate = binary_entropy(static_cast<double>(ups) / t) / L;
  run.index_rate = empirical_entropy(loop.indices);
  run.measured_rate = run.side_rate + run.index_rate;

  const auto original = view.frames.bottomRows(t).reshaped<Eigen::RowMajor>();
  const auto recon = loop.recon.bottomRows(t).reshaped<Eigen::RowMajor>();
  run.errors = original - recon;
  run.mse = run.errors.squaredNorm() / static_cast<double>(run.errors.size());
  run.snr_db = snr_db(original, recon);
  double rv = 0.0;
  for (double r : loop.residuals) rv += r * r;
  run.residual_variance = rv / static_cast<double>(loop.residuals.size());
  run.reconstruction = std::move(loop.recon);

  run.bitstream.block_length = L;
  run.bitstream.memory = config.memory;
  run.bitstream.rho = config.field.rho;
  run.bitstream.first_frame = view.frame(0).transpose();
  run.bitstream.steps = steps;
  run.bitstream.indices = std::move(loop.indices);
  run.bitstream.quantizer = quantizer;
  return run;
}

FrameMatrix<double> dpcm_decode(const Bitstream& bits) {
  const int t = static_cast<int>(bits.steps.size());
  const int L = bits.block_length;
  if (bits.first_frame.size() != L || bits.indices.size() != static_cast<std::size_t>(t) * L)
    throw std::invalid_argument("dpcm_decode: inconsistent bitstream");
  SiteStore store(-t, t + L - 1, bits.memory, bits.rho);
  FrameMatrix<double> recon(t + 1, L);
  recon.row(0) = bits.first_frame.transpose();
  for (int j = 0; j < L; ++j) store.store(j, 0, bits.first_frame(j));
  int pos = 0;
  std::size_t n = 0;
  for (int i = 1; i <= t; ++i) {
    pos += bits.steps[static_cast<std::size_t>(i - 1)];
    for (int j = 0; j < L; ++j) {
      const double xhat = store.predict(pos + j, i) + bits.quantizer.reconstruct(bits.indices[n++]);
      store.store(pos + j, i, xhat);
      recon(i, j) = xhat;
    }
  }
  return recon;
}

std::vector<double> dpcm_residuals(const ViewSequence<double>& view, const CodecConfig& config,
                                   const Quantizer& quantizer) {
  return closed_loop(view, choose_steps(view, config), config.memory, config.field.rho, quantizer).residuals;
}

ViewSequence<double> codec_view(const CodecConfig& config, std::uint64_t trial_seed) {
  const WalkPath path = sample_path(config.walk, config.horizon, trial_seed);
  return extract_dynamic(config.field, path, ViewSpec(config.block_length), trial_seed);
}

Quantizer train_quantizer(const CodecConfig& config, int rounds) {
  if (!(config.lambda > 0.0)) throw std::invalid_argument("train_quantizer: lambda must be positive");
  const auto view = codec_view(config, derive_seed(config.seed, streams::calibration));
  Quantizer q = uniform_quantizer(std::sqrt(6.0 * config.lambda / std::numbers::ln2), -8.0, 8.0);
  for (int r = 0; r < rounds; ++r) q = design_ecsq(dpcm_residuals(view, config, q), config.lambda).quantizer;
  return q;
}

SweepResult run_rd_sweep(const SweepConfig& sweep) {
  if (sweep.trials < 1) throw std::invalid_argument("run_rd_sweep: need at least one trial");
  SweepResult out;
  out.curve.model = "dpcm_ecsq";
  for (double lambda : sweep.lambdas) {
    CodecConfig cfg = sweep.base;
    cfg.lambda = lambda;
    const Quantizer q = train_quantizer(cfg);
    std::vector<CodecRun> runs(static_cast<std::size_t>(sweep.trials));
    parallel_for(runs.size(), sweep.threads, [&](std::size_t k) {
      const auto view = codec_view(cfg, derive_seed(cfg.seed, streams::codec, k));
      auto run = dpcm_encode(view, cfg, q);
      run.errors.resize(0);
      run.reconstruction.resize(0, 0);
      run.bitstream = {};
      runs[k] = std::move(run);
    });
    const double n = static_cast<double>(runs.size());
    auto mean_ci = [&](auto field) {
      double m = 0.0, s = 0.0;
      for (const auto& r : runs) m += field(r);
      m /= n;
      for (const auto& r : runs) s += (field(r) - m) * (field(r) - m);
      const double sd = runs.size() > 1 ? std::sqrt(s / (n - 1.0)) : 0.0;
      return std::pair{m, 1.96 * sd / std::sqrt(n)};
    };
    SweepPoint pt;
    pt.lambda = lambda;
    pt.trials = sweep.trials;
    std::tie(pt.rate, pt.rate_ci) = mean_ci([](const CodecRun& r) { return r.measured_rate; });
    std::tie(pt.snr_db, pt.snr_ci) = mean_ci([](const CodecRun& r) { return r.snr_db; });
    pt.mse = mean_ci([](const CodecRun& r) { return r.mse; }).first;
    pt.residual_variance = mean_ci([](const CodecRun& r) { return r.residual_variance; }).first;
    out.points.push_back(pt);
    out.curve.points.push_back({pt.mse, pt.rate, true, RDKind::operational});
  }
  out.curve.sort_by_distortion();
  return out;
}

double snr_at_rate(const std::vector<SweepPoint>& points, double rate) {
  std::vector<SweepPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](const SweepPoint& a, const SweepPoint& b) { return a.rate < b.rate; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const auto& a = sorted[i - 1];
    const auto& b = sorted[i];
    if (rate >= a.rate && rate <= b.rate) {
      if (b.rate == a.rate) return 0.5 * (a.snr_db + b.snr_db);
      return a.snr_db + (b.snr_db - a.snr_db) * (rate - a.rate) / (b.rate - a.rate);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace plenoptic
