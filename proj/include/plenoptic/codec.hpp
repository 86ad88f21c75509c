#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "plenoptic/ecsq.hpp"
#include "plenoptic/rd.hpp"
#include "plenoptic/reality.hpp"
#include "plenoptic/view.hpp"
#include "plenoptic/walk.hpp"

namespace plenoptic {

/// Frames of memory available to the predictor. A site is predicted from
/// its stored reconstruction only if that reconstruction is at most
/// `memory` frames old.
inline constexpr int kOneFrame = 1;
inline constexpr int kInfiniteMemory = std::numeric_limits<int>::max();

enum class TrajectoryMode { genie, estimated };

struct CodecConfig {
  int memory = kInfiniteMemory;
  double lambda = 1e-3;
  WalkParams walk;
  Ar1FieldSpec field;
  int block_length = 8;
  int horizon = 10000;
  std::uint64_t seed = 1;
  TrajectoryMode trajectory = TrajectoryMode::genie;
};

/// Everything the decoder receives: the known first frame, the step of
/// each frame and the quantizer index of each scalar.
struct Bitstream {
  int block_length = 0;
  int memory = kInfiniteMemory;
  double rho = 0.0;
  Eigen::VectorXd first_frame;
  std::vector<std::int8_t> steps;  // +-1, one per frame 1..t
  std::vector<int> indices;        // t * L quantizer indices, frame-major
  Quantizer quantizer;
};

struct CodecRun {
  double measured_rate = 0.0;  // bits per scalar, side info + index entropy
  double side_rate = 0.0;      // trajectory bits per scalar
  double index_rate = 0.0;     // empirical quantizer index entropy per scalar
  double snr_db = 0.0;
  double mse = 0.0;
  double residual_variance = 0.0;  // mean squared prediction residual
  int step_errors = 0;             // sent steps that disagree with the true path
  Eigen::VectorXd errors;          // x - x_hat over frames 1..t, frame-major
  FrameMatrix<double> reconstruction;
  Bitstream bitstream;
};

/// Closed-loop DPCM of an AR(1) view with trajectory side information.
CodecRun dpcm_encode(const ViewSequence<double>& view, const CodecConfig& config, const Quantizer& quantizer);

/// Rebuilds the frames from a bitstream; identical to the encoder's reconstruction.
FrameMatrix<double> dpcm_decode(const Bitstream& bits);

/// Prediction residuals from a closed-loop run with the given quantizer, used to train it.
std::vector<double> dpcm_residuals(const ViewSequence<double>& view, const CodecConfig& config, const Quantizer& quantizer);

inline constexpr double kSnrSaturationDb = 400.0;

/// 10 log10(sum x^2 / sum (x - x_hat)^2); a zero error saturates.
template <typename A, typename B>
double snr_db(const Eigen::DenseBase<A>& x, const Eigen::DenseBase<B>& x_hat) {
  if (x.size() != x_hat.size()) throw std::invalid_argument("snr_db: length mismatch");
  const double signal = x.derived().template cast<double>().squaredNorm();
  const double noise = (x.derived().template cast<double>() - x_hat.derived().template cast<double>()).squaredNorm();
  if (noise == 0.0) return kSnrSaturationDb;
  return std::min(kSnrSaturationDb, 10.0 * std::log10(signal / noise));
}

/// Empirical entropy in bits of a sequence of integer labels.
double empirical_entropy(std::span<const int> labels);

/// Draws the view a codec trial works on.
ViewSequence<double> codec_view(const CodecConfig& config, std::uint64_t trial_seed);

/// Designs the quantizer for a configuration: starting from the high-rate
/// uniform quantizer, alternately runs the closed loop on a calibration view
/// and redesigns the ECSQ on the residuals it produced.
Quantizer train_quantizer(const CodecConfig& config, int rounds = 3);

struct SweepPoint {
  double lambda = 0.0;
  double rate = 0.0;
  double rate_ci = 0.0;
  double snr_db = 0.0;
  double snr_ci = 0.0;
  double mse = 0.0;
  double residual_variance = 0.0;
  int trials = 0;
};

struct SweepConfig {
  CodecConfig base;
  std::vector<double> lambdas;
  int trials = 20;
  unsigned threads = 1;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  RDCurve curve;  // operational points, distortion = mean MSE
};

SweepResult run_rd_sweep(const SweepConfig& sweep);

/// Linear interpolation of SNR at a given rate along an operational curve
/// sorted by rate; returns NaN outside the covered rate range.
double snr_at_rate(const std::vector<SweepPoint>& points, double rate);

}  // namespace plenoptic
