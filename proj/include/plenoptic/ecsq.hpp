#pragma once

#include <span>
#include <vector>

#include "plenoptic/types.hpp"

namespace plenoptic {

/// Scalar quantizer with sorted cells. Cell i covers
/// [thresholds[i - 1], thresholds[i]) and reconstructs to levels[i].
struct Quantizer {
  std::vector<double> thresholds;  // size cells() - 1
  std::vector<double> levels;
  std::vector<double> index_pmf;   // training-set cell probabilities

  int cells() const { return static_cast<int>(levels.size()); }
  int index(double x) const;
  double reconstruct(int i) const { return levels[static_cast<std::size_t>(i)]; }
  double quantize(double x) const { return reconstruct(index(x)); }
  /// Entropy of the training index pmf, bits per sample.
  double rate() const;
};

struct EcsqOptions {
  int max_iterations = 500;
  double relative_tolerance = 1e-10;
  int grid_points = 40001;  // resolution of the analytic Gaussian design
  double grid_span = 8.0;   // in standard deviations
};

struct EcsqDesign {
  Quantizer quantizer;
  double distortion = 0.0;  // mean squared error on the design set
  double rate = 0.0;        // index entropy on the design set, bits
  std::vector<double> objective;  // D + lambda R per iteration, nonincreasing
  int deleted_cells = 0;
};

/// Entropy-constrained Lloyd design minimizing D + lambda H(index) on
/// weighted points. Cells that lose all their mass are deleted.
EcsqDesign design_ecsq(std::span<const double> points, std::span<const double> weights, double lambda,
                       const EcsqOptions& opt = {});
EcsqDesign design_ecsq(std::span<const double> samples, double lambda, const EcsqOptions& opt = {});

/// Design for an N(0, variance) source on a fine weighted grid.
EcsqDesign design_ecsq_gaussian(double variance, double lambda, const EcsqOptions& opt = {});

/// Uniform quantizer with step `step` centred on zero covering [lo, hi].
Quantizer uniform_quantizer(double step, double lo, double hi);

}  // namespace plenoptic
