#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plenoptic/random.hpp"
#include "plenoptic/types.hpp"

namespace plenoptic {

/// Bernoulli random walk with P{step = +1} = p_w, restricted to p_w in [0, 0.5].
struct WalkParams {
  double p_w = 0.5;

  explicit WalkParams(double p);
  WalkParams() = default;

  double q_w() const { return 1.0 - p_w; }
};

/// A realized trajectory W_0..W_t with W_0 = 0.
struct WalkPath {
  Eigen::VectorXi positions;   // t + 1 entries
  Eigen::VectorXi increments;  // t entries, increments(i - 1) = W_i - W_{i-1}
  std::vector<bool> new_site;  // t entries, new_site[i - 1] <=> W_i not in {W_0..W_{i-1}}

  int horizon() const { return static_cast<int>(increments.size()); }
  int position(int i) const { return positions(i); }
  Step step(int i) const { return increments(i - 1) > 0 ? Step::up : Step::down; }
  bool is_new_site(int i) const { return new_site[static_cast<std::size_t>(i - 1)]; }
  int new_site_count() const;
  int min_position() const { return positions.minCoeff(); }
  int max_position() const { return positions.maxCoeff(); }

  /// Builds a path from explicit positions; throws if the steps are not +-1.
  static WalkPath from_positions(const std::vector<int>& positions);
  static WalkPath from_steps(const std::vector<Step>& steps);
};

/// Result of classifying step i of a path.
struct StepClass {
  bool new_site = false;
  int last_visit = -1;  // most recent s < i with W_s = W_i, or -1 for a new site

  static StepClass fresh() { return {true, -1}; }
  static StepClass return_after(int s) { return {false, s}; }
  friend bool operator==(const StepClass&, const StepClass&) = default;
};

/// Exact Catalan number C_k. Supported for k <= kMaxExactCatalan, beyond
/// which the value no longer fits 64 bits and std::overflow_error is thrown.
inline constexpr int kMaxExactCatalan = 36;
std::uint64_t catalan(int k);

/// Probability of first return to the starting site at step t:
/// zero for odd t, 2 C_{t/2 - 1} (p q)^{t/2} for even t. Evaluated in the
/// log domain so large t underflows gracefully to 0.
double return_prob(const WalkParams& walk, int t);

/// P{R^t} = sum_{i<=t} P{T^i}: probability that W_t revisits an earlier site.
double recurrence_prob(const WalkParams& walk, int t);

/// Return and recurrence probabilities tabulated up to a horizon, built with
/// the Catalan ratio recurrence rather than repeated log-gamma evaluation.
struct RecurrenceTable {
  int horizon = 0;
  std::vector<double> return_probs;      // index i holds P{T^i}, i = 0..horizon (entry 0 is 0)
  std::vector<double> recurrence_probs;  // index i holds P{R^i}
  std::vector<std::uint64_t> catalan;    // C_0..C_min(ceil(horizon/2), kMaxExactCatalan)

  static RecurrenceTable build(const WalkParams& walk, int horizon);

  double first_passage(int i) const { return 1.0 - recurrence_probs[static_cast<std::size_t>(i)]; }
  /// Remaining return mass 2 p_w - P{R^i}, clamped at zero.
  double tail_mass(const WalkParams& walk, int i) const;
};

/// Streams +-1 increments from an engine with one draw per step.
class StepSampler {
 public:
  explicit StepSampler(const WalkParams& walk) : threshold_(bernoulli_threshold(walk.p_w)) {}
  Step operator()(Engine& engine) const { return engine() < threshold_ ? Step::up : Step::down; }

 private:
  std::uint64_t threshold_;
};

WalkPath sample_path(const WalkParams& walk, int t, Engine& engine);
WalkPath sample_path(const WalkParams& walk, int t, std::uint64_t seed);

/// Step 1 <= i <= t is either a new site or a return to the most recent
/// earlier visit of the same site.
StepClass classify_step(const WalkPath& path, int i);

}  // namespace plenoptic
