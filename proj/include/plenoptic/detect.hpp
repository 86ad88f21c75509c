#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>

#include "plenoptic/reality.hpp"
#include "plenoptic/walk.hpp"

namespace plenoptic {

// Every detector breaks ties toward the prior mode. With p_w <= 0.5 that is a
// downward step, which is also the answer for the symmetric walk.
inline constexpr Step kPriorMode = Step::down;

/// Picks the shift whose (L-1)-sample overlap disagrees in fewer places.
template <typename A, typename B>
Step hamming_detect(const Eigen::DenseBase<A>& v_prev, const Eigen::DenseBase<B>& v_cur) {
  const Eigen::Index n = v_prev.size() - 1;
  const auto up = (v_cur.derived().head(n).array() != v_prev.derived().tail(n).array()).count();
  const auto down = (v_cur.derived().tail(n).array() != v_prev.derived().head(n).array()).count();
  if (up < down) return Step::up;
  return kPriorMode;
}

/// Gaussian MAP detector for the AR(1) field. Under each shift the overlap
/// is scored by its one-step prediction residual rho v_prev against the
/// innovation variance, the entering sample by its N(0, 1) marginal, and the
/// prior of the step is included, so with rho -> 0 it falls back to the prior
/// mode instead of guessing.
template <typename A, typename B>
Step mmse_detect(const Eigen::DenseBase<A>& v_prev, const Eigen::DenseBase<B>& v_cur, double rho,
                 double p_w = 0.5) {
  const Eigen::Index n = v_prev.size() - 1;
  const auto& prev = v_prev.derived();
  const auto& cur = v_cur.derived();
  const double s2 = 1.0 - rho * rho;
  const double r_up = (cur.head(n).template cast<double>() - rho * prev.tail(n).template cast<double>()).squaredNorm();
  const double r_down = (cur.tail(n).template cast<double>() - rho * prev.head(n).template cast<double>()).squaredNorm();
  const double enter_up = static_cast<double>(cur(n)) * static_cast<double>(cur(n));
  const double enter_down = static_cast<double>(cur(0)) * static_cast<double>(cur(0));
  const double inf = std::numeric_limits<double>::infinity();
  const double prior_up = p_w > 0.0 ? -2.0 * std::log(p_w) : inf;
  const double prior_down = p_w < 1.0 ? -2.0 * std::log(1.0 - p_w) : inf;
  const double score_up = r_up / s2 + enter_up + prior_up;
  const double score_down = r_down / s2 + enter_down + prior_down;
  return score_up < score_down ? Step::up : kPriorMode;
}

/// Exact posterior argmax of the first step given (V_0, V_1) for a discrete
/// reality: the static wall, or BSC innovations started from Bernoulli(p_x).
template <typename A, typename B>
Step map_detect(const Eigen::DenseBase<A>& v_prev, const Eigen::DenseBase<B>& v_cur, const RealitySpec& reality,
                const WalkParams& walk) {
  const Eigen::Index n = v_prev.size() - 1;
  const auto& prev = v_prev.derived();
  const auto& cur = v_cur.derived();
  auto overlap_lik = [&](auto&& a, auto&& b) {
    double lik = 1.0;
    if (const auto* bsc = std::get_if<BscFieldSpec>(&reality)) {
      for (Eigen::Index j = 0; j < n; ++j) lik *= a(j) == b(j) ? 1.0 - bsc->p_i : bsc->p_i;
    } else {
      for (Eigen::Index j = 0; j < n; ++j)
        if (a(j) != b(j)) return 0.0;
    }
    return lik;
  };
  auto marginal = [&](Symbol s) {
    if (const auto* bsc = std::get_if<BscFieldSpec>(&reality)) {
      const double one = bsc->p_x * (1.0 - bsc->p_i) + (1.0 - bsc->p_x) * bsc->p_i;
      return s == 1 ? one : 1.0 - one;
    }
    const auto& pmf = std::get<StaticWallSpec>(reality).pmf;
    return s >= 0 && static_cast<std::size_t>(s) < pmf.size() ? pmf[static_cast<std::size_t>(s)] : 0.0;
  };
  const double up = walk.p_w * overlap_lik(cur.head(n), prev.tail(n)) * marginal(static_cast<Symbol>(cur(n)));
  const double down = walk.q_w() * overlap_lik(cur.tail(n), prev.head(n)) * marginal(static_cast<Symbol>(cur(0)));
  return up > down ? Step::up : kPriorMode;
}

enum class DetectorKind { hamming, mmse, map_oracle };

const char* to_string(DetectorKind kind);

struct DetectorReport {
  double p_e_hat = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double ci95_halfwidth = 0.0;
  DetectorKind detector = DetectorKind::hamming;

  double upper95() const { return p_e_hat + ci95_halfwidth; }
  double lower95() const { return std::max(0.0, p_e_hat - ci95_halfwidth); }
};

/// Normal-approximation binomial half width, or the rule of three (3/n)
/// when no errors were seen.
double binomial_ci95(std::uint64_t errors, std::uint64_t trials);

struct PeConfig {
  WalkParams walk;
  RealitySpec reality;
  int block_length = 8;
  int step = 1;  // detect W_step - W_{step-1} from (V_{step-1}, V_step, W_{step-1})
};

/// Monte-Carlo estimate of P_e. Trials run in fixed chunks that each own an
/// engine derived from the master seed, so the report does not depend on
/// the thread count.
DetectorReport estimate_pe(const PeConfig& config, DetectorKind detector, std::uint64_t trials,
                           std::uint64_t master_seed, unsigned threads = 1);

/// Fano slack H(P_e) for a binary increment.
double fano_term(double p_e);

}  // namespace plenoptic
