#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "plenoptic/reality.hpp"
#include "plenoptic/walk.hpp"

namespace plenoptic {

double binary_entropy(double p);

/// Entropy in bits of a pmf held in any dense Eigen expression.
template <typename Derived>
double discrete_entropy(const Eigen::DenseBase<Derived>& pmf) {
  double total = 0.0;
  double h = 0.0;
  for (Eigen::Index i = 0; i < pmf.size(); ++i) {
    const double p = static_cast<double>(pmf.derived().coeff(i));
    if (!(p >= 0.0)) throw std::invalid_argument("pmf entries must be nonnegative");
    total += p;
    if (p > 0.0) h -= p * std::log2(p);
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("pmf does not sum to one");
  return h;
}

double discrete_entropy(const std::vector<double>& pmf);

/// phi(s2) = 0.5 log2(2 pi e s2).
double gaussian_diff_entropy(double variance);

struct BoundTerms {
  double trajectory_entropy = 0.0;  // H(p_w)
  double innovation_term = 0.0;     // new-site / innovation contribution
  double fano_slack = 0.0;          // H(P_e)
  std::optional<int> memory;        // frames of memory for memory-constrained bounds
  double truncation_error = 0.0;    // certified bound on the neglected series tail
};

/// Lower/upper pair in bits per frame. Per-scalar views divide by L.
struct BoundReport {
  double lower = 0.0;
  double upper = 0.0;
  BoundTerms terms;

  double gap() const { return upper - lower; }
  bool contains(double x, double tol = 0.0) const { return x >= lower - tol && x <= upper + tol; }
};

/// Entropy-rate bounds for a static i.i.d. wall; the lower bound is clamped at 0.
BoundReport static_bounds(const WalkParams& walk, double source_entropy, double fano_slack);

/// Bounds on H(V_t | V^{t-1}) at a finite horizon t >= 1.
BoundReport static_bounds_at(const WalkParams& walk, double source_entropy, double fano_slack, int t);

/// P{A_L} = |X|^{-(L-1)} for a uniform wall.
double slack_AL(int alphabet_size, int L);
double slack_AL(const StaticWallSpec& wall, int L);

/// Lower bound (1 - 2p) H(X) + H(p) P{not A_L} for a uniform wall and odd L.
/// For even L the alternating-pattern argument does not hold and the Fano
/// form with the given slack is used instead; `used_AL` reports which applied.
struct AlternatingBound {
  BoundReport report;
  bool used_AL = false;
};
AlternatingBound static_bounds_AL(const WalkParams& walk, const StaticWallSpec& wall, int L,
                                  double fano_slack_fallback);

/// Upper bound on H(V_M | V^{M-1}) when the coder only remembers M frames.
double conditional_bound_memory(const WalkParams& walk, double source_entropy, int M);

/// All memory bounds for M = 1..max_memory in one pass (index M - 1).
std::vector<double> conditional_bound_memory_curve(const WalkParams& walk, double source_entropy,
                                                   int max_memory);

/// Value of an infinite series over return lags, with a certified bound on
/// the part that was not summed.
struct SeriesResult {
  double value = 0.0;
  double tail_bound = 0.0;
  long long terms = 0;
  bool converged = true;
};

inline constexpr double kDefaultSeriesTolerance = 1e-9;
inline constexpr long long kMaxSeriesTerms = 100'000'000;

struct DynamicRateInputs {
  WalkParams walk;
  std::variant<BscFieldSpec, Ar1FieldSpec> field;
  int block_length = 8;
  double tolerance = kDefaultSeriesTolerance;
};

/// Sum over k >= 1 of f(k) P{T^{2k}} for f(k) = f_inf - g(k), g decreasing to 0.
/// The total return mass 2 p_w is known in closed form, so the series is
/// written as f_inf 2 p_w - sum g(k) P{T^{2k}} and the remaining error is at
/// most g(K + 1) times the return mass left after K terms.
template <typename Deficit>
SeriesResult return_series(const WalkParams& walk, double f_inf, Deficit&& g, double tolerance,
                           long long max_terms = kMaxSeriesTerms) {
  const double p = walk.p_w;
  const double pq = p * walk.q_w();
  SeriesResult out;
  if (p == 0.0) return out;
  double a = 2.0 * pq;  // P{T^2}
  double acc = 0.0, comp = 0.0;    // Neumaier sum of g(k) P_k
  double mass = 0.0, mcomp = 0.0;  // Neumaier sum of P_k
  auto add = [](double& s, double& c, double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  };
  long long k = 1;
  for (;; ++k) {
    add(acc, comp, g(k) * a);
    add(mass, mcomp, a);
    const double tail = std::max(0.0, 2.0 * p - (mass + mcomp));
    const double bound = std::abs(g(k + 1)) * tail;
    if (bound < tolerance || tail == 0.0) {
      out.tail_bound = bound;
      break;
    }
    if (k >= max_terms) {
      out.tail_bound = bound;
      out.converged = false;
      break;
    }
    a *= 2.0 * (2.0 * static_cast<double>(k) - 1.0) / (static_cast<double>(k) + 1.0) * pq;
  }
  out.terms = k;
  out.value = f_inf * 2.0 * p - (acc + comp);
  return out;
}

/// H(V | W) for BSC innovations, using the stationary Bernoulli(1/2) marginal.
SeriesResult dynamic_cond_rate_bsc(const DynamicRateInputs& in);

/// h(V | W) in bits for the Gaussian AR(1) field.
SeriesResult dynamic_cond_rate_ar1(const DynamicRateInputs& in);

/// Jensen upper bound on the return term of h(V | W) for the AR(1) field.
double jensen_upper_ar1(const WalkParams& walk, double rho);

/// Exact return term sum_k phi(1 - rho^{4k}) P{T^{2k}} of h(V | W).
SeriesResult ar1_return_term(const WalkParams& walk, double rho, double tolerance = kDefaultSeriesTolerance);

/// Closed form of sum_k (1 - rho^4k) P{T^{2k}}: sqrt(1 - 4 p q rho^4) - (1 - 2p).
double catalan_generating_sum(const WalkParams& walk, double rho);

struct IdentityCheck {
  double series = 0.0;
  double closed_form = 0.0;
  double residual = 0.0;
  double tail_bound = 0.0;
  long long terms = 0;
};
IdentityCheck catalan_sum_identity_check(const WalkParams& walk, double rho,
                                         double tolerance = 1e-12);

/// Bounds H(p_w) + H(V|W) - H(P_e) <= rate <= H(p_w) + H(V|W). No clamping,
/// since the conditional rate may be a differential entropy.
BoundReport theorem3_bounds(double cond_rate, const WalkParams& walk, double fano_slack,
                            double truncation_error = 0.0);

/// Conditional entropy of frame t given the path and all earlier frames,
/// for BSC innovations started in the stationary Bernoulli(1/2) state.
double bsc_given_path_entropy(const WalkParams& walk, const BscFieldSpec& spec, int L, int t);

/// Bounds on H(V_t | V^{t-1}) for BSC innovations at a finite horizon.
BoundReport dynamic_bounds_bsc_at(const WalkParams& walk, const BscFieldSpec& spec, int L, int t,
                                  double fano_slack);

/// Memory-M upper bound for BSC innovations: the finite-t given-path terms
/// averaged over the first M frames, plus H(p_w).
double dynamic_memory_bound_bsc(const WalkParams& walk, const BscFieldSpec& spec, int L, int M);
std::vector<double> dynamic_memory_curve_bsc(const WalkParams& walk, const BscFieldSpec& spec, int L,
                                             int max_memory);

}  // namespace plenoptic
