#include "plenoptic/entropy.hpp"

#include <algorithm>
#include <string>

namespace plenoptic {

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p outside [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double discrete_entropy(const std::vector<double>& pmf) {
  return discrete_entropy(Eigen::Map<const Eigen::VectorXd>(pmf.data(), static_cast<Eigen::Index>(pmf.size())));
}

double gaussian_diff_entropy(double variance) {
  if (!(variance > 0.0)) throw std::domain_error("gaussian_diff_entropy: variance must be positive");
  return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * variance);
}

BoundReport static_bounds(const WalkParams& walk, double source_entropy, double fano_slack) {
  if (source_entropy < 0.0 || fano_slack < 0.0) throw std::invalid_argument("static_bounds: negative entropy");
  BoundReport r;
  r.terms.trajectory_entropy = binary_entropy(walk.p_w);
  r.terms.innovation_term = (1.0 - 2.0 * walk.p_w) * source_entropy;
  r.terms.fano_slack = fano_slack;
  r.upper = r.terms.innovation_term + r.terms.trajectory_entropy;
  r.lower = std::max(0.0, r.upper - fano_slack);
  return r;
}

BoundReport static_bounds_at(const WalkParams& walk, double source_entropy, double fano_slack, int t) {
  if (t < 1) throw std::invalid_argument("static_bounds_at: t must be positive");
  if (source_entropy < 0.0 || fano_slack < 0.0) throw std::invalid_argument("static_bounds_at: negative entropy");
  const auto table = RecurrenceTable::build(walk, t);
  double avg = 0.0;
  for (int i = 1; i <= t; ++i) avg += table.first_passage(i);
  avg /= t;
  BoundReport r;
  r.terms.trajectory_entropy = binary_entropy(walk.p_w);
  r.terms.innovation_term = avg * source_entropy;
  r.terms.fano_slack = fano_slack;
  r.upper = r.terms.innovation_term + r.terms.trajectory_entropy;
  r.lower = std::max(0.0, table.first_passage(t) * source_entropy + r.terms.trajectory_entropy - fano_slack);
  return r;
}

double slack_AL(int alphabet_size, int L) {
  if (alphabet_size < 2 || L < 2) throw std::invalid_argument("slack_AL: need |X| >= 2 and L >= 2");
  return std::pow(static_cast<double>(alphabet_size), -(L - 1));
}

double slack_AL(const StaticWallSpec& wall, int L) {
  if (!wall.is_uniform()) throw std::invalid_argument("slack_AL: only uniform walls are supported");
  return slack_AL(wall.alphabet_size(), L);
}

AlternatingBound static_bounds_AL(const WalkParams& walk, const StaticWallSpec& wall, int L,
                                  double fano_slack_fallback) {
  const double hx = discrete_entropy(wall.pmf);
  if (!wall.is_uniform() || L % 2 == 0) return {static_bounds(walk, hx, fano_slack_fallback), false};
  AlternatingBound out;
  out.used_AL = true;
  const double slack = binary_entropy(walk.p_w) * slack_AL(wall, L);
  out.report = static_bounds(walk, hx, slack);
  return out;
}

std::vector<double> conditional_bound_memory_curve(const WalkParams& walk, double source_entropy,
                                                   int max_memory) {
  if (max_memory < 1) throw std::invalid_argument("memory must be at least one frame");
  const auto table = RecurrenceTable::build(walk, max_memory);
  const double hp = binary_entropy(walk.p_w);
  std::vector<double> out(static_cast<std::size_t>(max_memory));
  double sum = 0.0;
  for (int m = 1; m <= max_memory; ++m) {
    sum += table.first_passage(m);
    out[static_cast<std::size_t>(m - 1)] = sum / m * source_entropy + hp;
  }
  return out;
}

double conditional_bound_memory(const WalkParams& walk, double source_entropy, int M) {
  return conditional_bound_memory_curve(walk, source_entropy, M).back();
}

SeriesResult dynamic_cond_rate_bsc(const DynamicRateInputs& in) {
  const auto* spec = std::get_if<BscFieldSpec>(&in.field);
  if (!spec) throw std::invalid_argument("dynamic_cond_rate_bsc: field is not BSC");
  const int L = in.block_length;
  if (L < 2) throw std::invalid_argument("block length must be at least 2");
  const double p = in.walk.p_w;
  SeriesResult out;
  if (spec->p_i > 0.0) {
    const double pi = spec->p_i;
    out = return_series(in.walk, 1.0,
                        [pi](long long k) { return 1.0 - binary_entropy(bsc_equiv(pi, static_cast<int>(std::min<long long>(k * 2, 1 << 30)))); },
                        in.tolerance);
  }
  out.value += (1.0 - 2.0 * p) + (L - 1) * binary_entropy(spec->p_i);
  return out;
}

SeriesResult ar1_return_term(const WalkParams& walk, double rho, double tolerance) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("ar1_return_term: rho must lie in [0, 1)");
  const double rho4 = std::pow(rho, 4);
  return return_series(walk, gaussian_diff_entropy(1.0),
                       [rho4](long long k) { return -0.5 * std::log2(1.0 - std::pow(rho4, static_cast<double>(k))); },
                       tolerance);
}

SeriesResult dynamic_cond_rate_ar1(const DynamicRateInputs& in) {
  const auto* spec = std::get_if<Ar1FieldSpec>(&in.field);
  if (!spec) throw std::invalid_argument("dynamic_cond_rate_ar1: field is not AR(1)");
  if (!(spec->rho > 0.0 && spec->rho < 1.0)) throw std::domain_error("rho must lie in (0, 1)");
  const int L = in.block_length;
  if (L < 2) throw std::invalid_argument("block length must be at least 2");
  SeriesResult out = ar1_return_term(in.walk, spec->rho, in.tolerance);
  out.value += gaussian_diff_entropy(1.0) * (1.0 - 2.0 * in.walk.p_w) +
               (L - 1) * gaussian_diff_entropy(spec->innovation_variance());
  return out;
}

double catalan_generating_sum(const WalkParams& walk, double rho) {
  const double p = walk.p_w;
  const double r4 = std::pow(rho, 4);
  return std::sqrt(1.0 - 4.0 * p * walk.q_w() * r4) - (1.0 - 2.0 * p);
}

double jensen_upper_ar1(const WalkParams& walk, double rho) {
  const double p = walk.p_w;
  if (p == 0.0) return 0.0;
  return 2.0 * p * gaussian_diff_entropy(catalan_generating_sum(walk, rho) / (2.0 * p));
}

IdentityCheck catalan_sum_identity_check(const WalkParams& walk, double rho, double tolerance) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("identity check: rho must lie in [0, 1)");
  const double rho4 = std::pow(rho, 4);
  const auto s = return_series(walk, 1.0, [rho4](long long k) { return std::pow(rho4, static_cast<double>(k)); },
                               tolerance);
  IdentityCheck out;
  out.series = s.value;
  out.closed_form = catalan_generating_sum(walk, rho);
  out.residual = std::abs(out.series - out.closed_form);
  out.tail_bound = s.tail_bound;
  out.terms = s.terms;
  return out;
}

BoundReport theorem3_bounds(double cond_rate, const WalkParams& walk, double fano_slack, double truncation_error) {
  if (!std::isfinite(cond_rate) || !(fano_slack >= 0.0)) throw std::invalid_argument("theorem3_bounds: bad input");
  BoundReport r;
  r.terms.trajectory_entropy = binary_entropy(walk.p_w);
  r.terms.innovation_term = cond_rate;
  r.terms.fano_slack = fano_slack;
  r.terms.truncation_error = truncation_error;
  r.upper = r.terms.trajectory_entropy + cond_rate;
  r.lower = r.upper - fano_slack;
  return r;
}

namespace {

// Given-path conditional entropies c(1..t) for BSC innovations.
std::vector<double> bsc_given_path_curve(const WalkParams& walk, const BscFieldSpec& spec, int L, int t) {
  if (L < 2) throw std::invalid_argument("block length must be at least 2");
  if (t < 1) throw std::invalid_argument("horizon must be positive");
  const auto table = RecurrenceTable::build(walk, t);
  const double overlap = (L - 1) * binary_entropy(spec.p_i);
  std::vector<double> c(static_cast<std::size_t>(t));
  double returns = 0.0;
  for (int i = 1; i <= t; ++i) {
    if (i % 2 == 0) returns += binary_entropy(bsc_equiv(spec.p_i, i)) * table.return_probs[static_cast<std::size_t>(i)];
    c[static_cast<std::size_t>(i - 1)] = overlap + table.first_passage(i) + returns;
  }
  return c;
}

}  // namespace

double bsc_given_path_entropy(const WalkParams& walk, const BscFieldSpec& spec, int L, int t) {
  return bsc_given_path_curve(walk, spec, L, t).back();
}

BoundReport dynamic_bounds_bsc_at(const WalkParams& walk, const BscFieldSpec& spec, int L, int t,
                                  double fano_slack) {
  const auto c = bsc_given_path_curve(walk, spec, L, t);
  double avg = 0.0;
  for (double x : c) avg += x;
  avg /= t;
  BoundReport r;
  r.terms.trajectory_entropy = binary_entropy(walk.p_w);
  r.terms.innovation_term = avg;
  r.terms.fano_slack = fano_slack;
  r.upper = r.terms.trajectory_entropy + avg;
  r.lower = std::max(0.0, r.terms.trajectory_entropy + c.back() - fano_slack);
  return r;
}

std::vector<double> dynamic_memory_curve_bsc(const WalkParams& walk, const BscFieldSpec& spec, int L,
                                             int max_memory) {
  const auto c = bsc_given_path_curve(walk, spec, L, max_memory);
  const double hp = binary_entropy(walk.p_w);
  std::vector<double> out(c.size());
  double sum = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    sum += c[m];
    out[m] = hp + sum / static_cast<double>(m + 1);
  }
  return out;
}

double dynamic_memory_bound_bsc(const WalkParams& walk, const BscFieldSpec& spec, int L, int M) {
  return dynamic_memory_curve_bsc(walk, spec, L, M).back();
}

}  // namespace plenoptic
