#include "plenoptic/walk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace plenoptic {

WalkParams::WalkParams(double p) : p_w(p) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::invalid_argument("walk probability must lie in [0, 0.5], got " + std::to_string(p));
  }
}

int WalkPath::new_site_count() const {
  int n = 0;
  for (bool b : new_site) n += b ? 1 : 0;
  return n;
}

namespace {

WalkPath assemble(Eigen::VectorXi positions) {
  WalkPath path;
  const int t = static_cast<int>(positions.size()) - 1;
  path.positions = std::move(positions);
  path.increments.resize(t);
  path.new_site.assign(static_cast<std::size_t>(t), false);
  int lo = path.positions(0);
  int hi = lo;
  for (int i = 1; i <= t; ++i) {
    const int d = path.positions(i) - path.positions(i - 1);
    if (d != 1 && d != -1) throw std::invalid_argument("walk positions must change by +-1 per step");
    path.increments(i - 1) = d;
    const int w = path.positions(i);
    // A +-1 walk has visited exactly the integer interval [lo, hi].
    if (w < lo || w > hi) {
      path.new_site[static_cast<std::size_t>(i - 1)] = true;
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
  }
  return path;
}

}  // namespace

WalkPath WalkPath::from_positions(const std::vector<int>& positions) {
  if (positions.empty() || positions.front() != 0) {
    throw std::invalid_argument("walk positions must start at 0");
  }
  Eigen::VectorXi p(static_cast<Eigen::Index>(positions.size()));
  for (std::size_t i = 0; i < positions.size(); ++i) p(static_cast<Eigen::Index>(i)) = positions[i];
  return assemble(std::move(p));
}

WalkPath WalkPath::from_steps(const std::vector<Step>& steps) {
  Eigen::VectorXi p(static_cast<Eigen::Index>(steps.size() + 1));
  p(0) = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    p(static_cast<Eigen::Index>(i + 1)) = p(static_cast<Eigen::Index>(i)) + displacement(steps[i]);
  }
  return assemble(std::move(p));
}

std::uint64_t catalan(int k) {
  if (k < 0) throw std::invalid_argument("catalan index must be nonnegative");
  if (k > kMaxExactCatalan) {
    throw std::overflow_error("catalan(" + std::to_string(k) + ") exceeds 64-bit range");
  }
  // C_j = C_{j-1} * 2(2j - 1) / (j + 1); the division is exact.
  unsigned __int128 c = 1;
  for (int j = 1; j <= k; ++j) {
    c = c * static_cast<unsigned>(2 * (2 * j - 1)) / static_cast<unsigned>(j + 1);
  }
  return static_cast<std::uint64_t>(c);
}

double return_prob(const WalkParams& walk, int t) {
  if (t < 1) throw std::invalid_argument("return_prob requires t >= 1");
  if (t % 2 == 1) return 0.0;
  const double pq = walk.p_w * walk.q_w();
  if (pq == 0.0) return 0.0;
  const int n = t / 2;
  // log C_{n-1} = lgamma(2n - 1) - lgamma(n) - lgamma(n + 1)
  const double m = n - 1;
  const double log_c = std::lgamma(2.0 * m + 1.0) - std::lgamma(m + 1.0) - std::lgamma(m + 2.0);
  return std::exp(std::log(2.0) + log_c + n * std::log(pq));
}

double recurrence_prob(const WalkParams& walk, int t) {
  if (t < 1) throw std::invalid_argument("recurrence_prob requires t >= 1");
  return RecurrenceTable::build(walk, t).recurrence_probs.back();
}

RecurrenceTable RecurrenceTable::build(const WalkParams& walk, int horizon) {
  if (horizon < 0) throw std::invalid_argument("recurrence table horizon must be nonnegative");
  RecurrenceTable table;
  table.horizon = horizon;
  table.return_probs.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
  table.recurrence_probs.assign(static_cast<std::size_t>(horizon) + 1, 0.0);

  const double pq = walk.p_w * walk.q_w();
  // a_n = P{T^{2n}} = 2 C_{n-1} (pq)^n, a_{n+1} = a_n * 2(2n - 1)/(n + 1) * pq
  double a = 2.0 * pq;
  double acc = 0.0;
  for (int i = 1; i <= horizon; ++i) {
    if (i % 2 == 0) {
      const int n = i / 2;
      if (n > 1) a *= 2.0 * (2.0 * (n - 1) - 1.0) / static_cast<double>(n) * pq;
      table.return_probs[static_cast<std::size_t>(i)] = a;
      acc += a;
    }
    table.recurrence_probs[static_cast<std::size_t>(i)] = acc;
  }

  const int kmax = std::min((horizon + 1) / 2, kMaxExactCatalan);
  for (int k = 0; k <= kmax; ++k) table.catalan.push_back(plenoptic::catalan(k));
  return table;
}

double RecurrenceTable::tail_mass(const WalkParams& walk, int i) const {
  return std::max(0.0, 2.0 * walk.p_w - recurrence_probs[static_cast<std::size_t>(i)]);
}

WalkPath sample_path(const WalkParams& walk, int t, Engine& engine) {
  if (t < 1) throw std::invalid_argument("sample_path requires t >= 1");
  const StepSampler sampler(walk);
  Eigen::VectorXi positions(t + 1);
  positions(0) = 0;
  for (int i = 1; i <= t; ++i) positions(i) = positions(i - 1) + displacement(sampler(engine));
  return assemble(std::move(positions));
}

WalkPath sample_path(const WalkParams& walk, int t, std::uint64_t seed) {
  Engine engine = make_engine(seed, streams::walk);
  return sample_path(walk, t, engine);
}

StepClass classify_step(const WalkPath& path, int i) {
  if (i < 1 || i > path.horizon()) throw std::out_of_range("classify_step index out of range");
  if (path.is_new_site(i)) return StepClass::fresh();
  const int w = path.position(i);
  for (int s = i - 1; s >= 0; --s) {
    if (path.position(s) == w) return StepClass::return_after(s);
  }
  throw std::logic_error("revisited site has no earlier visit");
}

}  // namespace plenoptic
