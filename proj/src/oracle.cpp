#include "plenoptic/oracle.hpp"

#include <cmath>
#include <sstream>

namespace plenoptic {

BudgetExceeded::BudgetExceeded(double cost, double cap)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "enumeration needs about " << cost << " terms, over the budget of " << cap;
        return msg.str();
      }()),
      cost_(cost) {}

double enumeration_cost(int alphabet_size, int L, int t) {
  return std::pow(static_cast<double>(alphabet_size), static_cast<double>((t + 1) * L)) * std::ldexp(1.0, t);
}

namespace {

// Per-site statistics of a discrete reality: the marginal of a site first
// read at time tau and the transition between two reads delta apart.
struct DiscreteModel {
  int m = 2;
  std::vector<double> pmf;  // static wall pmf
  const BscFieldSpec* bsc = nullptr;

  explicit DiscreteModel(const RealitySpec& r) {
    if (const auto* w = std::get_if<StaticWallSpec>(&r)) {
      pmf = w->pmf;
      m = w->alphabet_size();
    } else if ((bsc = std::get_if<BscFieldSpec>(&r)) != nullptr) {
      m = 2;
    } else {
      throw std::invalid_argument("oracle: only discrete realities can be enumerated");
    }
  }

  double marginal(int tau, int s) const {
    if (!bsc) return pmf[static_cast<std::size_t>(s)];
    const double f = bsc_equiv(bsc->p_i, tau);
    const double one = bsc->p_x * (1.0 - f) + (1.0 - bsc->p_x) * f;
    return s == 1 ? one : 1.0 - one;
  }

  double transition(int delta, int a, int b) const {
    if (!bsc) return a == b ? 1.0 : 0.0;
    const double f = bsc_equiv(bsc->p_i, delta);
    return a == b ? 1.0 - f : f;
  }
};

// Neumaier-compensated accumulator array.
struct CompensatedArray {
  std::vector<double> sum, comp;
  explicit CompensatedArray(std::size_t n) : sum(n, 0.0), comp(n, 0.0) {}
  void add(std::size_t k, double x) {
    const double s = sum[k];
    const double t = s + x;
    comp[k] += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    sum[k] = t;
  }
  double operator[](std::size_t k) const { return sum[k] + comp[k]; }
};

struct Read {
  int time;
  int slot;  // position of the sample in the flattened outcome, frame-major
};

// Groups the reads of one path by site, each list in time order.
std::vector<std::vector<Read>> reads_by_site(const std::vector<int>& pos, int L) {
  int lo = pos[0], hi = pos[0];
  for (int p : pos) {
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  std::vector<std::vector<Read>> sites(static_cast<std::size_t>(hi - lo + L));
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (int j = 0; j < L; ++j)
      sites[static_cast<std::size_t>(pos[i] + j - lo)].push_back({static_cast<int>(i), static_cast<int>(i) * L + j});
  return sites;
}

// Adds P(w) P(v | w) for every outcome v of the frames along one path.
void accumulate_path(const DiscreteModel& model, const std::vector<int>& pos, int L, double path_prob,
                     CompensatedArray& joint) {
  const int n = static_cast<int>(pos.size()) * L;
  const auto sites = reads_by_site(pos, L);
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  const std::size_t states = joint.sum.size();
  for (std::size_t v = 0; v < states; ++v) {
    // Frame 0 is the most significant base-m digit block.
    std::size_t rest = v;
    for (int k = n - 1; k >= 0; --k) {
      digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::size_t>(model.m));
      rest /= static_cast<std::size_t>(model.m);
    }
    double p = path_prob;
    for (const auto& reads : sites) {
      if (reads.empty()) continue;
      int prev = digits[static_cast<std::size_t>(reads[0].slot)];
      p *= model.marginal(reads[0].time, prev);
      for (std::size_t r = 1; r < reads.size() && p > 0.0; ++r) {
        const int cur = digits[static_cast<std::size_t>(reads[r].slot)];
        p *= model.transition(reads[r].time - reads[r - 1].time, prev, cur);
        prev = cur;
      }
      if (p == 0.0) break;
    }
    if (p > 0.0) joint.add(v, p);
  }
}

void check_budget(double cost, double states, const EnumerationBudget& budget) {
  if (cost > budget.max_terms) throw BudgetExceeded(cost, budget.max_terms);
  if (states > budget.max_states) throw BudgetExceeded(states, budget.max_states);
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

}  // namespace

ExactEntropies exact_conditional_entropy(const WalkParams& walk, const RealitySpec& reality, int L, int t,
                                         const EnumerationBudget& budget) {
  if (L < 2) throw std::invalid_argument("oracle: block length must be at least 2");
  if (t < 1) throw std::invalid_argument("oracle: horizon must be positive");
  const DiscreteModel model(reality);
  const double states = std::pow(static_cast<double>(model.m), static_cast<double>((t + 1) * L));
  const double cost = enumeration_cost(model.m, L, t);
  check_budget(cost, states, budget);

  CompensatedArray joint(static_cast<std::size_t>(states));
  std::vector<int> pos(static_cast<std::size_t>(t + 1), 0);
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << t); ++w) {
    double prob = 1.0;
    for (int i = 1; i <= t; ++i) {
      const bool up = (w >> (i - 1)) & 1U;
      pos[static_cast<std::size_t>(i)] = pos[static_cast<std::size_t>(i - 1)] + (up ? 1 : -1);
      prob *= up ? walk.p_w : walk.q_w();
    }
    if (prob > 0.0) accumulate_path(model, pos, L, prob, joint);
  }

  ExactEntropies out;
  out.cost = cost;
  out.joint.assign(static_cast<std::size_t>(t + 1), 0.0);
  std::vector<double> p(joint.sum.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = joint[k];
  const std::size_t frame_states = static_cast<std::size_t>(std::llround(std::pow(model.m, L)));
  for (int k = t; k >= 0; --k) {
    out.joint[static_cast<std::size_t>(k)] = entropy_bits(p);
    if (k == 0) break;
    // Marginalize the last frame: it occupies the least significant digits.
    std::vector<double> prefix(p.size() / frame_states, 0.0);
    for (std::size_t g = 0; g < prefix.size(); ++g) {
      double s = 0.0, c = 0.0;
      for (std::size_t r = 0; r < frame_states; ++r) {
        const double x = p[g * frame_states + r];
        const double tt = s + x;
        c += std::abs(s) >= std::abs(x) ? (s - tt) + x : (x - tt) + s;
        s = tt;
      }
      prefix[g] = s + c;
    }
    p = std::move(prefix);
  }
  for (int k = 1; k <= t; ++k)
    out.conditional.push_back(out.joint[static_cast<std::size_t>(k)] - out.joint[static_cast<std::size_t>(k - 1)]);
  out.block = out.joint.back() - out.joint.front();
  return out;
}

double exact_pe(const WalkParams& walk, const RealitySpec& reality, int L, const EnumerationBudget& budget) {
  if (L < 2) throw std::invalid_argument("oracle: block length must be at least 2");
  const DiscreteModel model(reality);
  const double states = std::pow(static_cast<double>(model.m), static_cast<double>(2 * L));
  check_budget(enumeration_cost(model.m, L, 1), states, budget);
  CompensatedArray up(static_cast<std::size_t>(states)), down(static_cast<std::size_t>(states));
  if (walk.p_w > 0.0) accumulate_path(model, {0, 1}, L, walk.p_w, up);
  accumulate_path(model, {0, -1}, L, walk.q_w(), down);
  double s = 0.0, c = 0.0;
  for (std::size_t v = 0; v < up.sum.size(); ++v) {
    const double x = std::min(up[v], down[v]);
    const double tt = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - tt) + x : (x - tt) + s;
    s = tt;
  }
  return s + c;
}

}  // namespace plenoptic
