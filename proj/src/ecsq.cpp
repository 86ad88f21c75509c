#include "plenoptic/ecsq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace plenoptic {

int Quantizer::index(double x) const {
  return static_cast<int>(std::upper_bound(thresholds.begin(), thresholds.end(), x) - thresholds.begin());
}

double Quantizer::rate() const {
  double h = 0.0;
  for (double p : index_pmf)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

Quantizer uniform_quantizer(double step, double lo, double hi) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("uniform_quantizer: bad step or range");
  const long long kmin = std::llround(std::floor(lo / step)), kmax = std::llround(std::ceil(hi / step));
  Quantizer q;
  for (long long k = kmin; k <= kmax; ++k) q.levels.push_back(static_cast<double>(k) * step);
  for (std::size_t i = 1; i < q.levels.size(); ++i) q.thresholds.push_back(0.5 * (q.levels[i - 1] + q.levels[i]));
  q.index_pmf.assign(q.levels.size(), 1.0 / static_cast<double>(q.levels.size()));
  return q;
}

namespace {

struct Line {
  double slope, intercept;
  int cell;
};

// Lower envelope of cost_j(x) = -2 x y_j + y_j^2 + lambda l_j for increasing
// y_j. Returns the surviving cells and the breakpoints between them.
void envelope(const std::vector<double>& y, const std::vector<double>& len, double lambda, std::vector<int>& cells,
              std::vector<double>& breaks) {
  std::vector<Line> hull;
  std::vector<double> xs;  // xs[k] = where hull[k] starts beating hull[k-1]
  for (std::size_t j = 0; j < y.size(); ++j) {
    const Line ln{-2.0 * y[j], y[j] * y[j] + lambda * len[j], static_cast<int>(j)};
    if (!hull.empty() && ln.slope == hull.back().slope) {
      if (ln.intercept >= hull.back().intercept) continue;
      hull.pop_back();
      xs.pop_back();
    }
    double x = -std::numeric_limits<double>::infinity();
    while (!hull.empty()) {
      x = (ln.intercept - hull.back().intercept) / (hull.back().slope - ln.slope);
      if (x <= xs.back()) {
        hull.pop_back();
        xs.pop_back();
        x = -std::numeric_limits<double>::infinity();
      } else {
        break;
      }
    }
    hull.push_back(ln);
    xs.push_back(x);
  }
  cells.clear();
  breaks.clear();
  for (std::size_t k = 0; k < hull.size(); ++k) {
    cells.push_back(hull[k].cell);
    if (k > 0) breaks.push_back(xs[k]);
  }
}

}  // namespace

EcsqDesign design_ecsq(std::span<const double> points, std::span<const double> weights, double lambda,
                       const EcsqOptions& opt) {
  if (!(lambda > 0.0)) throw std::invalid_argument("design_ecsq: lambda must be positive");
  if (points.empty() || points.size() != weights.size()) throw std::invalid_argument("design_ecsq: bad training set");
  const std::size_t n = points.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<double> x(n), wt(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    wt[k] = weights[order[k]];
    if (!(wt[k] >= 0.0)) throw std::invalid_argument("design_ecsq: negative weight");
    x[k] = points[order[k]];
    total += wt[k];
  }
  if (!(total > 0.0)) throw std::invalid_argument("design_ecsq: zero total weight");

  // Summed directly per cell: prefix-sum differences lose the far tails.
  struct CellSums {
    double w = 0.0, mean = 0.0, sse = 0.0;  // sse about `about`
  };
  auto cell = [&](std::size_t begin, std::size_t end, const double* about) {
    CellSums c;
    double wx = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      c.w += wt[k];
      wx += wt[k] * x[k];
    }
    if (!(c.w > 0.0)) return c;
    c.mean = wx / c.w;
    const double centre = about ? *about : c.mean;
    for (std::size_t k = begin; k < end; ++k) c.sse += wt[k] * (x[k] - centre) * (x[k] - centre);
    return c;
  };

  // Start from the high-rate optimum: a uniform grid with step sqrt(6 lambda / ln 2).
  const double step = std::sqrt(6.0 * lambda / std::numbers::ln2);
  Quantizer init = uniform_quantizer(step, x.front(), x.back());
  std::vector<double> y = init.levels;
  std::vector<double> len(y.size(), std::log2(static_cast<double>(y.size())));

  EcsqDesign out;
  std::vector<int> cells;
  std::vector<double> breaks;
  for (int it = 0; it < opt.max_iterations; ++it) {
    envelope(y, len, lambda, cells, breaks);
    out.deleted_cells += static_cast<int>(y.size() - cells.size());
    std::vector<double> ny, nlen;
    double dist = 0.0, rate = 0.0;
    std::size_t begin = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::size_t end =
          c + 1 < cells.size() ? static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), breaks[c]) - x.begin()) : n;
      const CellSums cs = cell(begin, end, nullptr);
      if (cs.w > 0.0) {
        dist += cs.sse;
        const double p = cs.w / total;
        rate -= p * std::log2(p);
        ny.push_back(cs.mean);
        nlen.push_back(-std::log2(p));
      } else {
        ++out.deleted_cells;
      }
      begin = end;
    }
    dist /= total;
    out.objective.push_back(dist + lambda * rate);
    const bool done = out.objective.size() > 1 &&
                      out.objective[out.objective.size() - 2] - out.objective.back() <=
                          opt.relative_tolerance * std::max(1e-300, out.objective.back());
    y = std::move(ny);
    len = std::move(nlen);
    if (done) break;
  }

  // Final cells are the entropy-biased nearest-level regions of the converged
  // levels; the reported statistics are measured with exactly those cells.
  envelope(y, len, lambda, cells, breaks);
  Quantizer& q = out.quantizer;
  q.levels.clear();
  q.index_pmf.clear();
  q.thresholds = breaks;
  double dist = 0.0, rate = 0.0;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const double yc = y[static_cast<std::size_t>(cells[c])];
    const std::size_t end =
        c + 1 < cells.size() ? static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), breaks[c]) - x.begin()) : n;
    const CellSums cs = cell(begin, end, &yc);
    dist += cs.sse;
    const double p = cs.w / total;
    if (p > 0.0) rate -= p * std::log2(p);
    q.levels.push_back(yc);
    q.index_pmf.push_back(p);
    begin = end;
  }
  out.distortion = std::max(0.0, dist / total);
  out.rate = rate;
  return out;
}

EcsqDesign design_ecsq(std::span<const double> samples, double lambda, const EcsqOptions& opt) {
  std::vector<double> w(samples.size(), 1.0);
  return design_ecsq(samples, w, lambda, opt);
}

EcsqDesign design_ecsq_gaussian(double variance, double lambda, const EcsqOptions& opt) {
  if (!(variance > 0.0)) throw std::invalid_argument("design_ecsq_gaussian: variance must be positive");
  const double sd = std::sqrt(variance);
  const int m = std::max(3, opt.grid_points);
  std::vector<double> x(static_cast<std::size_t>(m)), w(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double z = -opt.grid_span + 2.0 * opt.grid_span * k / (m - 1);
    x[static_cast<std::size_t>(k)] = z * sd;
    w[static_cast<std::size_t>(k)] = std::exp(-0.5 * z * z);
  }
  return design_ecsq(x, w, lambda, opt);
}

}  // namespace plenoptic
