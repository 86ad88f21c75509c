#include "plenoptic/reality.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace plenoptic {

StaticWallSpec::StaticWallSpec(std::vector<double> p) : pmf(std::move(p)) {
  if (pmf.size() < 2) throw std::invalid_argument("wall alphabet needs at least two symbols");
  double total = 0.0;
  for (double v : pmf) {
    if (!(v >= 0.0)) throw std::invalid_argument("wall pmf entries must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("wall pmf must sum to 1, got " + std::to_string(total));
  }
}

StaticWallSpec StaticWallSpec::uniform(int alphabet_size) {
  if (alphabet_size < 2) throw std::invalid_argument("wall alphabet needs at least two symbols");
  return StaticWallSpec(std::vector<double>(static_cast<std::size_t>(alphabet_size), 1.0 / alphabet_size));
}

StaticWallSpec StaticWallSpec::bernoulli(double p_x) {
  if (!(p_x >= 0.0 && p_x <= 1.0)) throw std::invalid_argument("Bernoulli parameter outside [0, 1]");
  return StaticWallSpec({1.0 - p_x, p_x});
}

bool StaticWallSpec::is_uniform() const {
  for (double v : pmf) {
    if (std::abs(v - pmf.front()) > 1e-15) return false;
  }
  return true;
}

BscFieldSpec::BscFieldSpec(double px, double pi) : p_x(px), p_i(pi) {
  if (!(px >= 0.0 && px <= 1.0)) throw std::invalid_argument("p_x outside [0, 1]");
  if (!(pi >= 0.0 && pi <= 0.5)) throw std::invalid_argument("p_i outside [0, 0.5]");
}

Ar1FieldSpec::Ar1FieldSpec(double r) : rho(r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw std::domain_error("AR(1) correlation must lie in (0, 1), got " + std::to_string(r));
  }
}

FieldWindow<Symbol> gen_static_wall(const StaticWallSpec& spec, int site_lo, int site_hi,
                                    std::uint64_t seed) {
  if (site_hi < site_lo) throw std::invalid_argument("empty site range");
  FieldWindow<Symbol> wall;
  wall.site_lo = site_lo;
  wall.site_hi = site_hi;
  wall.samples.resize(1, wall.width());
  Engine engine = make_engine(seed, streams::wall);
  std::discrete_distribution<Symbol> draw(spec.pmf.begin(), spec.pmf.end());
  for (int j = 0; j < wall.width(); ++j) wall.samples(0, j) = draw(engine);
  return wall;
}

Vector<double> gen_ar1_row(int width, Engine& engine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector<double> row(width);
  for (int j = 0; j < width; ++j) row(j) = gauss(engine);
  return row;
}

double bsc_equiv(double p_i, int t) {
  if (t < 0) throw std::invalid_argument("bsc_equiv requires t >= 0");
  return 0.5 * (1.0 - std::pow(1.0 - 2.0 * p_i, t));
}

Vector<Symbol> evolve_bsc(const Vector<Symbol>& row, double p_i, Engine& engine) {
  const std::uint64_t threshold = bernoulli_threshold(p_i);
  Vector<Symbol> next(row.size());
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    next(j) = engine() < threshold ? 1 - row(j) : row(j);
  }
  return next;
}

Vector<Symbol> evolve_bsc(const Vector<Symbol>& row, double p_i, std::uint64_t seed) {
  Engine engine = make_engine(seed, streams::field);
  return evolve_bsc(row, p_i, engine);
}

Vector<double> evolve_ar1(const Vector<double>& row, const Ar1FieldSpec& spec, Engine& engine) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(spec.innovation_variance()));
  Vector<double> next(row.size());
  for (Eigen::Index j = 0; j < row.size(); ++j) next(j) = spec.rho * row(j) + gauss(engine);
  return next;
}

Vector<double> evolve_ar1(const Vector<double>& row, const Ar1FieldSpec& spec, std::uint64_t seed) {
  Engine engine = make_engine(seed, streams::field);
  return evolve_ar1(row, spec, engine);
}

FieldWindow<Symbol> gen_bsc_field(const BscFieldSpec& spec, int site_lo, int site_hi, int t,
                                  std::uint64_t seed) {
  FieldWindow<Symbol> field = gen_static_wall(StaticWallSpec::bernoulli(spec.p_x), site_lo, site_hi, seed);
  field.samples.conservativeResize(t + 1, Eigen::NoChange);
  Engine engine = make_engine(seed, streams::field);
  for (int k = 1; k <= t; ++k) {
    const Vector<Symbol> prev = field.samples.row(k - 1).transpose();
    field.samples.row(k) = evolve_bsc(prev, spec.p_i, engine).transpose();
  }
  return field;
}

FieldWindow<double> gen_ar1_field(const Ar1FieldSpec& spec, int site_lo, int site_hi, int t,
                                  std::uint64_t seed) {
  if (site_hi < site_lo) throw std::invalid_argument("empty site range");
  FieldWindow<double> field;
  field.site_lo = site_lo;
  field.site_hi = site_hi;
  field.samples.resize(t + 1, field.width());
  Engine init = make_engine(seed, streams::wall);
  field.samples.row(0) = gen_ar1_row(field.width(), init).transpose();
  Engine engine = make_engine(seed, streams::field);
  for (int k = 1; k <= t; ++k) {
    const Vector<double> prev = field.samples.row(k - 1).transpose();
    field.samples.row(k) = evolve_ar1(prev, spec, engine).transpose();
  }
  return field;
}

template <typename Scalar>
LazyField<Scalar>::LazyField(FieldWindow<Scalar> initial, RealitySpec dynamics, std::uint64_t seed)
    : initial_(std::move(initial)),
      dynamics_(std::move(dynamics)),
      engine_(make_engine(seed, streams::field)),
      last_time_(static_cast<std::size_t>(initial_.width()), 0),
      last_value_(static_cast<std::size_t>(initial_.width())) {
  for (int j = 0; j < initial_.width(); ++j) last_value_[static_cast<std::size_t>(j)] = initial_.samples(0, j);
}

template <typename Scalar>
Scalar LazyField<Scalar>::read(int site, int time) {
  if (site < initial_.site_lo || site > initial_.site_hi) {
    throw std::out_of_range("site " + std::to_string(site) + " outside field window");
  }
  const auto k = static_cast<std::size_t>(site - initial_.site_lo);
  const int dt = time - last_time_[k];
  if (dt < 0) throw std::logic_error("lazy field read went back in time");
  if (dt == 0) return last_value_[k];
  Scalar& v = last_value_[k];
  if constexpr (std::is_same_v<Scalar, double>) {
    const auto& spec = std::get<Ar1FieldSpec>(dynamics_);
    const double a = std::pow(spec.rho, dt);
    std::normal_distribution<double> gauss(0.0, std::sqrt(1.0 - a * a));
    v = a * v + gauss(engine_);
  } else {
    if (const auto* bsc = std::get_if<BscFieldSpec>(&dynamics_)) {
      if (engine_() < bernoulli_threshold(bsc_equiv(bsc->p_i, dt))) v = 1 - v;
    }
  }
  last_time_[k] = time;
  return v;
}

template class LazyField<Symbol>;
template class LazyField<double>;

}  // namespace plenoptic
