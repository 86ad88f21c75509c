#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "plenoptic/random.hpp"
#include "plenoptic/types.hpp"

namespace plenoptic {

/// Static wall painted i.i.d. from a finite pmf.
struct StaticWallSpec {
  std::vector<double> pmf;

  explicit StaticWallSpec(std::vector<double> p);
  StaticWallSpec() : StaticWallSpec(std::vector<double>{0.5, 0.5}) {}

  static StaticWallSpec uniform(int alphabet_size);
  static StaticWallSpec bernoulli(double p_x);

  int alphabet_size() const { return static_cast<int>(pmf.size()); }
  bool is_uniform() const;
};

/// Binary field whose bits flip independently with probability p_i per step.
struct BscFieldSpec {
  double p_x = 0.5;  // initial Bernoulli parameter of row 0
  double p_i = 0.0;

  BscFieldSpec(double px, double pi);
  BscFieldSpec() = default;
};

/// Unit-variance Gaussian field, X^(t) = rho X^(t-1) + N(0, 1 - rho^2) per site.
struct Ar1FieldSpec {
  double rho = 0.9;

  explicit Ar1FieldSpec(double r);
  Ar1FieldSpec() = default;

  double innovation_variance() const { return 1.0 - rho * rho; }
};

using RealitySpec = std::variant<StaticWallSpec, BscFieldSpec, Ar1FieldSpec>;

/// Field samples over the site interval [site_lo, site_hi] for times 0..rows()-1.
/// A static wall has a single row that stands for every time.
template <typename Scalar>
struct FieldWindow {
  int site_lo = 0;
  int site_hi = -1;
  Matrix<Scalar> samples;  // rows are time steps, columns are sites

  int width() const { return site_hi - site_lo + 1; }
  int time_extent() const { return static_cast<int>(samples.rows()) - 1; }
  bool covers(int lo, int hi) const { return lo >= site_lo && hi <= site_hi; }

  Scalar at(int site, int time = 0) const { return samples(time, site - site_lo); }
  auto row(int time) const { return samples.row(time); }
};

FieldWindow<Symbol> gen_static_wall(const StaticWallSpec& spec, int site_lo, int site_hi,
                                    std::uint64_t seed);

/// Stationary N(0, 1) row for an AR(1) field.
Vector<double> gen_ar1_row(int width, Engine& engine);

/// t-step BSC composition: 0.5 (1 - (1 - 2 p_i)^t).
double bsc_equiv(double p_i, int t);

Vector<Symbol> evolve_bsc(const Vector<Symbol>& row, double p_i, Engine& engine);
Vector<Symbol> evolve_bsc(const Vector<Symbol>& row, double p_i, std::uint64_t seed);

Vector<double> evolve_ar1(const Vector<double>& row, const Ar1FieldSpec& spec, Engine& engine);
Vector<double> evolve_ar1(const Vector<double>& row, const Ar1FieldSpec& spec, std::uint64_t seed);

/// Dense evolution of a field over [site_lo, site_hi] for times 0..t.
FieldWindow<Symbol> gen_bsc_field(const BscFieldSpec& spec, int site_lo, int site_hi, int t,
                                  std::uint64_t seed);
FieldWindow<double> gen_ar1_field(const Ar1FieldSpec& spec, int site_lo, int site_hi, int t,
                                  std::uint64_t seed);

/// Per-site lazy evolution. Each site keeps the time and value of its last
/// draw and is advanced with the composed transition only when read, which
/// is distributionally identical to evolving every row densely.
template <typename Scalar>
class LazyField {
 public:
  LazyField(FieldWindow<Scalar> initial, RealitySpec dynamics, std::uint64_t seed);

  /// Value at (site, time); times for a given site must be nondecreasing.
  Scalar read(int site, int time);

 private:
  FieldWindow<Scalar> initial_;
  RealitySpec dynamics_;
  Engine engine_;
  std::vector<int> last_time_;
  std::vector<Scalar> last_value_;
};

extern template class LazyField<Symbol>;
extern template class LazyField<double>;

}  // namespace plenoptic
