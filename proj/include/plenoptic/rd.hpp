#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plenoptic/reality.hpp"
#include "plenoptic/walk.hpp"

namespace plenoptic {

enum class RDKind { analytic_bound, operational };

/// Rates are bits per scalar sample throughout; multiply by L for a per-frame view.
struct RDPoint {
  double distortion = 0.0;
  double rate = 0.0;
  bool valid = true;
  RDKind kind = RDKind::analytic_bound;

  double frame_rate(int L) const { return rate * L; }
};

struct RDCurve {
  std::vector<RDPoint> points;
  std::string model;
  std::vector<std::pair<std::string, double>> params;

  void sort_by_distortion();
  bool rate_nonincreasing(double tol = 0.0) const;
};

/// R(D) = H(p) - H(D) for a Bernoulli(p) source under Hamming distortion.
double rx_bernoulli(double p, double d);

struct BlahutArimotoOptions {
  double rate_tolerance = 1e-6;        // bits, certified upper/lower gap
  double distortion_tolerance = 1e-8;  // when solving for a target distortion
  int max_iterations = 200000;
  double max_slope = 50.0;             // nats per unit distortion
};

struct BlahutArimotoResult {
  RDPoint point;
  double slope = 0.0;        // beta in exp(-beta d)
  double rate_lower = 0.0;   // certified lower bound on R(point.distortion), bits
  double rate_upper = 0.0;   // mutual information of the test channel, bits
  int iterations = 0;
  std::vector<double> functional;  // per-iteration objective, nonincreasing
};

/// Blahut-Arimoto at a fixed slope beta >= 0.
BlahutArimotoResult blahut_arimoto_slope(const Eigen::VectorXd& pmf, const Eigen::MatrixXd& distortion, double beta,
                                         const BlahutArimotoOptions& opt = {});

/// Blahut-Arimoto solved for a target distortion by bisection on log beta.
BlahutArimotoResult blahut_arimoto(const Eigen::VectorXd& pmf, const Eigen::MatrixXd& distortion, double target_d,
                                   const BlahutArimotoOptions& opt = {});

Eigen::MatrixXd hamming_distortion(int alphabet_size);

/// H(p_w) + (1 - 2 p_w) R_X(D), bits per frame.
double static_lossy_upper(const WalkParams& walk, double rx_at_d);

struct SlbValidity {
  double d_max = 1.0;
  double snr_threshold_db = 0.0;
};

/// D_max = (1 - rho) / (1 + rho) and the matching SNR for a unit-variance field.
SlbValidity slb_validity(double rho);

/// [H(p_w) + h(V|W) - L phi(D)] / L. Points outside 0 < D < D_max are
/// still computed but flagged invalid.
RDPoint slb_ar1_upper(const WalkParams& walk, const Ar1FieldSpec& ar1, int L, double d);

template <typename Scalar>
Matrix<Scalar> ar1_toeplitz(Scalar rho, int t) {
  Matrix<Scalar> m(t, t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) m(i, j) = std::pow(rho, std::abs(i - j));
  return m;
}

inline constexpr int kMaxDenseToeplitz = 2048;

/// Smallest eigenvalue of the t x t matrix [rho^|i-j|]; t <= kMaxDenseToeplitz.
double toeplitz_min_eig(double rho, int t);

struct GaussianComponent {
  double weight = 1.0;
  Eigen::MatrixXd covariance;
};

/// sum_j mu_j (1/d) sum_p 0.5 log2(lambda_jp / D), valid while D is at most
/// every eigenvalue of every component.
double mixture_cond_rd(const std::vector<GaussianComponent>& components, double d);

}  // namespace plenoptic
