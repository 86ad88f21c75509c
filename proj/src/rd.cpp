#include "plenoptic/rd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "plenoptic/entropy.hpp"

namespace plenoptic {

void RDCurve::sort_by_distortion() {
  std::stable_sort(points.begin(), points.end(),
                   [](const RDPoint& a, const RDPoint& b) { return a.distortion < b.distortion; });
}

bool RDCurve::rate_nonincreasing(double tol) const {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].rate > points[i - 1].rate + tol) return false;
  return true;
}

double rx_bernoulli(double p, double d) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("rx_bernoulli: p outside [0, 1]");
  if (!(d >= 0.0)) throw std::domain_error("rx_bernoulli: negative distortion");
  if (d >= std::min(p, 1.0 - p)) return 0.0;
  return binary_entropy(p) - binary_entropy(d);
}

Eigen::MatrixXd hamming_distortion(int alphabet_size) {
  return Eigen::MatrixXd::Ones(alphabet_size, alphabet_size) - Eigen::MatrixXd::Identity(alphabet_size, alphabet_size);
}

namespace {

void check_problem(const Eigen::VectorXd& pmf, const Eigen::MatrixXd& dist) {
  if (pmf.size() == 0 || dist.rows() != pmf.size() || dist.cols() == 0)
    throw std::invalid_argument("blahut_arimoto: distortion matrix must be |X| x |Y|");
  if ((pmf.array() < 0.0).any() || std::abs(pmf.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("blahut_arimoto: invalid pmf");
  if ((dist.array() < 0.0).any()) throw std::invalid_argument("blahut_arimoto: negative distortion");
}

}  // namespace

BlahutArimotoResult blahut_arimoto_slope(const Eigen::VectorXd& pmf, const Eigen::MatrixXd& distortion, double beta,
                                         const BlahutArimotoOptions& opt) {
  check_problem(pmf, distortion);
  if (!(beta >= 0.0)) throw std::invalid_argument("blahut_arimoto: slope must be nonnegative");
  const Eigen::Index nx = pmf.size(), ny = distortion.cols();
  const Eigen::MatrixXd A = (-beta * distortion).array().exp().matrix();
  Eigen::VectorXd q = Eigen::VectorXd::Constant(ny, 1.0 / static_cast<double>(ny));
  const double tol_nats = opt.rate_tolerance * std::numbers::ln2;

  BlahutArimotoResult res;
  res.slope = beta;
  Eigen::VectorXd z(nx), c(ny);
  for (int it = 1;; ++it) {
    z = A * q;  // z_x = sum_y q_y A_xy
    double g = 0.0;
    for (Eigen::Index x = 0; x < nx; ++x)
      if (pmf(x) > 0.0) g -= pmf(x) * std::log(z(x));
    res.functional.push_back(g);
    c.setZero();
    for (Eigen::Index x = 0; x < nx; ++x)
      if (pmf(x) > 0.0) c += (pmf(x) / z(x)) * A.row(x).transpose();

    // Certified bracket on R at the distortion of the current test channel.
    double d = 0.0, mi = 0.0;
    for (Eigen::Index x = 0; x < nx; ++x) {
      if (pmf(x) == 0.0) continue;
      for (Eigen::Index y = 0; y < ny; ++y) {
        const double w = q(y) * A(x, y) / z(x);
        if (w <= 0.0) continue;
        d += pmf(x) * w * distortion(x, y);
        mi += pmf(x) * w * std::log(A(x, y) / z(x) / c(y));
      }
    }
    // mi above is measured against the updated marginal q c, which is the
    // channel's true output distribution.
    double max_log_c = -std::numeric_limits<double>::infinity();
    for (Eigen::Index y = 0; y < ny; ++y)
      max_log_c = std::max(max_log_c, std::log(c(y)));
    const double lower = -beta * d + g - max_log_c;
    res.point.distortion = d;
    res.rate_upper = std::max(0.0, mi) / std::numbers::ln2;
    res.rate_lower = std::max(0.0, lower) / std::numbers::ln2;
    res.iterations = it;
    if (mi - lower < tol_nats) break;
    if (it >= opt.max_iterations) {
      std::ostringstream msg;
      msg << "blahut_arimoto did not converge: beta=" << beta << " gap=" << (mi - lower) / std::numbers::ln2
          << " bits after " << it << " iterations";
      throw std::runtime_error(msg.str());
    }
    q = q.cwiseProduct(c);
  }
  res.point.rate = res.rate_upper;
  res.point.valid = true;
  res.point.kind = RDKind::analytic_bound;
  return res;
}

BlahutArimotoResult blahut_arimoto(const Eigen::VectorXd& pmf, const Eigen::MatrixXd& distortion, double target_d,
                                   const BlahutArimotoOptions& opt) {
  check_problem(pmf, distortion);
  if (!(target_d >= 0.0)) throw std::invalid_argument("blahut_arimoto: negative target distortion");
  // Zero rate is reachable at the best single reproduction letter.
  const double d_max = (pmf.transpose() * distortion).minCoeff();
  if (target_d >= d_max) {
    BlahutArimotoResult r;
    r.point = {d_max, 0.0, true, RDKind::analytic_bound};
    return r;
  }
  const double d_min = pmf.dot(distortion.rowwise().minCoeff());
  if (target_d <= d_min) return blahut_arimoto_slope(pmf, distortion, opt.max_slope, opt);

  double lo = std::log(1e-6), hi = std::log(opt.max_slope);
  BlahutArimotoResult best = blahut_arimoto_slope(pmf, distortion, std::exp(hi), opt);
  if (best.point.distortion >= target_d) return best;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    auto r = blahut_arimoto_slope(pmf, distortion, std::exp(mid), opt);
    const double err = r.point.distortion - target_d;
    if (std::abs(err) < std::abs(best.point.distortion - target_d)) best = r;
    if (std::abs(err) < opt.distortion_tolerance) break;
    if (err > 0.0) lo = mid; else hi = mid;
    if (hi - lo < 1e-15) break;
  }
  return best;
}

double static_lossy_upper(const WalkParams& walk, double rx_at_d) {
  if (!(rx_at_d >= 0.0)) throw std::invalid_argument("static_lossy_upper: negative rate");
  return binary_entropy(walk.p_w) + (1.0 - 2.0 * walk.p_w) * rx_at_d;
}

SlbValidity slb_validity(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("slb_validity: rho must lie in [0, 1)");
  SlbValidity v;
  v.d_max = (1.0 - rho) / (1.0 + rho);
  v.snr_threshold_db = 10.0 * std::log10(1.0 / v.d_max);
  return v;
}

RDPoint slb_ar1_upper(const WalkParams& walk, const Ar1FieldSpec& ar1, int L, double d) {
  if (!(d > 0.0)) throw std::domain_error("slb_ar1_upper: distortion must be positive");
  DynamicRateInputs in{walk, ar1, L, kDefaultSeriesTolerance};
  const double h = dynamic_cond_rate_ar1(in).value;
  const double frame = binary_entropy(walk.p_w) + h - L * gaussian_diff_entropy(d);
  RDPoint pt;
  pt.distortion = d;
  pt.rate = std::max(0.0, frame / L);
  pt.valid = d < slb_validity(ar1.rho).d_max;
  pt.kind = RDKind::analytic_bound;
  return pt;
}

double toeplitz_min_eig(double rho, int t) {
  if (t < 1) throw std::invalid_argument("toeplitz_min_eig: t must be positive");
  if (t > kMaxDenseToeplitz) throw std::length_error("toeplitz_min_eig: t exceeds the dense solver cap");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ar1_toeplitz(rho, t), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double mixture_cond_rd(const std::vector<GaussianComponent>& components, double d) {
  if (components.empty()) throw std::invalid_argument("mixture_cond_rd: no components");
  if (!(d > 0.0)) throw std::domain_error("mixture_cond_rd: distortion must be positive");
  double total_weight = 0.0, rate = 0.0;
  for (const auto& c : components) {
    if (c.covariance.rows() == 0 || c.covariance.rows() != c.covariance.cols())
      throw std::invalid_argument("mixture_cond_rd: covariance must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c.covariance, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd lam = solver.eigenvalues();
    if (d > lam.minCoeff() * (1.0 + 1e-12))
      throw std::domain_error("mixture_cond_rd: distortion exceeds the smallest eigenvalue");
    double r = 0.0;
    for (Eigen::Index p = 0; p < lam.size(); ++p) r += 0.5 * std::log2(std::max(lam(p), d) / d);
    rate += c.weight * r / static_cast<double>(lam.size());
    total_weight += c.weight;
  }
  if (std::abs(total_weight - 1.0) > 1e-9) throw std::invalid_argument("mixture_cond_rd: weights must sum to one");
  return rate;
}

}  // namespace plenoptic
