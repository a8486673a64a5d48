#include "lqw/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lqw/error.hpp"
#include "lqw/spectral.hpp"

namespace lqw {

using std::numbers::pi;

ThetaConstants theta_constants(const WalkParams& params) {
  const double tau = params.tau();
  const double s = std::sqrt(2.0 * tau + 4.0);
  return ThetaConstants{
      1.0 / tau - s / (tau * (tau + 2.0)),
      s / (2.0 * tau + 4.0),
      2.0 / tau - (tau + 4.0) * s / (2.0 * tau * (tau + 2.0)),
  };
}

Eigen::MatrixXd f3_matrix(const WalkParams& params) {
  const auto th = theta_constants(params);
  const int d = params.delta();
  Eigen::MatrixXd f = Eigen::MatrixXd::Constant(d, d, th.theta1);
  f(0, 0) = th.theta2;
  f(1, 1) = th.theta2;
  f(0, 1) = th.theta3;
  f(1, 0) = th.theta3;
  return f;
}

Eigen::MatrixXcd pi_projector(const WalkParams& params) {
  const Eigen::MatrixXcd basis = pi_eigenspace(params);
  return basis * basis.adjoint();
}

Eigen::VectorXcd limiting_origin_state(const InitialCondition& init, const WalkParams& params,
                                       Parity parity) {
  const CoinState coin = init.coin_vector(params);
  const Eigen::VectorXcd c = Eigen::Map<const Eigen::VectorXcd>(coin.data(), params.delta());
  const double sign = parity == Parity::Even ? 1.0 : -1.0;
  const Eigen::MatrixXcd map = f3_matrix(params).cast<Complex>() + sign * pi_projector(params);
  return map * c;
}

double localization_probability_origin(const InitialCondition& init, const WalkParams& params,
                                       Parity parity) {
  return limiting_origin_state(init, params, parity).squaredNorm();
}

double origin_localization_limit(const WalkParams& params) {
  const double tau = params.tau();
  return 2.0 * (tau + 4.0 - 2.0 * std::sqrt(2.0 * tau + 4.0)) / (tau * tau);
}

PeakVelocities peak_velocities(const WalkParams& params) {
  const double tau = params.tau();
  const double v = std::sqrt(tau / (tau + 2.0));
  return PeakVelocities{-v, v};
}

double phase_derivative(const WalkParams& params, double k, int branch) {
  if (branch != 1 && branch != 2) {
    throw InvalidInput("phase branch must be 1 or 2, got " + std::to_string(branch));
  }
  if (!(k > -pi && k <= pi)) throw DomainError("momentum k must lie in (-pi, pi]");
  if (k == 0.0) {
    throw DomainError("phase derivative is 0/0 at k = 0; use peak_velocities for the limit");
  }
  const double tau = params.tau();
  const double c = std::cos(k);
  const double sh = std::sin(k / 2.0);
  // 1 - cos k written as 2 sin^2(k/2) keeps precision as k -> 0
  const double d = -tau * std::sin(k) / std::sqrt(tau * 2.0 * sh * sh * (tau * c + tau + 4.0));
  return branch == 1 ? d : -d;
}

WeakLimitModel::WeakLimitModel(const InitialCondition& init, const WalkParams& params,
                               int quadrature_nodes)
    : params_(params), nodes_(quadrature_nodes) {
  if (!init.is_standard()) {
    throw UnsupportedInitialState(
        "the weak limit is only available for initial coins in span{|left>, |right>}");
  }
  if (quadrature_nodes < 2) throw InvalidInput("quadrature needs at least 2 nodes");
  alpha_ = init.alpha();
  beta_ = init.beta();
  cross_ = std::real(std::conj(alpha_) * beta_);
  drift_ = std::norm(beta_) - std::norm(alpha_);
  const double tau = params.tau();
  omega_ = std::sqrt(tau / (tau + 2.0));
  const auto th = theta_constants(params);
  p_hat_ = th.theta2 + 2.0 * th.theta3 * cross_;
}

double WeakLimitModel::numerator(double x) const {
  const double tau = params_.tau();
  return 1.0 + 2.0 * cross_ + 2.0 * drift_ * x + (1.0 - 2.0 * cross_ * (tau + 4.0) / tau) * x * x;
}

double WeakLimitModel::density(double x) const {
  if (!(std::abs(x) < omega_)) {
    throw DomainError("weak-limit density is supported on |x| < " + std::to_string(omega_));
  }
  const double tau = params_.tau();
  return numerator(x) / (pi * (1.0 - x * x) * std::sqrt(2.0 * tau - 2.0 * (tau + 2.0) * x * x));
}

// With x = omega sin(u), sqrt(2 tau - 2 (tau + 2) x^2) = sqrt(2 tau) cos(u), which
// cancels the Jacobian omega cos(u): the integrand in u is smooth on [-pi/2, pi/2].
double WeakLimitModel::integrate_substituted(double u_lo, double u_hi, int r, int nodes) const {
  const double scale = omega_ / (pi * std::sqrt(2.0 * params_.tau()));
  return integrate(
      [&](double u) {
        const double x = omega_ * std::sin(u);
        return std::pow(x, r) * numerator(x) * scale / (1.0 - x * x);
      },
      u_lo, u_hi, nodes);
}

double WeakLimitModel::continuous_mass(double a, double b) const {
  a = std::clamp(a, -omega_, omega_);
  b = std::clamp(b, -omega_, omega_);
  if (b <= a) return 0.0;
  return integrate_substituted(std::asin(a / omega_), std::asin(b / omega_), 0, nodes_);
}

double WeakLimitModel::cdf(double x) const {
  return continuous_mass(-omega_, x) + (x >= 0.0 ? p_hat_ : 0.0);
}

double WeakLimitModel::moment(int r) const {
  if (r < 0) throw InvalidInput("moment order must be nonnegative");
  const double full = integrate_substituted(-pi / 2.0, pi / 2.0, r, nodes_);
  const double coarse = integrate_substituted(-pi / 2.0, pi / 2.0, r, std::max(1, nodes_ / 2));
  if (std::abs(full - coarse) > 1e-8 * std::max(1.0, std::abs(full))) {
    throw QuadratureError("moment quadrature did not converge: " + std::to_string(nodes_) +
                          " vs " + std::to_string(nodes_ / 2) + " nodes differ by " +
                          std::to_string(std::abs(full - coarse)));
  }
  return r == 0 ? p_hat_ + full : full;
}

double WeakLimitModel::spread_coefficient() const {
  const double tau = params_.tau();
  const double s = std::sqrt(2.0 * tau + 4.0);
  const double q = (2.0 * tau + 4.0) * (2.0 * tau + 4.0);
  const double drift_term = (1.0 - s / (tau + 2.0)) * drift_;
  return 1.0 - (5.0 * tau + 8.0) * s / q +
         (2.0 * (tau * tau + 12.0 * tau + 16.0) * s / (tau * q) - 4.0 / tau) * cross_ -
         drift_term * drift_term;
}

double WeakLimitModel::spread_coefficient_by_moments() const {
  const double m1 = moment(1);
  return moment(2) - m1 * m1;
}

double weak_limit_density(const InitialCondition& init, const WalkParams& params, double x) {
  return WeakLimitModel(init, params).density(x);
}

double total_localization(const InitialCondition& init, const WalkParams& params) {
  return WeakLimitModel(init, params).p_hat();
}

double limit_moment(const InitialCondition& init, const WalkParams& params, int r,
                    int quadrature_nodes) {
  return WeakLimitModel(init, params, quadrature_nodes).moment(r);
}

double spread_coefficient(const InitialCondition& init, const WalkParams& params) {
  return WeakLimitModel(init, params).spread_coefficient();
}

}  // namespace lqw
