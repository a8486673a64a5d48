#pragma once

// Closed-form long-time behaviour of the walk: the limiting amplitude at the
// origin, peak velocities of the travelling fronts, and the weak limit of
// X_t / t (a point mass at 0 plus a continuous density on (-Omega, Omega)).

#include <Eigen/Dense>

#include "lqw/quadrature.hpp"
#include "lqw/walk.hpp"

namespace lqw {

/// Momentum averages of the normalization-weighted omega = 0 eigenvector
/// entries; they are the distinct entries of the F3 matrix.
struct ThetaConstants {
  double theta1;  // loop-loop, loop-left, loop-right entries
  double theta2;  // left-left, right-right entries
  double theta3;  // left-right entries
};

ThetaConstants theta_constants(const WalkParams& params);

/// Average of the omega = 0 spectral projector over the Brillouin zone.
Eigen::MatrixXd f3_matrix(const WalkParams& params);

/// Orthogonal projector onto the pi eigenspace (sum of the F_j, j >= 4).
/// It does not depend on k.
Eigen::MatrixXcd pi_projector(const WalkParams& params);

/// P(X_t = 0) keeps oscillating with (-1)^t for inits that touch the loop
/// components, so the limit is taken separately along even and odd t.
enum class Parity { Even, Odd };

/// lim psi(t, 0) along the given parity: (F3 ± sum_{j>=4} F_j) times the coin vector.
Eigen::VectorXcd limiting_origin_state(const InitialCondition& init, const WalkParams& params,
                                       Parity parity);

double localization_probability_origin(const InitialCondition& init, const WalkParams& params,
                                       Parity parity = Parity::Even);

/// 2 (tau + 4 - 2 sqrt(2 tau + 4)) / tau^2, the origin limit for any
/// standard (left/right) initial coin.
double origin_localization_limit(const WalkParams& params);

struct PeakVelocities {
  double left;
  double right;
};

/// k -> 0 limits of d(omega_1)/dk and d(omega_2)/dk: -/+ sqrt(tau / (tau + 2)).
PeakVelocities peak_velocities(const WalkParams& params);

/// d(omega_branch)/dk with omega_1 = theta, omega_2 = -theta.
/// Branch 1 is -tau sin k / sqrt(tau (1 - cos k)(tau cos k + tau + 4)),
/// branch 2 its negative. Throws DomainError at k = 0 or outside (-pi, pi],
/// InvalidInput for a branch other than 1 or 2.
double phase_derivative(const WalkParams& params, double k, int branch);

/// Weak limit of X_t / t for a standard initial coin.
class WeakLimitModel {
 public:
  /// Throws UnsupportedInitialState for general initial coins.
  WeakLimitModel(const InitialCondition& init, const WalkParams& params,
                 int quadrature_nodes = kDefaultQuadratureNodes);

  const WalkParams& params() const noexcept { return params_; }
  Complex alpha() const noexcept { return alpha_; }
  Complex beta() const noexcept { return beta_; }

  /// Half-width of the support, sqrt(tau / (tau + 2)).
  double omega() const noexcept { return omega_; }
  /// Mass of the point at zero: theta2 + 2 theta3 Re(conj(alpha) beta).
  double p_hat() const noexcept { return p_hat_; }

  /// f(x); throws DomainError for |x| >= omega.
  double density(double x) const;

  /// Integral of f over [a, b] intersected with (-omega, omega).
  double continuous_mass(double a, double b) const;
  /// Limit CDF P(X/t <= x), including the point mass when x >= 0.
  double cdf(double x) const;

  /// lim E[(X_t / t)^r]. r = 0 gives p_hat plus the total continuous mass;
  /// for r >= 1 the point mass contributes nothing.
  /// Throws QuadratureError if halving the node count moves the result by
  /// more than 1e-8 (relative to max(1, |value|)).
  double moment(int r) const;

  /// Closed-form spread coefficient c with variance ~ c t^2.
  double spread_coefficient() const;
  /// The same coefficient as moment(2) - moment(1)^2.
  double spread_coefficient_by_moments() const;

 private:
  double integrate_substituted(double u_lo, double u_hi, int r, int nodes) const;
  double numerator(double x) const;

  WalkParams params_;
  Complex alpha_;
  Complex beta_;
  double cross_;  // Re(conj(alpha) beta)
  double drift_;  // |beta|^2 - |alpha|^2
  double omega_;
  double p_hat_;
  int nodes_;
};

double weak_limit_density(const InitialCondition& init, const WalkParams& params, double x);
double total_localization(const InitialCondition& init, const WalkParams& params);
double limit_moment(const InitialCondition& init, const WalkParams& params, int r,
                    int quadrature_nodes = kDefaultQuadratureNodes);
double spread_coefficient(const InitialCondition& init, const WalkParams& params);

}  // namespace lqw
