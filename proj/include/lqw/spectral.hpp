#pragma once

// Momentum-space picture of the walk. With psi~(k) = sum_n e^{-ikn} psi(n),
// one step becomes psi~(t+1, k) = U_k psi~(t, k) where U_k is the Grover coin
// with its first row scaled by e^{ik} and its second row by e^{-ik}.

#include <vector>

#include <Eigen/Dense>

#include "lqw/walk.hpp"

namespace lqw {

struct MomentumPoint {
  double k;
  Complex kappa;

  /// Throws DomainError unless k is in (-pi, pi].
  static MomentumPoint at(double k);
};

/// Closed-form eigen-decomposition of U_k.
///
/// Columns of `eigenvectors` are ordered as the phases in `omegas`:
/// theta, -theta, 0, then tau-1 copies of pi. The first three columns are the
/// normalized closed-form vectors; the remaining ones span the k-independent
/// pi eigenspace (orthonormalized).
struct EigenSystem {
  double k;
  double theta;
  std::vector<double> omegas;
  Eigen::MatrixXcd eigenvectors;
  /// N_j, the squared scale applied to the unnormalized closed-form pattern
  /// (entries 1/(1+e^{i(omega-k)}), 1/(1+e^{i(omega+k)}), 1/(1+e^{i omega})).
  /// The omega = 0 pattern is taken doubled, so its loop entries are 1.
  /// For the pi eigenspace this is the factor applied after orthogonalization.
  std::vector<double> normalizations;
};

Eigen::MatrixXcd momentum_operator(const WalkParams& params, double k);

/// theta in [0, pi] with cos(theta) = -(tau cos k + 2)/(tau + 2).
double eigen_angle(const WalkParams& params, double k);

/// Throws DegenerateMomentum at k = 0, where theta = pi merges with the pi
/// eigenspace and the closed-form denominators vanish.
EigenSystem eigen_system(const WalkParams& params, double k);

/// Orthonormal basis (columns) of the pi eigenspace shared by every U_k.
/// Built from the vectors (e_j - e_3)/sqrt(2), j >= 4, by Gram-Schmidt.
/// Has tau - 1 columns (zero columns for tau = 1).
Eigen::MatrixXcd pi_eigenspace(const WalkParams& params);

/// Smallest power of two >= 2t + 2.
int default_grid_size(int t);

/// Fourier-grid propagation: psi~(t, k_m) = U_{k_m}^t psi~(0, k_m) on
/// k_m = -pi + 2 pi m / M, followed by the inverse transform on [-t, t].
/// Exact up to roundoff because the support has 2t + 1 sites.
/// Throws GridTooSmall if grid_size < 2t + 1.
WalkerState propagate_fourier(const InitialCondition& init, const WalkParams& params, int t,
                              int grid_size);

/// Integral over k of |lambda_3(k)><lambda_3(k)| dk / 2pi, computed from the
/// eigen_system vectors with the periodic trapezoid rule on `points` nodes
/// offset by half a spacing. `points` must be even so that k = 0 is never
/// sampled.
Eigen::MatrixXcd zero_phase_projector_integral(const WalkParams& params, int points);

}  // namespace lqw
