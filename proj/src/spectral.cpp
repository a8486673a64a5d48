#include "lqw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lqw/error.hpp"

namespace lqw {

using std::numbers::pi;

MomentumPoint MomentumPoint::at(double k) {
  if (!(k > -pi && k <= pi)) {
    throw DomainError("momentum k must lie in (-pi, pi], got " + std::to_string(k));
  }
  return MomentumPoint{k, std::polar(1.0, k)};
}

Eigen::MatrixXcd momentum_operator(const WalkParams& params, double k) {
  const auto m = MomentumPoint::at(k);
  Eigen::MatrixXcd u = grover_coin(params).cast<Complex>();
  u.row(0) *= m.kappa;
  u.row(1) /= m.kappa;
  return u;
}

double eigen_angle(const WalkParams& params, double k) {
  const double tau = params.tau();
  const double c = std::cos(k);
  const double cos_theta = -(tau * c + 2.0) / (tau + 2.0);
  const double sh = std::sin(k / 2.0);
  const double sin_theta = std::sqrt(std::max(0.0, tau * 2.0 * sh * sh * (tau + 4.0 + tau * c))) / (tau + 2.0);
  return std::atan2(sin_theta, cos_theta);
}

Eigen::MatrixXcd pi_eigenspace(const WalkParams& params) {
  const int d = params.delta();
  const int count = params.tau() - 1;
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(d, count);
  for (int c = 0; c < count; ++c) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v(2) = -1.0 / std::sqrt(2.0);
    v(3 + c) = 1.0 / std::sqrt(2.0);
    // modified Gram-Schmidt against the columns already accepted
    for (int p = 0; p < c; ++p) v -= basis.col(p).dot(v) * basis.col(p);
    basis.col(c) = v / v.norm();
  }
  return basis;
}

EigenSystem eigen_system(const WalkParams& params, double k) {
  const auto mp = MomentumPoint::at(k);
  if (k == 0.0) {
    throw DegenerateMomentum("eigen_system is undefined at k = 0: theta = pi joins the pi eigenspace");
  }
  const int d = params.delta();
  const double theta = eigen_angle(params, k);

  EigenSystem es;
  es.k = k;
  es.theta = theta;
  es.omegas = {theta, -theta, 0.0};
  es.omegas.resize(static_cast<std::size_t>(d), pi);
  es.eigenvectors = Eigen::MatrixXcd::Zero(d, d);
  es.normalizations.assign(static_cast<std::size_t>(d), 0.5);

  // 1 / (1 + e^{ia}) = e^{-ia/2} / (2 cos(a/2))
  auto entry = [](double a) { return std::polar(1.0, -a / 2.0) / (2.0 * std::cos(a / 2.0)); };

  for (int j = 0; j < 2; ++j) {
    const double w = es.omegas[static_cast<std::size_t>(j)];
    Eigen::VectorXcd v(d);
    v(0) = entry(w - mp.k);
    v(1) = entry(w + mp.k);
    v.tail(d - 2).setConstant(entry(w));
    const double sq = v.squaredNorm();
    es.normalizations[static_cast<std::size_t>(j)] = 1.0 / sq;
    es.eigenvectors.col(j) = v / std::sqrt(sq);
  }

  // omega = 0: the pattern times 2cos(k/2) is (e^{ik/2}, e^{-ik/2}, cos(k/2), ...),
  // which stays finite at k = pi where the unscaled entries blow up.
  {
    const double tau = params.tau();
    const double half = mp.k / 2.0;
    Eigen::VectorXcd v(d);
    v(0) = std::polar(1.0, half);
    v(1) = std::polar(1.0, -half);
    v.tail(d - 2).setConstant(std::cos(half));
    es.eigenvectors.col(2) = v / v.norm();
    es.normalizations[2] = (1.0 + std::cos(mp.k)) / (tau + 4.0 + tau * std::cos(mp.k));
  }

  if (d > 3) {
    const Eigen::MatrixXcd basis = pi_eigenspace(params);
    es.eigenvectors.rightCols(d - 3) = basis;
    // Norm of each raw difference vector after projection, squared and inverted.
    for (int c = 0; c < d - 3; ++c) {
      Eigen::VectorXcd raw = Eigen::VectorXcd::Zero(d);
      raw(2) = -1.0;
      raw(3 + c) = 1.0;
      for (int p = 0; p < c; ++p) raw -= basis.col(p).dot(raw) * basis.col(p);
      es.normalizations[static_cast<std::size_t>(3 + c)] = 1.0 / raw.squaredNorm();
    }
  }
  return es;
}

int default_grid_size(int t) {
  int m = 1;
  while (m < 2 * t + 2) m *= 2;
  return m;
}

WalkerState propagate_fourier(const InitialCondition& init, const WalkParams& params, int t,
                              int grid_size) {
  if (t < 0) throw InvalidInput("number of steps must be nonnegative");
  if (grid_size < 2 * t + 1) {
    throw GridTooSmall("Fourier grid of " + std::to_string(grid_size) + " points cannot resolve " +
                       std::to_string(2 * t + 1) + " sites");
  }
  const int d = params.delta();
  const CoinState coin = init.coin_vector(params);
  // The walker starts at the origin, so psi~(0, k) is the coin vector for all k.
  const Eigen::VectorXcd start = Eigen::Map<const Eigen::VectorXcd>(coin.data(), d);

  std::vector<Complex> out(static_cast<std::size_t>(2 * t + 1) * static_cast<std::size_t>(d));
  const double inv_m = 1.0 / grid_size;
  for (int m = 0; m < grid_size; ++m) {
    double k = -pi + 2.0 * pi * m / grid_size;
    if (k <= -pi) k = pi;  // same point on the circle, kept inside (-pi, pi]
    const Eigen::MatrixXcd u = momentum_operator(params, k);
    Eigen::VectorXcd v = start;
    for (int s = 0; s < t; ++s) v = u * v;
    for (int n = -t; n <= t; ++n) {
      const Complex phase = std::polar(inv_m, k * n);
      const auto base = static_cast<std::size_t>(n + t) * static_cast<std::size_t>(d);
      for (int j = 0; j < d; ++j) out[base + static_cast<std::size_t>(j)] += phase * v(j);
    }
  }
  return WalkerState(t, d, t, std::move(out));
}

Eigen::MatrixXcd zero_phase_projector_integral(const WalkParams& params, int points) {
  if (points < 2 || points % 2 != 0) {
    throw InvalidInput("projector integral needs an even number of points (k = 0 must not be a node)");
  }
  const int d = params.delta();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  for (int m = 0; m < points; ++m) {
    const double k = -pi + 2.0 * pi * (m + 0.5) / points;
    const Eigen::VectorXcd v = eigen_system(params, k).eigenvectors.col(2);
    acc += v * v.adjoint();
  }
  return acc / static_cast<double>(points);
}

}  // namespace lqw
