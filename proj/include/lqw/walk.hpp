#pragma once

// Position-space lackadaisical quantum walk on the integer line.
//
// Each vertex carries `tau` self-loops, so the coin space has dimension
// delta = tau + 2 with basis order (move-left, move-right, loop_1 ... loop_tau).
// One step applies the Grover coin at every site and then the conditional
// shift: component 0 moves to n-1, component 1 moves to n+1, the remaining
// components stay put.

#include <complex>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace lqw {

using Complex = std::complex<double>;

/// Per-site coin amplitudes, `delta` entries in basis order (left, right, loops...).
using CoinState = std::vector<Complex>;

inline constexpr double kNormTolerance = 1e-12;

class WalkParams {
 public:
  /// Throws InvalidParams unless tau >= 1.
  explicit WalkParams(int tau);

  int tau() const noexcept { return tau_; }
  int delta() const noexcept { return tau_ + 2; }

  friend bool operator==(const WalkParams&, const WalkParams&) = default;

 private:
  int tau_;
};

class InitialCondition {
 public:
  /// alpha|left> + beta|right> at the origin. Throws NotNormalized.
  static InitialCondition standard(Complex alpha, Complex beta);
  /// Arbitrary coin vector at the origin. Throws NotNormalized.
  static InitialCondition general(CoinState coin);

  bool is_standard() const noexcept;
  /// Only for the standard kind; throws UnsupportedInitialState otherwise.
  Complex alpha() const;
  Complex beta() const;

  /// The coin vector placed at the origin, padded to params.delta().
  /// Throws InvalidInput if a general vector has the wrong length.
  CoinState coin_vector(const WalkParams& params) const;

 private:
  struct Standard {
    Complex alpha;
    Complex beta;
  };
  struct General {
    CoinState coin;
  };
  explicit InitialCondition(std::variant<Standard, General> kind) : kind_(std::move(kind)) {}

  std::variant<Standard, General> kind_;
};

/// Full wavefunction at time t. Amplitudes are stored site-major over the
/// positions [-origin_offset, origin_offset]; origin_offset >= t and every
/// site with |n| > t is zero.
class WalkerState {
 public:
  /// Throws InvalidInput when the buffer size does not match
  /// (2 * origin_offset + 1) * delta or origin_offset < t.
  WalkerState(int t, int delta, int origin_offset, std::vector<Complex> amplitudes);

  int time() const noexcept { return t_; }
  int delta() const noexcept { return delta_; }
  int origin_offset() const noexcept { return offset_; }

  /// Coin amplitudes at site n; empty span outside the stored range.
  std::span<const Complex> site(int n) const;
  /// Zero outside the stored range. component is 0-based.
  Complex amplitude(int n, int component) const;
  std::span<const Complex> amplitudes() const noexcept { return amps_; }

  double norm_squared() const;

 private:
  friend class Stepper;

  int t_;
  int delta_;
  int offset_;
  std::vector<Complex> amps_;
};

/// P(X_t = n) over [-t, t].
class PositionDistribution {
 public:
  PositionDistribution(int min_position, std::vector<double> probabilities)
      : min_position_(min_position), probs_(std::move(probabilities)) {}

  int min_position() const noexcept { return min_position_; }
  int max_position() const noexcept { return min_position_ + static_cast<int>(probs_.size()) - 1; }
  /// Zero outside the support.
  double probability(int n) const noexcept;
  std::span<const double> probabilities() const noexcept { return probs_; }

  double total() const;
  /// E[X^r], r = 1 or 2 typically.
  double moment(int r) const;
  double variance() const;

 private:
  int min_position_;
  std::vector<double> probs_;
};

/// Grover coin: -tau/delta on the diagonal, 2/delta elsewhere.
Eigen::MatrixXd grover_coin(const WalkParams& params);

WalkerState initial_state(const InitialCondition& init, const WalkParams& params);

/// One application of U = S (I ⊗ G). The result stores exactly [-(t+1), t+1]
/// unless the input already had room for the next step.
WalkerState apply_step(const WalkerState& state, const WalkParams& params);

WalkerState evolve(const InitialCondition& init, const WalkParams& params, int steps);

/// Calls visit(state) for t = 0, 1, ..., steps on a single pre-allocated
/// double buffer. The reference is only valid during the callback.
void evolve_each(const InitialCondition& init, const WalkParams& params, int steps,
                 const std::function<void(const WalkerState&)>& visit);

PositionDistribution position_distribution(const WalkerState& state);

}  // namespace lqw
