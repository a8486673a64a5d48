#include "lqw/walk.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "lqw/error.hpp"

namespace lqw {

namespace {

double squared_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

void require_normalized(std::span<const Complex> v) {
  const double s = squared_norm(v);
  if (std::abs(s - 1.0) > kNormTolerance) {
    throw NotNormalized("initial coin state is not normalized: squared norm = " +
                        std::to_string(s));
  }
}

}  // namespace

WalkParams::WalkParams(int tau) : tau_(tau) {
  if (tau < 1) {
    throw InvalidParams("laziness factor tau must be > 0 (tau >= 1), got " + std::to_string(tau));
  }
}

InitialCondition InitialCondition::standard(Complex alpha, Complex beta) {
  const Complex v[2] = {alpha, beta};
  require_normalized(v);
  return InitialCondition(Standard{alpha, beta});
}

InitialCondition InitialCondition::general(CoinState coin) {
  if (coin.size() < 3) {
    throw InvalidInput("general coin vector needs at least 3 components (tau >= 1)");
  }
  require_normalized(coin);
  return InitialCondition(General{std::move(coin)});
}

bool InitialCondition::is_standard() const noexcept {
  return std::holds_alternative<Standard>(kind_);
}

Complex InitialCondition::alpha() const {
  if (const auto* s = std::get_if<Standard>(&kind_)) return s->alpha;
  throw UnsupportedInitialState("alpha is only defined for the standard initial state");
}

Complex InitialCondition::beta() const {
  if (const auto* s = std::get_if<Standard>(&kind_)) return s->beta;
  throw UnsupportedInitialState("beta is only defined for the standard initial state");
}

CoinState InitialCondition::coin_vector(const WalkParams& params) const {
  const auto d = static_cast<std::size_t>(params.delta());
  if (const auto* s = std::get_if<Standard>(&kind_)) {
    CoinState c(d, Complex{});
    c[0] = s->alpha;
    c[1] = s->beta;
    return c;
  }
  const auto& g = std::get<General>(kind_);
  if (g.coin.size() != d) {
    throw InvalidInput("general coin vector has " + std::to_string(g.coin.size()) +
                       " components but delta = " + std::to_string(d));
  }
  return g.coin;
}

WalkerState::WalkerState(int t, int delta, int origin_offset, std::vector<Complex> amplitudes)
    : t_(t), delta_(delta), offset_(origin_offset), amps_(std::move(amplitudes)) {
  if (t < 0 || delta < 3 || origin_offset < t) {
    throw InvalidInput("inconsistent walker state shape");
  }
  const auto expected = static_cast<std::size_t>(2 * origin_offset + 1) * static_cast<std::size_t>(delta);
  if (amps_.size() != expected) {
    throw InvalidInput("walker state buffer has " + std::to_string(amps_.size()) +
                       " amplitudes, expected " + std::to_string(expected));
  }
}

std::span<const Complex> WalkerState::site(int n) const {
  if (n < -offset_ || n > offset_) return {};
  const auto idx = static_cast<std::size_t>(n + offset_) * static_cast<std::size_t>(delta_);
  return std::span<const Complex>(amps_).subspan(idx, static_cast<std::size_t>(delta_));
}

Complex WalkerState::amplitude(int n, int component) const {
  const auto s = site(n);
  if (s.empty() || component < 0 || component >= delta_) return {};
  return s[static_cast<std::size_t>(component)];
}

double WalkerState::norm_squared() const { return squared_norm(amps_); }

double PositionDistribution::probability(int n) const noexcept {
  if (n < min_position_ || n > max_position()) return 0.0;
  return probs_[static_cast<std::size_t>(n - min_position_)];
}

double PositionDistribution::total() const {
  double s = 0.0;
  for (double p : probs_) s += p;
  return s;
}

double PositionDistribution::moment(int r) const {
  double s = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double n = static_cast<double>(min_position_ + static_cast<int>(i));
    s += std::pow(n, r) * probs_[i];
  }
  return s;
}

double PositionDistribution::variance() const {
  const double m1 = moment(1);
  return moment(2) - m1 * m1;
}

Eigen::MatrixXd grover_coin(const WalkParams& params) {
  const int d = params.delta();
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(d, d, 2.0 / d);
  g.diagonal().setConstant(-static_cast<double>(params.tau()) / d);
  return g;
}

// Double-buffered stepping kernel. G v = (2/delta) * sum(v) - v, so the coin
// costs O(delta) per site instead of a dense matrix product.
class Stepper {
 public:
  Stepper(const WalkerState& start, int capacity)
      : cur_(start.t_, start.delta_, capacity, buffer_for(start, capacity)),
        next_(start.t_, start.delta_, capacity,
              std::vector<Complex>(cur_.amps_.size(), Complex{})),
        sums_(static_cast<std::size_t>(2 * capacity + 1), Complex{}) {}

  const WalkerState& state() const noexcept { return cur_; }

  void step() {
    const int d = cur_.delta_;
    const int off = cur_.offset_;
    const int t = cur_.t_;
    const double scale = 2.0 / d;
    const auto ud = static_cast<std::size_t>(d);

    // Coin-rotated vector components are c_j(n) = scale * sum(n) - psi_j(n).
    for (int n = -t; n <= t; ++n) {
      const auto base = static_cast<std::size_t>(n + off) * ud;
      Complex s{};
      for (std::size_t j = 0; j < ud; ++j) s += cur_.amps_[base + j];
      sums_[static_cast<std::size_t>(n + off)] = scale * s;
    }

    auto coin_component = [&](int n, std::size_t j) -> Complex {
      if (n < -t || n > t) return {};
      const auto i = static_cast<std::size_t>(n + off);
      return sums_[i] - cur_.amps_[i * ud + j];
    };

    for (int n = -t - 1; n <= t + 1; ++n) {
      const auto base = static_cast<std::size_t>(n + off) * ud;
      next_.amps_[base + 0] = coin_component(n + 1, 0);
      next_.amps_[base + 1] = coin_component(n - 1, 1);
      for (std::size_t j = 2; j < ud; ++j) next_.amps_[base + j] = coin_component(n, j);
    }
    next_.t_ = t + 1;
    std::swap(cur_, next_);
  }

  WalkerState release() && { return std::move(cur_); }

 private:
  static std::vector<Complex> buffer_for(const WalkerState& s, int capacity) {
    if (capacity == s.offset_) return s.amps_;
    std::vector<Complex> out(static_cast<std::size_t>(2 * capacity + 1) * static_cast<std::size_t>(s.delta_));
    const auto shift = static_cast<std::size_t>(capacity - s.offset_) * static_cast<std::size_t>(s.delta_);
    std::copy(s.amps_.begin(), s.amps_.end(), out.begin() + static_cast<std::ptrdiff_t>(shift));
    return out;
  }

  WalkerState cur_;
  WalkerState next_;
  std::vector<Complex> sums_;
};

WalkerState initial_state(const InitialCondition& init, const WalkParams& params) {
  CoinState coin = init.coin_vector(params);
  return WalkerState(0, params.delta(), 0, std::move(coin));
}

WalkerState apply_step(const WalkerState& state, const WalkParams& params) {
  if (state.delta() != params.delta()) {
    throw InvalidInput("walker state delta does not match walk parameters");
  }
  Stepper s(state, std::max(state.origin_offset(), state.time() + 1));
  s.step();
  return std::move(s).release();
}

WalkerState evolve(const InitialCondition& init, const WalkParams& params, int steps) {
  if (steps < 0) throw InvalidInput("number of steps must be nonnegative");
  Stepper s(initial_state(init, params), steps);
  for (int t = 0; t < steps; ++t) s.step();
  return std::move(s).release();
}

void evolve_each(const InitialCondition& init, const WalkParams& params, int steps,
                 const std::function<void(const WalkerState&)>& visit) {
  if (steps < 0) throw InvalidInput("number of steps must be nonnegative");
  Stepper s(initial_state(init, params), steps);
  visit(s.state());
  for (int t = 0; t < steps; ++t) {
    s.step();
    visit(s.state());
  }
}

PositionDistribution position_distribution(const WalkerState& state) {
  const int t = state.time();
  std::vector<double> p(static_cast<std::size_t>(2 * t + 1));
  for (int n = -t; n <= t; ++n) {
    double s = 0.0;
    for (const auto& z : state.site(n)) s += std::norm(z);
    p[static_cast<std::size_t>(n + t)] = s;
  }
  return PositionDistribution(-t, std::move(p));
}

}  // namespace lqw
