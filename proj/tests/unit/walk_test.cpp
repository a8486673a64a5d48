#include <doctest.h>

#include <cmath>
#include <random>

#include "lqw/error.hpp"
#include "lqw/walk.hpp"

using namespace lqw;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Complex kI{0.0, 1.0};

// Reference stepper: dense coin matrix, then the shift written out site by
// site. Shares nothing with the O(delta) kernel in the library.
std::vector<Eigen::VectorXcd> dense_evolve(const CoinState& coin, int tau, int steps) {
  const int d = tau + 2;
  Eigen::MatrixXcd g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = (r == c ? -tau : 2.0) / d;
  const int width = 2 * steps + 1;
  std::vector<Eigen::VectorXcd> psi(static_cast<std::size_t>(width), Eigen::VectorXcd::Zero(d));
  for (int j = 0; j < d; ++j) psi[static_cast<std::size_t>(steps)](j) = coin[static_cast<std::size_t>(j)];
  for (int t = 0; t < steps; ++t) {
    std::vector<Eigen::VectorXcd> next(static_cast<std::size_t>(width), Eigen::VectorXcd::Zero(d));
    for (int i = 0; i < width; ++i) {
      const Eigen::VectorXcd c = g * psi[static_cast<std::size_t>(i)];
      if (i - 1 >= 0) next[static_cast<std::size_t>(i - 1)](0) += c(0);
      if (i + 1 < width) next[static_cast<std::size_t>(i + 1)](1) += c(1);
      for (int j = 2; j < d; ++j) next[static_cast<std::size_t>(i)](j) += c(j);
    }
    psi = std::move(next);
  }
  return psi;
}

CoinState random_coin(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CoinState c(static_cast<std::size_t>(d));
  double s = 0.0;
  for (auto& z : c) {
    z = {n(rng), n(rng)};
    s += std::norm(z);
  }
  for (auto& z : c) z /= std::sqrt(s);
  return c;
}

}  // namespace

TEST_CASE("walk params reject tau = 0") {
  CHECK_THROWS_AS(WalkParams(0), InvalidParams);
  CHECK_THROWS_AS(WalkParams(-3), InvalidParams);
  const WalkParams p(4);
  CHECK(p.tau() == 4);
  CHECK(p.delta() == 6);
}

TEST_CASE("grover coin entries") {
  const auto g1 = grover_coin(WalkParams(1));
  CHECK(g1.rows() == 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(g1(r, c) == doctest::Approx(r == c ? -1.0 / 3 : 2.0 / 3).epsilon(1e-15));

  const auto g10 = grover_coin(WalkParams(10));
  CHECK(g10(0, 0) == doctest::Approx(-10.0 / 12));
  for (int c = 1; c < 12; ++c) CHECK(g10(0, c) == doctest::Approx(2.0 / 12));
  CHECK(g10.row(0).sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("grover coin is unitary, symmetric and an involution up to tau = 100") {
  for (int tau = 1; tau <= 100; ++tau) {
    const auto g = grover_coin(WalkParams(tau));
    const auto id = Eigen::MatrixXd::Identity(tau + 2, tau + 2);
    CHECK((g * g - id).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((g.transpose() * g - id).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("initial states") {
  SUBCASE("standard alpha = 1") {
    const auto s = initial_state(InitialCondition::standard(1.0, 0.0), WalkParams(1));
    CHECK(s.time() == 0);
    REQUIRE(s.site(0).size() == 3);
    CHECK(s.amplitude(0, 0) == Complex(1.0));
    CHECK(s.amplitude(0, 1) == Complex(0.0));
    CHECK(s.amplitude(0, 2) == Complex(0.0));
  }
  SUBCASE("symmetric coin, tau = 10") {
    const auto s = initial_state(InitialCondition::standard(kInvSqrt2, kI * kInvSqrt2), WalkParams(10));
    CHECK(s.site(0).size() == 12);
    CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("general basis state on a loop") {
    const auto s = initial_state(InitialCondition::general({0, 0, 1, 0, 0}), WalkParams(3));
    CHECK(s.amplitude(0, 2) == Complex(1.0));
    CHECK(s.norm_squared() == 1.0);
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(InitialCondition::standard(0.5, 0.5 * kI), NotNormalized);
    CHECK_THROWS_AS(InitialCondition::general({1.0, 1.0, 0.0}), NotNormalized);
    const auto wrong_length = InitialCondition::general({0, 0, 1, 0});
    CHECK_THROWS_AS(initial_state(wrong_length, WalkParams(1)), InvalidInput);
    CHECK_THROWS_AS(wrong_length.alpha(), UnsupportedInitialState);
  }
}

TEST_CASE("one step by hand, tau = 1") {
  const WalkParams p(1);
  const auto s = apply_step(initial_state(InitialCondition::standard(1.0, 0.0), p), p);
  CHECK(s.time() == 1);
  CHECK(std::abs(s.amplitude(-1, 0) - Complex(-1.0 / 3)) < 1e-15);
  CHECK(std::abs(s.amplitude(-1, 1)) == 0.0);
  CHECK(std::abs(s.amplitude(1, 1) - Complex(2.0 / 3)) < 1e-15);
  CHECK(std::abs(s.amplitude(0, 2) - Complex(2.0 / 3)) < 1e-15);
  CHECK(std::abs(s.amplitude(0, 0)) == 0.0);

  const auto dist = position_distribution(s);
  CHECK(dist.probability(-1) == doctest::Approx(1.0 / 9).epsilon(1e-14));
  CHECK(dist.probability(0) == doctest::Approx(4.0 / 9).epsilon(1e-14));
  CHECK(dist.probability(1) == doctest::Approx(4.0 / 9).epsilon(1e-14));
  CHECK(dist.total() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("one step by hand, tau = 2") {
  const WalkParams p(2);
  const Complex a{0.6, 0.0};
  const Complex b{0.0, 0.8};
  const auto s = apply_step(initial_state(InitialCondition::standard(a, b), p), p);
  CHECK(std::abs(s.amplitude(-1, 0) - (-2.0 * a + 2.0 * b) / 4.0) < 1e-15);
  CHECK(std::abs(s.amplitude(1, 1) - (2.0 * a - 2.0 * b) / 4.0) < 1e-15);
  CHECK(std::abs(s.amplitude(0, 2) - (2.0 * a + 2.0 * b) / 4.0) < 1e-15);
  CHECK(std::abs(s.amplitude(0, 3) - (2.0 * a + 2.0 * b) / 4.0) < 1e-15);
  CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("evolve agrees with a dense reference stepper") {
  std::mt19937_64 rng(7);
  for (int tau : {1, 3, 7}) {
    const WalkParams p(tau);
    const CoinState coin = random_coin(tau + 2, rng);
    const int steps = 25;
    const auto state = evolve(InitialCondition::general(coin), p, steps);
    const auto ref = dense_evolve(coin, tau, steps);
    double worst = 0.0;
    for (int n = -steps; n <= steps; ++n)
      for (int j = 0; j < tau + 2; ++j)
        worst = std::max(worst, std::abs(state.amplitude(n, j) - ref[static_cast<std::size_t>(n + steps)](j)));
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("evolve with zero steps is the initial state") {
  const WalkParams p(4);
  const auto init = InitialCondition::standard(0.6, Complex(0.0, 0.8));
  const auto a = evolve(init, p, 0);
  const auto b = initial_state(init, p);
  REQUIRE(a.amplitudes().size() == b.amplitudes().size());
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) CHECK(a.amplitudes()[i] == b.amplitudes()[i]);
}

TEST_CASE("apply_step chain equals evolve") {
  const WalkParams p(3);
  const auto init = InitialCondition::standard(kInvSqrt2, kI * kInvSqrt2);
  auto s = initial_state(init, p);
  for (int t = 0; t < 12; ++t) s = apply_step(s, p);
  const auto e = evolve(init, p, 12);
  for (int n = -12; n <= 12; ++n)
    for (int j = 0; j < p.delta(); ++j) CHECK(s.amplitude(n, j) == e.amplitude(n, j));
}

TEST_CASE("norm conservation and light cone") {
  std::mt19937_64 rng(11);
  for (int tau : {1, 2, 5, 10, 20}) {
    const WalkParams p(tau);
    const auto init = InitialCondition::general(random_coin(tau + 2, rng));
    double drift = 0.0;
    double outside = 0.0;
    evolve_each(init, p, 200, [&](const WalkerState& st) {
      drift = std::max(drift, std::abs(st.norm_squared() - 1.0));
      for (int n = -st.origin_offset(); n <= st.origin_offset(); ++n) {
        if (std::abs(n) <= st.time()) continue;
        for (const auto& z : st.site(n)) outside = std::max(outside, std::abs(z));
      }
    });
    CHECK(drift < 1e-12);
    CHECK(outside == 0.0);
  }
}

TEST_CASE("self-loops populate both parities from t = 2") {
  for (int tau : {1, 4}) {
    const WalkParams p(tau);
    evolve_each(InitialCondition::standard(1.0, 0.0), p, 20, [&](const WalkerState& st) {
      if (st.time() < 2) return;
      const auto d = position_distribution(st);
      double even = 0.0;
      double odd = 0.0;
      for (int n = -st.time(); n <= st.time(); ++n) (n % 2 == 0 ? even : odd) += d.probability(n);
      CHECK(even > 1e-6);
      CHECK(odd > 1e-6);
    });
  }
}

TEST_CASE("symmetric coin gives a symmetric distribution") {
  for (int tau : {1, 2, 10}) {
    const WalkParams p(tau);
    double worst = 0.0;
    evolve_each(InitialCondition::standard(kInvSqrt2, kI * kInvSqrt2), p, 100, [&](const WalkerState& st) {
      const auto d = position_distribution(st);
      for (int n = 1; n <= st.time(); ++n) worst = std::max(worst, std::abs(d.probability(n) - d.probability(-n)));
    });
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("distribution landmarks") {
  const auto sym = InitialCondition::standard(kInvSqrt2, kI * kInvSqrt2);
  SUBCASE("t = 0") {
    const auto d = position_distribution(initial_state(sym, WalkParams(2)));
    CHECK(d.min_position() == 0);
    CHECK(d.max_position() == 0);
    CHECK(d.probability(0) == doctest::Approx(1.0));
  }
  SUBCASE("tau = 10 right peak near 46 at T = 50") {
    const auto d = position_distribution(evolve(sym, WalkParams(10), 50));
    CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-12));
    int arg = 26;
    for (int n = 26; n <= 50; ++n)
      if (d.probability(n) > d.probability(arg)) arg = n;
    CHECK(std::abs(arg - 46) <= 2);
  }
  SUBCASE("tau = 1 origin probability oscillates around its limit") {
    const auto d = position_distribution(evolve(sym, WalkParams(1), 100));
    CHECK(std::abs(d.probability(0) - 2.0 * (5.0 - 2.0 * std::sqrt(6.0))) < 0.03);
  }
}
