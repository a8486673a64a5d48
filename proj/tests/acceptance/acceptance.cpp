// Acceptance suite: one PASS/FAIL line per criterion, details indented below.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lqw/analytics.hpp"
#include "lqw/harness.hpp"
#include "lqw/spectral.hpp"

using namespace lqw;
using std::numbers::pi;

namespace {

const Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct Outcome {
  bool passed = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

InitialCondition symmetric() { return InitialCondition::standard(kInvSqrt2, kI * kInvSqrt2); }

InitialCondition random_standard(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double mix = u(rng);
  return InitialCondition::standard(std::polar(std::sqrt(mix), 2 * pi * u(rng)),
                                    std::polar(std::sqrt(1.0 - mix), 2 * pi * u(rng)));
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

Outcome localization_limit() {
  Outcome o;
  for (int tau : {1, 6, 20}) {
    const auto start = std::chrono::steady_clock::now();
    const auto s = localization_series(symmetric(), WalkParams(tau), 1000);
    const double secs = seconds_since(start);
    const double limit = origin_localization_limit(WalkParams(tau));
    const double dev = std::abs(*s.window_mean - limit);
    o.require(s.window == 100 && dev <= 1e-2,
              "tau=" + std::to_string(tau) + fmt(" window mean %.6f limit %.6f |diff| %.2e (tol 1e-2)",
                                                 *s.window_mean, limit, dev));
    o.require(secs < 30.0, "tau=" + std::to_string(tau) + fmt(" runtime %.2f s (< 30 s)", secs));
  }
  o.require(std::abs(origin_localization_limit(WalkParams(1)) - 2 * (5 - 2 * std::sqrt(6.0))) < 1e-15,
            fmt("tau=1 limit %.9f = 2(5-2sqrt6)", origin_localization_limit(WalkParams(1))));
  return o;
}

Outcome initial_state_independence() {
  Outcome o;
  const WalkParams p(5);
  std::mt19937_64 rng(2024);
  const double ref = origin_localization_limit(p);
  double limit_spread = 0.0;
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto init = random_standard(rng);
    limit_spread = std::max(limit_spread, std::abs(localization_probability_origin(init, p) - ref));
    const double mean = *localization_series(init, p, 1000).window_mean;
    lo = std::min(lo, mean);
    hi = std::max(hi, mean);
  }
  o.require(limit_spread < 1e-14, fmt("max |limit - P0| over 20 inits %.2e (roundoff)", limit_spread));
  o.require(hi - lo <= 2e-2, fmt("window means in [%.6f, %.6f], max pairwise gap %.2e (tol 2e-2)", lo, hi, hi - lo));
  return o;
}

Outcome peak_positions() {
  Outcome o;
  for (auto [tau, expected] : {std::pair{1, 29}, std::pair{10, 46}}) {
    const auto s = distribution_snapshot(symmetric(), WalkParams(tau), 50);
    o.require(std::abs(s.measured_right - expected) <= 2,
              "tau=" + std::to_string(tau) + " right peak " + std::to_string(s.measured_right) + " expected " +
                  std::to_string(expected) + " (+-2)");
    o.require(std::abs(s.measured_right + s.measured_left) <= 1,
              "tau=" + std::to_string(tau) + " left peak " + std::to_string(s.measured_left) + " mirrors right (+-1)");
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int tau : {1, 3, 10}) {
    const auto general = InitialCondition::general(random_coin(tau + 2, rng));
    for (int t : {1, 7, 50, 100}) {
      for (const auto& init : {symmetric(), general}) {
        worst = std::max(worst, compare_direct_vs_fourier(init, WalkParams(tau), t));
      }
    }
  }
  o.require(worst < 1e-10, fmt("max amplitude deviation %.2e over 24 runs (tol 1e-10)", worst));
  return o;
}

Outcome eigen_system_validation() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> k_dist(-pi, pi);
  for (int tau : {1, 2, 5, 10}) {
    const WalkParams p(tau);
    double residual = 0.0;
    bool multiplicities = true;
    for (int i = 0; i < 50; ++i) {
      double k = 0.0;
      while (k == 0.0 || k == -pi) k = k_dist(rng);
      const auto es = eigen_system(p, k);
      const Eigen::MatrixXcd u = momentum_operator(p, k);
      for (int j = 0; j < p.delta(); ++j) {
        const Eigen::VectorXcd v = es.eigenvectors.col(j);
        residual = std::max(residual, (u * v - std::polar(1.0, es.omegas[static_cast<std::size_t>(j)]) * v).norm());
      }
      const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u);
      int at[4] = {0, 0, 0, 0};
      for (int j = 0; j < p.delta(); ++j) {
        const Complex ev = solver.eigenvalues()(j);
        if (std::abs(ev - std::polar(1.0, es.theta)) < 1e-9) ++at[0];
        else if (std::abs(ev - std::polar(1.0, -es.theta)) < 1e-9) ++at[1];
        else if (std::abs(ev - 1.0) < 1e-9) ++at[2];
        else if (std::abs(ev + 1.0) < 1e-9) ++at[3];
      }
      multiplicities = multiplicities && at[0] == 1 && at[1] == 1 && at[2] == 1 && at[3] == tau - 1;
    }
    o.require(residual < 1e-10, "tau=" + std::to_string(tau) + fmt(" max residual %.2e (tol 1e-10)", residual));
    o.require(multiplicities, "tau=" + std::to_string(tau) + " multiplicities (1,1,1," + std::to_string(tau - 1) + ")");
  }
  return o;
}

template <typename Check>
Outcome weak_limit_sweep(Check check) {
  Outcome o;
  std::mt19937_64 rng(6);
  for (int tau : {1, 2, 5, 10, 20}) {
    double worst = 0.0;
    double slowest = 0.0;
    for (int i = 0; i < 5; ++i) {
      const auto init = random_standard(rng);
      const auto start = std::chrono::steady_clock::now();
      worst = std::max(worst, check(init, WalkParams(tau)));
      slowest = std::max(slowest, seconds_since(start));
    }
    o.require(worst <= 1e-6, "tau=" + std::to_string(tau) + fmt(" max deviation %.2e (tol 1e-6)", worst));
    o.require(slowest < 1.0, "tau=" + std::to_string(tau) + fmt(" slowest case %.3f s (< 1 s)", slowest));
  }
  return o;
}

Outcome weak_limit_closure() {
  return weak_limit_sweep([](const InitialCondition& init, const WalkParams& p) {
    const WeakLimitModel m(init, p);
    return std::abs(m.p_hat() + m.continuous_mass(-1.0, 1.0) - 1.0);
  });
}

Outcome spread_coefficient_check() {
  Outcome o = weak_limit_sweep([](const InitialCondition& init, const WalkParams& p) {
    const WeakLimitModel m(init, p);
    return std::abs(m.spread_coefficient() - m.spread_coefficient_by_moments());
  });
  const auto init = InitialCondition::standard(Complex(0.5, std::sqrt(2.0) / 2),
                                               Complex(std::sqrt(2.0) / 4, std::sqrt(2.0) / 4));
  for (int tau = 1; tau <= 20; ++tau) {
    const WalkParams p(tau);
    const auto fit = fit_power_law(variance_series(init, p, 1000));
    const double c = spread_coefficient(init, p);
    const double rel = std::abs(fit.coefficient / c - 1.0);
    o.require(fit.exponent >= 1.95 && fit.exponent <= 2.05 && rel <= 0.10,
              "tau=" + std::to_string(tau) + fmt(" alpha_fit %.4f c_fit %.5f c %.5f rel %.3f", fit.exponent,
                                                 fit.coefficient, c, rel));
  }
  return o;
}

Outcome distributional_convergence() {
  Outcome o;
  const auto r = empirical_vs_weak_limit(symmetric(), WalkParams(1), 1000, 0.05);
  o.require(r.sup_distance <= 0.05, fmt("sup |F_T - F| on |x| > 0.05: %.4f (tol 0.05)", r.sup_distance));
  const double gap = std::abs(r.empirical_near_mass - r.theoretical_near_mass);
  o.require(gap <= 0.05, fmt("near-origin mass %.4f vs %.4f, |diff| %.4f (tol 0.05)", r.empirical_near_mass,
                             r.theoretical_near_mass, gap));
  return o;
}

// Periodic trapezoid on half-offset nodes; exponentially accurate for the
// smooth integrands below and independent of the library quadrature.
double zone_average(const std::function<double(double)>& g, int m) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += g(-pi + 2 * pi * (i + 0.5) / m);
  return s / m;
}

Outcome property_suites() {
  Outcome o;
  std::mt19937_64 rng(9);

  double drift = 0.0;
  double outside = 0.0;
  for (int tau : {1, 2, 3, 5, 10, 20}) {
    for (const auto& init : {symmetric(), random_standard(rng), InitialCondition::general(random_coin(tau + 2, rng))}) {
      evolve_each(init, WalkParams(tau), 300, [&](const WalkerState& st) {
        drift = std::max(drift, std::abs(st.norm_squared() - 1.0));
        for (int n = -st.origin_offset(); n <= st.origin_offset(); ++n) {
          if (std::abs(n) <= st.time()) continue;
          for (const auto& z : st.site(n)) outside = std::max(outside, std::abs(z));
        }
      });
    }
  }
  o.require(drift <= 1e-12, fmt("norm drift %.2e (tol 1e-12)", drift));
  o.require(outside == 0.0, fmt("max amplitude outside light cone %.1e (exact 0)", outside));

  double involution = 0.0;
  for (int tau = 1; tau <= 100; ++tau) {
    const auto g = grover_coin(WalkParams(tau));
    involution = std::max(involution, (g * g - Eigen::MatrixXd::Identity(tau + 2, tau + 2)).cwiseAbs().maxCoeff());
  }
  o.require(involution <= 1e-12, fmt("max |G^2 - I| over tau 1..100: %.2e (tol 1e-12)", involution));

  double theta_dev = 0.0;
  double f3_dev = 0.0;
  for (int tau : {1, 2, 5, 10, 20}) {
    const auto th = theta_constants(WalkParams(tau));
    const auto n3 = [tau](double k) { return (1 + std::cos(k)) / (tau + 4 + tau * std::cos(k)); };
    const auto k1 = [](double k) { return 2.0 / (1.0 + std::polar(1.0, -k)); };
    const double t1 = zone_average(n3, 4096);
    const double t2 = zone_average([&](double k) { return n3(k) * std::norm(k1(k)); }, 4096);
    const double t3 = zone_average([&](double k) { return n3(k) * (k1(k) * k1(k)).real(); }, 4096);
    theta_dev = std::max({theta_dev, std::abs(th.theta1 - t1), std::abs(th.theta2 - t2), std::abs(th.theta3 - t3)});
    const Eigen::MatrixXcd proj = zero_phase_projector_integral(WalkParams(tau), 1024);
    f3_dev = std::max(f3_dev, (proj - f3_matrix(WalkParams(tau)).cast<Complex>()).cwiseAbs().maxCoeff());
  }
  o.require(theta_dev <= 1e-8, fmt("theta constants vs quadrature %.2e (tol 1e-8)", theta_dev));
  o.require(f3_dev <= 1e-8, fmt("F3 vs projector integral %.2e (tol 1e-8)", f3_dev));

  bool v_is_omega = true;
  bool monotone = true;
  for (int tau = 1; tau <= 500; ++tau) {
    const WalkParams p(tau);
    v_is_omega = v_is_omega && peak_velocities(p).right == WeakLimitModel(symmetric(), p).omega();
    if (tau > 1) {
      const WalkParams prev(tau - 1);
      monotone = monotone && peak_velocities(p).right > peak_velocities(prev).right &&
                 origin_localization_limit(p) < origin_localization_limit(prev);
    }
  }
  o.require(v_is_omega, "v_right == Omega exactly for tau 1..500");
  o.require(monotone, "v_right increasing and P0 decreasing in tau over 1..500");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"localization limit at the origin (tau = 1, 6, 20; T = 1000)", &localization_limit},
      {"initial-state independence (tau = 5, 20 random coins)", &initial_state_independence},
      {"travelling peak positions (T = 50)", &peak_positions},
      {"direct evolution vs Fourier propagation", &oracle_equivalence},
      {"closed-form eigen-system", &eigen_system_validation},
      {"weak-limit closure", &weak_limit_closure},
      {"spread coefficient: closed form, moments and fit", &spread_coefficient_check},
      {"distributional convergence (tau = 1, T = 1000)", &distributional_convergence},
      {"property suites", &property_suites},
  };

  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(start);
    std::printf("%s [%d] %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", index, c.name, secs);
    for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
    if (!o.passed) ++failures;
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
