#include "lqw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lqw/error.hpp"
#include "lqw/spectral.hpp"

namespace lqw {

namespace {

std::vector<std::pair<std::string, ConfigValue>> echo_config(const InitialCondition& init,
                                                             const WalkParams& params,
                                                             int steps) {
  std::vector<std::pair<std::string, ConfigValue>> c;
  c.emplace_back("tau", std::int64_t{params.tau()});
  c.emplace_back("delta", std::int64_t{params.delta()});
  const CoinState coin = init.coin_vector(params);
  if (init.is_standard()) {
    c.emplace_back("alpha_re", init.alpha().real());
    c.emplace_back("alpha_im", init.alpha().imag());
    c.emplace_back("beta_re", init.beta().real());
    c.emplace_back("beta_im", init.beta().imag());
  } else {
    for (std::size_t j = 0; j < coin.size(); ++j) {
      c.emplace_back("coin" + std::to_string(j + 1) + "_re", coin[j].real());
      c.emplace_back("coin" + std::to_string(j + 1) + "_im", coin[j].imag());
    }
  }
  c.emplace_back("steps", std::int64_t{steps});
  return c;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

Verdict check_at_most(std::string name, double measured, double tolerance) {
  return Verdict{std::move(name), measured, tolerance, measured <= tolerance};
}

bool ExperimentReport::all_passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

LocalizationSeries localization_series(const InitialCondition& init, const WalkParams& params,
                                       int steps) {
  if (steps < 1) throw InvalidInput("localization series needs T >= 1");
  LocalizationSeries s;
  s.t.reserve(static_cast<std::size_t>(steps));
  s.p_origin.reserve(static_cast<std::size_t>(steps));
  evolve_each(init, params, steps, [&](const WalkerState& st) {
    if (st.time() == 0) return;
    double p = 0.0;
    for (const auto& z : st.site(0)) p += std::norm(z);
    s.t.push_back(st.time());
    s.p_origin.push_back(p);
  });
  s.reference = 0.5 * (localization_probability_origin(init, params, Parity::Even) +
                       localization_probability_origin(init, params, Parity::Odd));
  if (steps >= 10) {
    s.window = (steps + 9) / 10;
    double sum = 0.0;
    for (std::size_t i = s.p_origin.size() - static_cast<std::size_t>(s.window); i < s.p_origin.size(); ++i) {
      sum += s.p_origin[i];
    }
    s.window_mean = sum / s.window;
    s.deviation = std::abs(*s.window_mean - s.reference);
  }
  return s;
}

DistributionSnapshot distribution_snapshot(const InitialCondition& init, const WalkParams& params,
                                           int steps) {
  if (steps < 10) throw InvalidInput("distribution snapshot needs T >= 10");
  auto dist = position_distribution(evolve(init, params, steps));
  const auto v = peak_velocities(params);
  const int predicted = static_cast<int>(std::floor(v.right * steps));

  // Scan from the outside in so that ties keep the larger |n|.
  int right = steps;
  double best = -1.0;
  for (int n = steps; 2 * n > steps; --n) {
    if (dist.probability(n) > best) {
      best = dist.probability(n);
      right = n;
    }
  }
  int left = -steps;
  best = -1.0;
  for (int n = -steps; 2 * n < -steps; ++n) {
    if (dist.probability(n) > best) {
      best = dist.probability(n);
      left = n;
    }
  }
  return DistributionSnapshot{std::move(dist), v, -predicted, predicted, left, right};
}

VarianceSeries variance_series(const InitialCondition& init, const WalkParams& params, int steps) {
  if (steps < 10) throw InvalidInput("variance series needs T >= 10");
  VarianceSeries s;
  s.t.reserve(static_cast<std::size_t>(steps) + 1);
  s.variance.reserve(static_cast<std::size_t>(steps) + 1);
  evolve_each(init, params, steps, [&](const WalkerState& st) {
    const int t = st.time();
    double m1 = 0.0;
    double m2 = 0.0;
    for (int n = -t; n <= t; ++n) {
      double p = 0.0;
      for (const auto& z : st.site(n)) p += std::norm(z);
      m1 += n * p;
      m2 += static_cast<double>(n) * n * p;
    }
    s.t.push_back(t);
    s.variance.push_back(m2 - m1 * m1);
  });
  return s;
}

PowerLawFit fit_power_law(std::span<const int> t, std::span<const double> variance) {
  if (t.size() != variance.size()) throw InvalidInput("time and variance series differ in length");
  if (t.size() < 10) throw InvalidInput("power-law fit needs at least 10 samples");
  const int t_max = *std::max_element(t.begin(), t.end());
  if (t_max <= 0) throw InvalidInput("power-law fit needs positive times");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  bool all_equal = true;
  double first = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= 0 || 2 * t[i] < t_max) continue;
    if (!(variance[i] > 0.0)) {
      throw DegenerateSeries("variance must be positive inside the fit window, got " +
                             std::to_string(variance[i]) + " at t = " + std::to_string(t[i]));
    }
    if (count == 0) first = variance[i];
    all_equal = all_equal && variance[i] == first;
    const double x = std::log(static_cast<double>(t[i]));
    const double y = std::log(variance[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw DegenerateSeries("fit window holds fewer than two samples");
  if (all_equal) throw DegenerateSeries("all variances in the fit window are equal");
  const double n = count;
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  return PowerLawFit{std::exp(intercept), slope, count};
}

PowerLawFit fit_power_law(const VarianceSeries& series) {
  return fit_power_law(series.t, series.variance);
}

WeakLimitComparison empirical_vs_weak_limit(const InitialCondition& init, const WalkParams& params,
                                            int steps, double epsilon, int quadrature_nodes) {
  const WeakLimitModel model(init, params, quadrature_nodes);
  if (steps < 100) throw InvalidInput("weak-limit comparison needs T >= 100");
  if (!(epsilon > 0.0 && epsilon < model.omega())) {
    throw InvalidInput("exclusion radius must satisfy 0 < epsilon < omega");
  }
  const auto dist = position_distribution(evolve(init, params, steps));
  const double T = steps;

  WeakLimitComparison out{0.0, 0.0, 0.0};
  double below = 0.0;  // empirical P(X_T < n)
  for (int n = -steps; n <= steps; ++n) {
    const double p = dist.probability(n);
    const double x = n / T;
    if (std::abs(x) < epsilon) out.empirical_near_mass += p;
    if (std::abs(x) > epsilon) {
      const double limit = model.cdf(x);
      // The limit CDF is continuous away from 0, so its left limit equals its value.
      out.sup_distance = std::max({out.sup_distance, std::abs(below + p - limit), std::abs(below - limit)});
    }
    below += p;
  }
  out.theoretical_near_mass = model.p_hat() + model.continuous_mass(-epsilon, epsilon);
  return out;
}

double compare_direct_vs_fourier(const InitialCondition& init, const WalkParams& params, int steps,
                                 int grid_size) {
  const WalkerState direct = evolve(init, params, steps);
  const WalkerState fourier =
      propagate_fourier(init, params, steps, grid_size > 0 ? grid_size : default_grid_size(steps));
  double worst = 0.0;
  for (int n = -steps; n <= steps; ++n) {
    const auto a = direct.site(n);
    const auto b = fourier.site(n);
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  }
  return worst;
}

ExperimentReport simulate_report(const InitialCondition& init, const WalkParams& params,
                                 const RunOptions& options) {
  ExperimentReport r;
  r.experiment = "simulate";
  r.config = echo_config(init, params, options.steps);
  r.table.columns = {"n", "probability"};

  PositionDistribution dist = position_distribution(evolve(init, params, options.steps));
  for (int n = dist.min_position(); n <= dist.max_position(); ++n) {
    r.table.rows.push_back({static_cast<double>(n), dist.probability(n)});
  }
  const auto v = peak_velocities(params);
  r.results.emplace_back("v_left", v.left);
  r.results.emplace_back("v_right", v.right);
  r.results.emplace_back("mean", dist.moment(1));
  r.results.emplace_back("variance", dist.variance());
  if (options.steps >= 10) {
    const auto snap = distribution_snapshot(init, params, options.steps);
    r.results.emplace_back("theoretical_left_peak", snap.theoretical_left);
    r.results.emplace_back("theoretical_right_peak", snap.theoretical_right);
    r.results.emplace_back("measured_left_peak", snap.measured_left);
    r.results.emplace_back("measured_right_peak", snap.measured_right);
  }
  r.verdicts.push_back(check_at_most("probability_sum", std::abs(dist.total() - 1.0), kNormTolerance));
  return r;
}

ExperimentReport localize_report(const InitialCondition& init, const WalkParams& params,
                                 const RunOptions& options) {
  ExperimentReport r;
  r.experiment = "localize";
  r.config = echo_config(init, params, options.steps);
  r.table.columns = {"t", "probability_origin", "reference"};
  const auto s = localization_series(init, params, options.steps);
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    r.table.rows.push_back({static_cast<double>(s.t[i]), s.p_origin[i], s.reference});
  }
  r.results.emplace_back("reference", s.reference);
  r.results.emplace_back("localization_even", localization_probability_origin(init, params, Parity::Even));
  r.results.emplace_back("localization_odd", localization_probability_origin(init, params, Parity::Odd));
  if (s.window_mean) {
    r.results.emplace_back("window", s.window);
    r.results.emplace_back("window_mean", *s.window_mean);
    r.verdicts.push_back(check_at_most("window_mean_vs_reference", *s.deviation,
                                       options.localization_tolerance));
  }
  return r;
}

ExperimentReport density_report(const InitialCondition& init, const WalkParams& params,
                                const RunOptions& options) {
  const WeakLimitModel model(init, params, options.quadrature_nodes);
  ExperimentReport r;
  r.experiment = "density";
  r.config = echo_config(init, params, options.steps);
  r.config.emplace_back("points", std::int64_t{options.density_points});
  r.config.emplace_back("quadrature_nodes", std::int64_t{options.quadrature_nodes});
  r.table.columns = {"x", "density"};
  const int pts = std::max(1, options.density_points);
  const double w = model.omega();
  for (int i = 0; i < pts; ++i) {
    const double x = -w + (i + 0.5) * 2.0 * w / pts;
    r.table.rows.push_back({x, model.density(x)});
  }
  const double mass = model.continuous_mass(-w, w);
  const double c_closed = model.spread_coefficient();
  const double c_moments = model.spread_coefficient_by_moments();
  r.results.emplace_back("omega", w);
  r.results.emplace_back("p_hat", model.p_hat());
  r.results.emplace_back("continuous_mass", mass);
  r.results.emplace_back("mean", model.moment(1));
  r.results.emplace_back("spread_coefficient", c_closed);
  r.results.emplace_back("spread_coefficient_by_moments", c_moments);
  r.verdicts.push_back(check_at_most("closure", std::abs(model.p_hat() + mass - 1.0), 1e-6));
  r.verdicts.push_back(check_at_most("spread_coefficient_consistency", std::abs(c_closed - c_moments), 1e-6));
  return r;
}

ExperimentReport variance_report(const InitialCondition& init, const WalkParams& params,
                                 const RunOptions& options) {
  ExperimentReport r;
  r.experiment = "variance";
  r.config = echo_config(init, params, options.steps);
  r.table.columns = {"t", "variance"};
  const auto s = variance_series(init, params, options.steps);
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    r.table.rows.push_back({static_cast<double>(s.t[i]), s.variance[i]});
  }
  const auto fit = fit_power_law(s);
  r.results.emplace_back("c_fit", fit.coefficient);
  r.results.emplace_back("alpha_fit", fit.exponent);
  r.results.emplace_back("fit_points", fit.points);
  r.verdicts.push_back(check_at_most("alpha_fit_minus_2", std::abs(fit.exponent - 2.0), 0.05));
  if (init.is_standard()) {
    const double c = spread_coefficient(init, params);
    r.results.emplace_back("c_theory", c);
    r.verdicts.push_back(check_at_most("c_fit_relative_error", std::abs(fit.coefficient / c - 1.0), 0.10));
  }
  return r;
}

ExperimentReport verify_report(const InitialCondition& init, const WalkParams& params,
                               const RunOptions& options) {
  using std::numbers::pi;
  ExperimentReport r;
  r.experiment = "verify";
  r.config = echo_config(init, params, options.steps);
  r.table.columns = {};
  const int d = params.delta();

  double norm_drift = 0.0;
  double outside = 0.0;
  evolve_each(init, params, options.steps, [&](const WalkerState& st) {
    norm_drift = std::max(norm_drift, std::abs(st.norm_squared() - 1.0));
    for (int n = -st.origin_offset(); n <= st.origin_offset(); ++n) {
      if (std::abs(n) <= st.time()) continue;
      for (const auto& z : st.site(n)) outside = std::max(outside, std::abs(z));
    }
  });
  r.verdicts.push_back(check_at_most("norm_conservation", norm_drift, 1e-12));
  r.verdicts.push_back(check_at_most("light_cone", outside, 0.0));

  const Eigen::MatrixXd g = grover_coin(params);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  r.verdicts.push_back(check_at_most("coin_involution", (g * g - id).cwiseAbs().maxCoeff(), 1e-12));
  r.verdicts.push_back(check_at_most("coin_symmetry", (g - g.transpose()).cwiseAbs().maxCoeff(), 1e-12));

  r.verdicts.push_back(check_at_most("direct_vs_fourier",
                                     compare_direct_vs_fourier(init, params, options.steps, options.grid_size),
                                     1e-10));

  double residual = 0.0;
  double phase_mismatch = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double k = -pi + 2.0 * pi * (i + 0.5) / 16.0;
    const auto es = eigen_system(params, k);
    const Eigen::MatrixXcd u = momentum_operator(params, k);
    for (int j = 0; j < d; ++j) {
      const Eigen::VectorXcd v = es.eigenvectors.col(j);
      const Complex lambda = std::polar(1.0, es.omegas[static_cast<std::size_t>(j)]);
      residual = std::max(residual, (u * v - lambda * v).norm());
    }
    const double c = std::cos(k);
    const double tau = params.tau();
    phase_mismatch = std::max(phase_mismatch, std::abs(std::cos(es.theta) + (tau * c + 2.0) / (tau + 2.0)));
  }
  r.verdicts.push_back(check_at_most("eigen_residual", residual, 1e-10));
  r.verdicts.push_back(check_at_most("eigen_angle", phase_mismatch, 1e-12));

  const Eigen::MatrixXcd projector = zero_phase_projector_integral(params, 512);
  const auto th = theta_constants(params);
  const double theta_err = std::max({std::abs(projector(0, 2) - th.theta1),
                                     std::abs(projector(0, 0) - th.theta2),
                                     std::abs(projector(0, 1) - th.theta3)});
  r.verdicts.push_back(check_at_most("theta_constants_vs_quadrature", theta_err, 1e-8));
  r.verdicts.push_back(check_at_most("f3_vs_projector_integral",
                                     max_abs(projector - f3_matrix(params).cast<Complex>()), 1e-8));

  const auto v = peak_velocities(params);
  const double omega_bound = std::sqrt(params.tau() / (params.tau() + 2.0));
  r.verdicts.push_back(check_at_most("v_right_equals_omega", std::abs(v.right - omega_bound), 0.0));
  r.verdicts.push_back(check_at_most("phase_derivative_limit",
                                     std::abs(phase_derivative(params, 1e-6, 2) - v.right), 1e-6));

  if (init.is_standard()) {
    r.verdicts.push_back(check_at_most(
        "origin_limit_closed_form",
        std::abs(localization_probability_origin(init, params) - origin_localization_limit(params)), 1e-12));
    const WeakLimitModel model(init, params, options.quadrature_nodes);
    const double closure = std::abs(model.moment(0) - 1.0);
    r.verdicts.push_back(check_at_most("weak_limit_closure", closure, 1e-6));
    r.verdicts.push_back(check_at_most(
        "spread_coefficient_consistency",
        std::abs(model.spread_coefficient() - model.spread_coefficient_by_moments()), 1e-6));
    r.results.emplace_back("p_hat", model.p_hat());
    r.results.emplace_back("spread_coefficient", model.spread_coefficient());
  }

  if (options.steps >= 10) {
    const auto s = localization_series(init, params, options.steps);
    r.results.emplace_back("window_mean", *s.window_mean);
    r.results.emplace_back("reference", s.reference);
    r.verdicts.push_back(check_at_most("localization_window_mean", *s.deviation, options.localization_tolerance));
  }
  return r;
}

}  // namespace lqw
