#pragma once

// Numerical experiments that compare exact evolution against the closed
// forms, plus the report type handed to the command-line front end.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lqw/analytics.hpp"
#include "lqw/walk.hpp"

namespace lqw {

struct Verdict {
  std::string name;
  double measured;
  double tolerance;
  bool passed;
};

/// Records `measured <= tolerance`.
Verdict check_at_most(std::string name, double measured, double tolerance);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

using ConfigValue = std::variant<std::int64_t, double, std::string>;

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, ConfigValue>> config;
  std::vector<std::pair<std::string, double>> results;
  Table table;
  std::vector<Verdict> verdicts;

  bool all_passed() const;
};

struct LocalizationSeries {
  std::vector<int> t;
  std::vector<double> p_origin;
  /// Mean of the even- and odd-parity origin limits.
  double reference;
  /// Last ceil(T / 10) steps; absent for T < 10.
  int window = 0;
  std::optional<double> window_mean;
  std::optional<double> deviation;
};

/// P(X_t = 0) for t = 1..T from direct evolution. Throws InvalidInput for T < 1.
LocalizationSeries localization_series(const InitialCondition& init, const WalkParams& params,
                                       int steps);

struct DistributionSnapshot {
  PositionDistribution distribution;
  PeakVelocities velocities;
  int theoretical_left;
  int theoretical_right;
  int measured_left;
  int measured_right;
};

/// Travelling peaks are the argmax of P(n) over n > T/2 and n < -T/2, ties
/// going to the larger |n|. Theoretical positions are -/+ floor(v_R T).
/// Throws InvalidInput for T < 10.
DistributionSnapshot distribution_snapshot(const InitialCondition& init, const WalkParams& params,
                                           int steps);

struct VarianceSeries {
  std::vector<int> t;
  std::vector<double> variance;
};

/// sigma^2(t) for t = 0..T. Throws InvalidInput for T < 10.
VarianceSeries variance_series(const InitialCondition& init, const WalkParams& params, int steps);

struct PowerLawFit {
  double coefficient;
  double exponent;
  int points;
};

/// Least squares of log(sigma^2) on log(t) over t in [T/2, T], T = max t.
/// Throws InvalidInput for fewer than 10 samples and DegenerateSeries when the
/// window holds a non-positive value or all values are equal.
PowerLawFit fit_power_law(std::span<const int> t, std::span<const double> variance);
PowerLawFit fit_power_law(const VarianceSeries& series);

struct WeakLimitComparison {
  double sup_distance;
  double empirical_near_mass;
  double theoretical_near_mass;
};

/// Compares the CDF of X_T / T with the limit CDF on |x| > epsilon. Both the
/// value and the left limit are compared at each lattice point, which bounds
/// the discrepancy on every gap between lattice points in the region.
/// Throws UnsupportedInitialState for general inits and InvalidInput unless
/// T >= 100 and 0 < epsilon < omega.
WeakLimitComparison empirical_vs_weak_limit(const InitialCondition& init, const WalkParams& params,
                                            int steps, double epsilon,
                                            int quadrature_nodes = kDefaultQuadratureNodes);

/// max |psi_direct - psi_fourier| over sites in [-T, T] and all components.
/// A grid_size of 0 selects default_grid_size(T).
double compare_direct_vs_fourier(const InitialCondition& init, const WalkParams& params, int steps,
                                 int grid_size = 0);

// Report builders used by the CLI subcommands.

struct RunOptions {
  int steps = 50;
  int quadrature_nodes = kDefaultQuadratureNodes;
  int grid_size = 0;
  int density_points = 201;
  double epsilon = 0.05;
  double localization_tolerance = 1e-2;
};

ExperimentReport simulate_report(const InitialCondition& init, const WalkParams& params,
                                 const RunOptions& options);
ExperimentReport localize_report(const InitialCondition& init, const WalkParams& params,
                                 const RunOptions& options);
ExperimentReport density_report(const InitialCondition& init, const WalkParams& params,
                                const RunOptions& options);
ExperimentReport variance_report(const InitialCondition& init, const WalkParams& params,
                                 const RunOptions& options);
ExperimentReport verify_report(const InitialCondition& init, const WalkParams& params,
                               const RunOptions& options);

}  // namespace lqw
