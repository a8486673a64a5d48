#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lqw {

inline constexpr int kDefaultQuadratureNodes = 2048;

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights for an n-point rule. Rules are computed once per n and
/// cached; the returned reference stays valid for the life of the program.
/// Throws InvalidInput for n < 1.
const GaussLegendreRule& gauss_legendre(int n);

/// Integral of fn over [a, b] with the n-point rule, summed in node order.
double integrate(const std::function<double(double)>& fn, double a, double b, int n);

}  // namespace lqw
