#pragma once

#include <array>
#include <functional>

namespace fracsource {

struct GaussLegendreRule {
  static constexpr int kPoints = 15;
  std::array<double, kPoints> nodes{};    // on [-1, 1], ascending
  std::array<double, kPoints> weights{};
};

// 15-point Gauss-Legendre rule, computed once by Newton iteration.
const GaussLegendreRule& gauss_legendre15();

struct QuadratureOptions {
  double abs_tol = 1e-11;
  int max_depth = 20;
  // Uniform panels laid down before adaptive bisection starts.
  int initial_panels = 1;
};

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;
  int panels = 0;
};

// Adaptive Gauss-Legendre on [a, b]: each panel is compared against its two
// halves and bisected at the midpoint until the difference fits its share of
// abs_tol. Panels are reduced left to right, so the result is reproducible.
// Throws QuadratureFailure once a panel needs more than max_depth bisections.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace fracsource
