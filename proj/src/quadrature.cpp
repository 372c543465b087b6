#include "fracsource/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fracsource/errors.hpp"

namespace fracsource {

namespace {

GaussLegendreRule build_rule() {
  constexpr int n = GaussLegendreRule::kPoints;
  GaussLegendreRule rule;
  for (int i = 0; i < n; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double pk = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    // Recompute the derivative at the converged node for the weight.
    long double p0 = 1.0L;
    long double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const long double pk = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0L);
    // Newton from cos(...) yields descending nodes; store ascending.
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.weights[n - 1 - i] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
  }
  return rule;
}

double apply_rule(const std::function<double(double)>& f, double a, double b) {
  const auto& rule = gauss_legendre15();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < GaussLegendreRule::kPoints; ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  double err = 0.0;
  int panels = 0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

void refine(const std::function<double(double)>& f, double a, double b, double whole, double tol,
            int depth, const QuadratureOptions& options, Accumulator& acc) {
  const double mid = 0.5 * (a + b);
  const double left = apply_rule(f, a, mid);
  const double right = apply_rule(f, mid, b);
  const double diff = std::abs(left + right - whole);
  if (diff <= tol || (depth > 0 && diff <= 1e-15 * std::abs(whole))) {
    acc.add(left);
    acc.add(right);
    acc.err += diff;
    acc.panels += 2;
    return;
  }
  if (depth >= options.max_depth) {
    std::ostringstream os;
    os << "adaptive quadrature hit depth cap " << options.max_depth << " on [" << a << ", " << b
       << "] with difference " << diff;
    throw QuadratureFailure(os.str());
  }
  refine(f, a, mid, left, 0.5 * tol, depth + 1, options, acc);
  refine(f, mid, b, right, 0.5 * tol, depth + 1, options, acc);
}

}  // namespace

const GaussLegendreRule& gauss_legendre15() {
  static const GaussLegendreRule rule = build_rule();
  return rule;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  if (!(options.abs_tol > 0.0)) throw QuadratureFailure("quadrature tolerance must be positive");
  const int panels = options.initial_panels < 1 ? 1 : options.initial_panels;
  const double width = (b - a) / panels;
  const double panel_tol = options.abs_tol / panels;
  Accumulator acc;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double hi = p + 1 == panels ? b : a + (p + 1) * width;
    refine(f, lo, hi, apply_rule(f, lo, hi), panel_tol, 0, options, acc);
  }
  return QuadratureResult{acc.sum, acc.err, acc.panels};
}

}  // namespace fracsource
