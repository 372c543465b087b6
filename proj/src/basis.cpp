#include "fracsource/basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracsource/errors.hpp"
#include "fracsource/gamma.hpp"

namespace fracsource {

namespace {

int panels_for_frequency(int n) { return std::max(1, 4 * n); }

// Closed-form <p, psi_idx> for a polynomial p. With l = 2 pi n, sin l = 0 and
// cos l = 1, so C_m = int x^m cos(lx) and S_m = int x^m sin(lx) satisfy
//   C_0 = S_0 = 0,  C_m = -(m/l) S_{m-1},  S_m = -1/l + (m/l) C_{m-1}.
double polynomial_inner_product(const std::vector<double>& a, ModeIndex idx) {
  if (idx.n == 0) {
    double s = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) s += a[m] / static_cast<double>(m + 1);
    return s;
  }
  const double l = lambda_n(idx.n);
  const std::size_t top = a.size() + 1;
  std::vector<double> c(top + 1, 0.0);
  std::vector<double> s(top + 1, 0.0);
  for (std::size_t m = 1; m <= top; ++m) {
    c[m] = -(static_cast<double>(m) / l) * s[m - 1];
    s[m] = -1.0 / l + (static_cast<double>(m) / l) * c[m - 1];
  }
  double sum = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    sum += a[m] * (idx.k == 1 ? c[m] : s[m + 1]);
  }
  return sum;
}

}  // namespace

double lambda_n(int n) { return 2.0 * std::numbers::pi * n; }

void validate(ModeIndex idx) {
  if ((idx.k != 1 && idx.k != 2) || idx.n < 0 || (idx.k == 2 && idx.n == 0)) {
    throw IndexError("invalid mode index (" + std::to_string(idx.k) + "," + std::to_string(idx.n) + ")");
  }
}

std::vector<ModeIndex> mode_indices(int N) {
  std::vector<ModeIndex> out;
  out.reserve(2 * static_cast<std::size_t>(N) + 1);
  out.push_back({1, 0});
  for (int n = 1; n <= N; ++n) {
    out.push_back({1, n});
    out.push_back({2, n});
  }
  return out;
}

double phi(ModeIndex idx, double x) {
  validate(idx);
  if (idx.n == 0) return 2.0 * (1.0 - x);
  return idx.k == 1 ? 4.0 * (1.0 - x) * cospi(2.0 * idx.n * x) : 4.0 * sinpi(2.0 * idx.n * x);
}

double psi(ModeIndex idx, double x) {
  validate(idx);
  if (idx.n == 0) return 1.0;
  return idx.k == 1 ? cospi(2.0 * idx.n * x) : x * sinpi(2.0 * idx.n * x);
}

SeriesField SeriesField::zeros(int N) {
  if (N < 0) throw IndexError("truncation order must be non-negative");
  SeriesField f;
  f.c1.assign(static_cast<std::size_t>(N), 0.0);
  f.c2.assign(static_cast<std::size_t>(N), 0.0);
  return f;
}

double& SeriesField::at(ModeIndex idx) {
  validate(idx);
  if (idx.n > N()) throw IndexError("mode index beyond truncation order");
  if (idx.n == 0) return c10;
  return idx.k == 1 ? c1[idx.n - 1] : c2[idx.n - 1];
}

double SeriesField::at(ModeIndex idx) const {
  validate(idx);
  if (idx.n > N()) throw IndexError("mode index beyond truncation order");
  if (idx.n == 0) return c10;
  return idx.k == 1 ? c1[idx.n - 1] : c2[idx.n - 1];
}

double SeriesField::l1_norm() const {
  double s = std::abs(c10);
  for (double v : c1) s += std::abs(v);
  for (double v : c2) s += std::abs(v);
  return s;
}

double eval_polynomial(const std::vector<double>& coefficients, double x) {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> differentiate_polynomial(const std::vector<double>& coefficients) {
  if (coefficients.size() <= 1) return {0.0};
  std::vector<double> d(coefficients.size() - 1);
  for (std::size_t m = 1; m < coefficients.size(); ++m) d[m - 1] = static_cast<double>(m) * coefficients[m];
  return d;
}

SampledFunction SampledFunction::from_polynomial(std::vector<double> coefficients) {
  SampledFunction g;
  g.eval = [c = coefficients](double x) { return eval_polynomial(c, x); };
  std::vector<double> d = coefficients;
  for (int order = 1; order <= 4; ++order) {
    d = differentiate_polynomial(d);
    g.derivatives.push_back([c = d](double x) { return eval_polynomial(c, x); });
  }
  g.polynomial = std::move(coefficients);
  return g;
}

SampledFunction SampledFunction::from_callable(std::function<double(double)> f) {
  SampledFunction g;
  g.eval = std::move(f);
  return g;
}

double numerical_derivative(const std::function<double(double)>& f, int order, double x, double h) {
  if (order != 1 && order != 2) throw DomainError("numerical_derivative supports orders 1 and 2");
  const bool fits_central = x - 2.0 * h >= 0.0 && x + 2.0 * h <= 1.0;
  if (fits_central) {
    const double fm2 = f(x - 2.0 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2.0 * h);
    if (order == 1) return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
  }
  // One-sided stencil pointing into the interval.
  const double s = x + 4.0 * h <= 1.0 ? h : -h;
  const double f0 = f(x), f1 = f(x + s), f2 = f(x + 2 * s), f3 = f(x + 3 * s), f4 = f(x + 4 * s);
  if (order == 1) return (-25.0 * f0 + 48.0 * f1 - 36.0 * f2 + 16.0 * f3 - 3.0 * f4) / (12.0 * s);
  return (35.0 * f0 - 104.0 * f1 + 114.0 * f2 - 56.0 * f3 + 11.0 * f4) / (12.0 * s * s);
}

double SampledFunction::derivative(int order, double x) const {
  if (order < 1) throw DomainError("derivative order must be >= 1");
  if (static_cast<std::size_t>(order) <= derivatives.size() && derivatives[order - 1]) {
    return derivatives[order - 1](x);
  }
  return numerical_derivative(eval, order, x, order == 1 ? 1e-5 : 1e-3);
}

double inner_product(const SampledFunction& g, ModeIndex idx, const AnalyzeOptions& options) {
  validate(idx);
  if (options.use_polynomial_fast_path && g.polynomial) return polynomial_inner_product(*g.polynomial, idx);
  QuadratureOptions q;
  q.abs_tol = options.quad_tol;
  q.max_depth = options.max_depth;
  q.initial_panels = panels_for_frequency(idx.n);
  return integrate([&](double x) { return g(x) * psi(idx, x); }, 0.0, 1.0, q).value;
}

SeriesField analyze(const SampledFunction& g, int N, const AnalyzeOptions& options) {
  if (N < 1) throw IndexError("analyze needs N >= 1");
  SeriesField field = SeriesField::zeros(N);
  for (const ModeIndex idx : mode_indices(N)) field.at(idx) = inner_product(g, idx, options);
  return field;
}

double synthesize(const SeriesField& field, double x) {
  // Ascending n, k = 1 before k = 2.
  double s = field.c10 * 2.0 * (1.0 - x);
  for (int n = 1; n <= field.N(); ++n) {
    const double y = 2.0 * n * x;
    s += field.c1[n - 1] * 4.0 * (1.0 - x) * cospi(y);
    s += field.c2[n - 1] * 4.0 * sinpi(y);
  }
  return s;
}

std::vector<std::vector<double>> biorthogonality_matrix(int N, const AnalyzeOptions& options) {
  if (N < 1) throw IndexError("biorthogonality_matrix needs N >= 1");
  const auto indices = mode_indices(N);
  std::vector<std::vector<double>> G(indices.size(), std::vector<double>(indices.size(), 0.0));
  QuadratureOptions q;
  q.abs_tol = options.quad_tol;
  q.max_depth = options.max_depth;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = 0; j < indices.size(); ++j) {
      const ModeIndex a = indices[i];
      const ModeIndex b = indices[j];
      q.initial_panels = panels_for_frequency(a.n + b.n);
      G[i][j] = integrate([&](double x) { return phi(a, x) * psi(b, x); }, 0.0, 1.0, q).value;
    }
  }
  return G;
}

}  // namespace fracsource
