#include "oracles.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oracle {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v = linspace(std::log10(a), std::log10(b), n);
  for (double& x : v) x = std::pow(10.0, x);
  return v;
}

std::vector<MLRecord> ml_fixture() {
  std::ifstream in(std::string(FRACSOURCE_FIXTURE_DIR) + "/ml_reference.txt");
  if (!in) throw std::runtime_error("missing ml_reference.txt");
  std::vector<MLRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    MLRecord r{};
    std::string value;
    ss >> r.alpha >> r.beta >> r.rho >> r.x >> value;
    r.value = std::strtold(value.c_str(), nullptr);
    out.push_back(r);
  }
  return out;
}

double quad_ml_series(double alpha, double beta, int rho, double x) {
  // Terms (rho)_k / k! * x^k / Gamma(alpha k + beta), where (rho)_k / k! is 1 or k + 1.
  __float128 sum = 0, xk = 1;
  const __float128 a = alpha, b = beta, z = x;
  int small = 0;
  for (int k = 0; k < 5000; ++k) {
    if (k > 0) xk *= z;
    const __float128 arg = a * k + b;
    __float128 rg;
    if (arg <= 0 && floorq(arg) == arg)
      rg = 0;
    else
      rg = 1 / tgammaq(arg);
    const __float128 poch = rho == 2 ? static_cast<__float128>(k + 1) : static_cast<__float128>(1);
    const __float128 term = poch * xk * rg;
    sum += term;
    if (k > 5 && fabsq(term) < 1e-30 * fmaxq(1, fabsq(sum))) {
      if (++small >= 3) break;
    } else {
      small = 0;
    }
  }
  return static_cast<double>(sum);
}

double quad_erfcx(double x) {
  const __float128 q = x;
  return static_cast<double>(expq(q * q) * erfcq(q));
}

double quad_gamma(double x) { return static_cast<double>(tgammaq(static_cast<__float128>(x))); }

double rl_integral(const std::function<double(double)>& g, double a, double t) {
  // I^a g(t) = 1/Gamma(a+1) int_0^{t^a} g(t - v^{1/a}) dv, tanh-sinh on [0, t^a].
  const double V = std::pow(t, a);
  const double h = 1.0 / 64.0;
  long double sum = 0.0L;
  for (int k = -448; k <= 448; ++k) {
    const double u = 0.5 * M_PI * std::sinh(k * h);
    const double w = h * 0.25 * M_PI * std::cosh(k * h) / (std::cosh(u) * std::cosh(u));
    const double d = 1.0 / (1.0 + std::exp(2.0 * std::abs(u)));  // distance to the nearer end of [0, 1]
    if (d == 0.0 || w == 0.0) continue;
    // Near v = t^a rebuild s = t (1 - (1-d)^{1/a}) without cancellation.
    const double s = u < 0.0 ? t - std::pow(V * d, 1.0 / a) : -t * std::expm1(std::log1p(-d) / a);
    sum += static_cast<long double>(w) * g(s);
  }
  return static_cast<double>(sum) * V / std::tgamma(a + 1.0);
}

namespace {

using Vec = std::vector<double>;

struct HeatRhs {
  int M;
  double h;
  Vec f;

  // Unknowns u_0 .. u_{M-1}; u_M = 0. Ghost point from u_x(0) = u_x(1):
  // (u_1 - u_{-1}) / 2h = (3 u_M - 4 u_{M-1} + u_{M-2}) / 2h.
  void operator()(const Vec& u, Vec& du) const {
    auto at = [&](int j) { return j >= M ? 0.0 : u[static_cast<std::size_t>(j)]; };
    const double ghost = at(1) - (3.0 * at(M) - 4.0 * at(M - 1) + at(M - 2));
    const double inv = 1.0 / (h * h);
    for (int j = 0; j < M; ++j) {
      const double left = j == 0 ? ghost : at(j - 1);
      du[static_cast<std::size_t>(j)] = (left - 2.0 * at(j) + at(j + 1)) * inv + f[static_cast<std::size_t>(j)];
    }
  }
};

}  // namespace

HeatSolution heat_method_of_lines(const std::function<double(double)>& f, const std::function<double(double)>& u0,
                                  int M, const std::vector<double>& times, double rtol) {
  HeatRhs rhs{M, 1.0 / M, Vec(static_cast<std::size_t>(M))};
  HeatSolution out;
  Vec u(static_cast<std::size_t>(M));
  for (int j = 0; j <= M; ++j) out.x.push_back(static_cast<double>(j) / M);
  for (int j = 0; j < M; ++j) {
    rhs.f[static_cast<std::size_t>(j)] = f(out.x[static_cast<std::size_t>(j)]);
    u[static_cast<std::size_t>(j)] = u0(out.x[static_cast<std::size_t>(j)]);
  }

  // Dormand-Prince 5(4) tableau.
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                      e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2;
  (void)c3;
  (void)c4;
  (void)c5;

  const std::size_t n = u.size();
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), next(n);
  double t = 0.0;
  double dt = 1e-7;
  rhs(u, k1);
  for (double target : times) {
    while (t < target) {
      const double step = std::min(dt, target - t);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + step * a21 * k1[i];
      rhs(tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + step * (a31 * k1[i] + a32 * k2[i]);
      rhs(tmp, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + step * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      rhs(tmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = u[i] + step * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      rhs(tmp, k5);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = u[i] + step * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      rhs(tmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        next[i] = u[i] + step * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      rhs(next, k7);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double ei = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = 1e-14 + rtol * std::max(std::abs(u[i]), std::abs(next[i]));
        err = std::max(err, std::abs(ei) / sc);
      }
      if (err <= 1.0) {
        t += step;
        u.swap(next);
        k1.swap(k7);  // first-same-as-last
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      dt = step * factor;
    }
    Vec row(u);
    row.push_back(0.0);
    out.u.push_back(row);
  }
  return out;
}

}  // namespace oracle
