#include "fracsource/gamma.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace fracsource {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Gamma(x) for x >= 1/2.
double lanczos(double x) {
  const double xm1 = x - 1.0;
  double a = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
    a += kLanczosCoef[i] / (xm1 + static_cast<double>(i));
  }
  const double t = xm1 + kLanczosG + 0.5;
  // Split the power so t^(x-1/2) does not overflow before exp(-t) pulls it back.
  const double half_pow = std::pow(t, 0.5 * (xm1 + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_pow * (half_pow * std::exp(-t)) * a;
}

// (n-1)! for integer n in [1, 23]; exact through 22!.
bool small_factorial(double x, double& out) {
  if (!(x >= 1.0 && x <= 23.0) || x != std::floor(x)) return false;
  out = 1.0;
  for (int k = 2; k < static_cast<int>(x); ++k) out *= k;
  return true;
}

}  // namespace

double sinpi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x < 0.0) return -sinpi(-x);
  // Every step below is exact in floating point.
  double r = std::fmod(x, 2.0);
  if (r == 0.0 || r == 1.0) return 0.0;
  double sign = 1.0;
  if (r > 1.0) {
    r -= 1.0;
    sign = -1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(std::numbers::pi * r);
}

double cospi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmod(std::abs(x), 2.0);
  if (r > 1.0) r = 2.0 - r;
  double sign = 1.0;
  if (r > 0.5) {
    r = 1.0 - r;
    sign = -1.0;
  }
  if (r == 0.5) return 0.0;
  if (r > 0.25) return sign * std::sin(std::numbers::pi * (0.5 - r));
  return sign * std::cos(std::numbers::pi * r);
}

double gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) return std::numeric_limits<double>::infinity();
  if (x > 171.7) return std::numeric_limits<double>::infinity();
  if (double f; small_factorial(x, f)) return f;
  if (x >= 0.5) return lanczos(x);
#ifdef FRACSOURCE_FAULT_GAMMA_REFLECTION
  // Fault-injection build: drops the sine factor from the reflection formula.
  return std::numbers::pi / lanczos(1.0 - x);
#else
  return std::numbers::pi / (sinpi(x) * lanczos(1.0 - x));
#endif
}

double rgamma(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 171.7) return 0.0;
  if (double f; small_factorial(x, f)) return 1.0 / f;
  if (x >= 0.5) return 1.0 / lanczos(x);
  const double g = lanczos(1.0 - x);
  if (!std::isfinite(g)) return std::copysign(std::numeric_limits<double>::infinity(), sinpi(x));
#ifdef FRACSOURCE_FAULT_GAMMA_REFLECTION
  return g / std::numbers::pi;
#else
  return sinpi(x) * g / std::numbers::pi;
#endif
}

}  // namespace fracsource
