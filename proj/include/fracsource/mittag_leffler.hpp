#pragma once

// Prabhakar generalized Mittag-Leffler function
//
//   E^rho_{alpha,beta}(x) = sum_k Gamma(rho+k) / (Gamma(rho) Gamma(alpha k + beta)) x^k / k!
//
// for real arguments, 0 < alpha <= 2, any real beta and rho in {1, 2}. The
// accuracy contract (|true - value| <= est_abs_error <= tol) holds for x <= 0;
// positive x is accepted by the series regime only.
//
// Regimes, selected on the scaled radius R = |x|^(1/alpha):
//   series      R < kAsymptoticRadius. Summed in double when the terms stay
//               small, otherwise in MPFR with enough bits to absorb the
//               cancellation between alternating terms.
//   asymptotic  R >= kAsymptoticRadius, rho = 1. Algebraic expansion
//               -sum_k x^-k / Gamma(beta - alpha k), plus the oscillating
//               exponential pair when alpha >= 1.
//   recurrence  rho = 2 and |x| > kRho2SeriesRadius, through
//               alpha x E^2_{a,b}(x) = (1+a-b) E_{a,b-a}(x) + E_{a,b-a-1}(x).

namespace fracsource {

enum class MLRegime { series, asymptotic, recurrence };

const char* to_string(MLRegime regime);

struct MLQuery {
  double alpha = 1.0;
  double beta = 1.0;
  int rho = 1;
  double x = 0.0;
};

struct MLResult {
  double value = 0.0;
  double est_abs_error = 0.0;
  MLRegime regime = MLRegime::series;
};

inline constexpr double kDefaultMLTol = 1e-13;
inline constexpr double kAsymptoticRadius = 40.0;
inline constexpr double kRho2SeriesRadius = 1.0;
inline constexpr int kSeriesTermCap = 2000;

// |x|^(1/alpha): the size of the exponential scale hidden in E_{alpha,beta}(x).
double scaled_radius(double alpha, double x);

MLResult ml_series(const MLQuery& q, double tol = kDefaultMLTol);
MLResult ml_asymptotic(const MLQuery& q, double tol = kDefaultMLTol);
MLResult reduce_rho2(const MLQuery& q, double tol = kDefaultMLTol);
MLResult ml_eval(const MLQuery& q, double tol = kDefaultMLTol);

// Value-only shorthands for E_{alpha,beta}(x) and E^2_{alpha,beta}(x).
double mittag_leffler(double alpha, double beta, double x, double tol = kDefaultMLTol);
double mittag_leffler2(double alpha, double beta, double x, double tol = kDefaultMLTol);

// |lambda t^a E_{a,a+b}(-lambda t^a) - (1/Gamma(b) - E_{a,b}(-lambda t^a))|
double recurrence_residual(double alpha, double beta, double lambda, double t);

// True iff recurrence_residual <= tol * max(1, |1/Gamma(beta)|).
bool check_recurrence(double alpha, double beta, double lambda, double t, double tol);

}  // namespace fracsource
