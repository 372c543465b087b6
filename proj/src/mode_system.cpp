#include "fracsource/mode_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracsource/errors.hpp"
#include "fracsource/gamma.hpp"
#include "fracsource/mittag_leffler.hpp"

namespace fracsource {

namespace {

void require_nonsingular(const ModeMatrix& m) {
  if (!(m.det > 0.0) || m.det < kSingularThreshold) {
    std::ostringstream os;
    os.precision(17);
    os << "mode matrix is singular (det=" << m.det << ", lambda=" << m.lambda << ")";
    throw SingularSystem(os.str());
  }
}

// log|E_{1,b}(-r)| from the exponential term r^(1-b) e^(-r) cos(pi(1-b)), the
// only part left once the algebraic expansion vanishes and the value underflows.
double log_abs_ml_alpha1(double beta, double r) {
  return (1.0 - beta) * std::log(r) - r + std::log(std::abs(cospi(1.0 - beta)));
}

double log_abs_entry(double value, double alpha, double beta, double weight_log, double r) {
  if (std::abs(value) >= std::numeric_limits<double>::min()) return std::log(std::abs(value));
  if (alpha == 1.0 && r > 0.0) return weight_log + log_abs_ml_alpha1(beta, r);
  return -std::numeric_limits<double>::infinity();
}

// Entries are positive for mu >= alpha and gamma >= alpha, so det > 0 iff
// log a00 + log a11 > log a01 + log a10.
double log_determinant(const ModeMatrix& m) {
  if (m.det >= std::numeric_limits<double>::min()) return std::log(m.det);
  const auto& L = m.log_entries;
  for (const auto& row : m.entries)
    for (double v : row)
      if (!(v >= 0.0)) return -std::numeric_limits<double>::infinity();
  const double plus = L[0][0] + L[1][1];
  const double minus = L[0][1] + L[1][0];
  const double gap = plus - minus;
  // Each log carries ~1e-13 relative error from the ML tolerance.
  if (!std::isfinite(gap) || gap <= 1e-10 * std::max({1.0, std::abs(plus), std::abs(minus)}))
    return -std::numeric_limits<double>::infinity();
  return plus + std::log1p(-std::exp(-gap));
}

}  // namespace

void FractionalOrders::validate() const {
  if (!(alpha > 0.0 && alpha <= gamma && gamma <= 1.0)) {
    std::ostringstream os;
    os << "fractional orders must satisfy 0 < alpha <= gamma <= 1 (alpha=" << alpha << ", gamma=" << gamma << ")";
    throw DomainError(os.str());
  }
}

void TimePair::validate() const {
  if (!(Tm > 0.0 && Tm < T) || !std::isfinite(T)) {
    std::ostringstream os;
    os << "times must satisfy 0 < Tm < T (Tm=" << Tm << ", T=" << T << ")";
    throw DomainError(os.str());
  }
}

double diff_of_products(double a, double b, double c, double d) {
  const double w = c * d;
  const double e = std::fma(-c, d, w);
  const double f = std::fma(a, b, -w);
  return f + e;
}

ModeMatrix assemble(const FractionalOrders& orders, double mu, double lambda, const TimePair& times) {
  orders.validate();
  times.validate();
  if (mu < 2.0 * orders.alpha) throw DomainError("assemble needs mu >= 2 alpha");
  if (!(lambda >= 0.0)) throw DomainError("assemble needs lambda >= 0");
  const double a = orders.alpha;
  const double g = orders.gamma;
  ModeMatrix m;
  auto row = [&](int i, double t) {
    const double ta = std::pow(t, a);
    const double x = -lambda * ta;
    // Entries decay like 1/|x|; keep the tolerance relative to that scale.
    const double tol = kAssemblyMLTol / std::max(1.0, -x);
    m.entries[i] = {ta * mittag_leffler(a, mu, x, tol), std::pow(t, g - 1.0) * mittag_leffler(a, g, x, tol)};
    m.log_entries[i] = {log_abs_entry(m.entries[i][0], a, mu, a * std::log(t), -x),
                        log_abs_entry(m.entries[i][1], a, g, (g - 1.0) * std::log(t), -x)};
  };
  row(0, times.T);
  row(1, times.Tm);
  m.lambda = lambda;
  m.det = diff_of_products(m.entries[0][0], m.entries[1][1], m.entries[0][1], m.entries[1][0]);
  m.log_det = log_determinant(m);
  return m;
}

bool det_positive(const ModeMatrix& m) { return m.log_det > -std::numeric_limits<double>::infinity(); }

double det_scaled(const ModeMatrix& m) {
  require_nonsingular(m);
  return m.lambda > 0.0 ? m.lambda * m.lambda * m.det : m.det;
}

double det_scaled_limit(const FractionalOrders& orders, double mu, const TimePair& times) {
  const double p = orders.gamma - 1.0 - orders.alpha;
  return (std::pow(times.Tm, p) - std::pow(times.T, p)) * rgamma(orders.gamma - orders.alpha) *
         rgamma(mu - orders.alpha);
}

Matrix2 inverse(const ModeMatrix& m) {
  require_nonsingular(m);
  const auto& e = m.entries;
  return Matrix2{{{e[1][1] / m.det, -e[0][1] / m.det}, {-e[1][0] / m.det, e[0][0] / m.det}}};
}

ModeCoefficients solve_mode1(const ModeMatrix& m, double h_coef, double z_coef) {
  if (h_coef == 0.0 && z_coef == 0.0) return ModeCoefficients{};
  require_nonsingular(m);
  const auto& e = m.entries;
  const double f = diff_of_products(e[1][1], h_coef, e[0][1], z_coef) / m.det;
  const double c = diff_of_products(e[0][0], z_coef, e[1][0], h_coef) / m.det;
  return ModeCoefficients{f, c};
}

ModeCoefficients solve_mode2(const ModeMatrix& m, double h2, double z2, double dT, double dTm) {
  return solve_mode1(m, h2 - dT, z2 - dTm);
}

double coupling_dn(const FractionalOrders& orders, double lambda_n, const ModeCoefficients& mode1, double t) {
  if (!(t > 0.0)) throw DomainError("coupling_dn needs t > 0");
  if (!(lambda_n > 0.0)) throw DomainError("coupling_dn needs lambda_n > 0");
  if (mode1.f == 0.0 && mode1.c == 0.0) return 0.0;
  const double a = orders.alpha;
  const double g = orders.gamma;
  const double x = -lambda_n * lambda_n * std::pow(t, a);
  // E^2 decays like 1/x^2.
  const double tol = kAssemblyMLTol / std::max(1.0, x * x);
  double bracket = 0.0;
  if (mode1.f != 0.0) {
    bracket += mode1.f * std::pow(t, 2.0 * a) * mittag_leffler2(a, 2.0 * a + 1.0, x, tol);
  }
  if (mode1.c != 0.0) {
    bracket += mode1.c * std::pow(t, a + g - 1.0) * mittag_leffler2(a, a + g, x, tol);
  }
  return 2.0 * lambda_n * bracket;
}

}  // namespace fracsource
