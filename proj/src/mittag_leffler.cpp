#include "fracsource/mittag_leffler.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "fracsource/errors.hpp"
#include "fracsource/gamma.hpp"

namespace fracsource {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Relative error of one double-precision series term (pow times Lanczos 1/Gamma).
constexpr double kTermRelErr = 4e-15;
// Truncation is pushed this far below tol so that rounding owns the error budget.
constexpr double kTruncationMargin = 1e-3;

std::string describe(const MLQuery& q) {
  std::ostringstream os;
  os.precision(17);
  os << "(alpha=" << q.alpha << ", beta=" << q.beta << ", rho=" << q.rho << ", x=" << q.x << ")";
  return os.str();
}

void validate(const MLQuery& q, double tol) {
  if (!(q.alpha > 0.0) || q.alpha > 2.0) {
    throw DomainError("Mittag-Leffler: alpha must lie in (0, 2], got " + describe(q));
  }
  if (q.rho != 1 && q.rho != 2) throw DomainError("Mittag-Leffler: rho must be 1 or 2, got " + describe(q));
  if (!std::isfinite(q.beta) || !std::isfinite(q.x)) {
    throw DomainError("Mittag-Leffler: non-finite argument " + describe(q));
  }
  if (!(tol > 0.0)) throw DomainError("Mittag-Leffler: tol must be positive");
}

bool is_nonpositive_integer(double y) { return y <= 0.0 && y == std::floor(y); }

// log|1/Gamma(y)|, -inf at the poles of Gamma.
double log_abs_rgamma(double y) {
  if (is_nonpositive_integer(y)) return -std::numeric_limits<double>::infinity();
  return -std::lgamma(y);
}

// log of an upper bound for |1/Gamma(y)| that never vanishes. Used to drive
// stopping rules where exact zeros of 1/Gamma would otherwise end a loop early.
// For y <= 1/2 this is |sin(pi y)| Gamma(1-y)/pi <= Gamma(1-y)/pi.
double log_rgamma_bound(double y) {
  if (y > 0.5) return -std::lgamma(y);
  return std::lgamma(1.0 - y) - std::log(std::numbers::pi);
}

double series_coef(int rho, int k) { return rho == 2 ? static_cast<double>(k + 1) : 1.0; }

int term_cap(double alpha, double radius) {
  const double scaled = 10.0 * radius / alpha + 100.0;
  return static_cast<int>(std::min(1e7, std::max<double>(kSeriesTermCap, scaled)));
}

struct SeriesShape {
  double log_max_term = -std::numeric_limits<double>::infinity();
  int peak = 0;
};

// Locates the largest term of the series. log|term_k| is concave in k once
// alpha k + beta > 2, so the first decrease after that point ends the scan.
SeriesShape series_shape(const MLQuery& q, int cap) {
  SeriesShape shape;
  const double ax = std::abs(q.x);
  if (ax == 0.0) {
    shape.log_max_term = log_abs_rgamma(q.beta);
    return shape;
  }
  const double lx = std::log(ax);
  double prev = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= cap; ++k) {
    const double y = q.alpha * k + q.beta;
    const double lt = std::log(series_coef(q.rho, k)) + k * lx + log_abs_rgamma(y);
    if (lt > shape.log_max_term) {
      shape.log_max_term = lt;
      shape.peak = k;
    }
    if (y > 2.0 && lt < prev) break;
    prev = lt;
  }
  return shape;
}

double stop_threshold(double tol, double partial) {
  return kTruncationMargin * tol * std::min(1.0, std::max(std::abs(partial), 1e-3));
}

// Neumaier summation.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Tail estimate from the last two terms once the ratio has settled below 1.
double tail_bound(double last, double before_last) {
  const double a = std::abs(last);
  const double b = std::abs(before_last);
  if (b > 0.0 && a < b) {
    const double q = a / b;
    if (q < 0.9) return a * q / (1.0 - q) + a;
  }
  return 10.0 * a;
}

bool series_double(const MLQuery& q, double tol, const SeriesShape& shape, int cap, MLResult& out) {
  const double ax = std::abs(q.x);
  const bool negative = q.x < 0.0;
  const double lx = ax > 0.0 ? std::log(ax) : 0.0;
  CompensatedSum sum;
  double abs_sum = 0.0;
  double last = 0.0;
  double before_last = 0.0;
  int small = 0;
  bool converged = false;
  for (int k = 0; k <= cap; ++k) {
    const double y = q.alpha * k + q.beta;
    double term = 0.0;
    if (k == 0) {
      term = rgamma(y);
    } else if (ax > 0.0) {
      const double rg = rgamma(y);
      if (rg != 0.0) {
        const double p = std::pow(ax, k);
        if (std::isfinite(p) && std::isfinite(rg)) {
          term = series_coef(q.rho, k) * p * rg;
        } else {
          const double mag = std::exp(std::log(series_coef(q.rho, k)) + k * lx + log_abs_rgamma(y));
          term = std::copysign(mag, rg);
        }
        if (negative && (k % 2 == 1)) term = -term;
      }
    }
    sum.add(term);
    abs_sum += std::abs(term);
    before_last = last;
    last = term;
    if (ax == 0.0) {
      converged = true;
      break;
    }
    const bool past_peak = k > shape.peak && y > 1.0;
    if (past_peak && std::abs(term) <= stop_threshold(tol, sum.value())) {
      if (++small >= 3) {
        converged = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  if (!converged) return false;
  const double value = sum.value();
  const double tail = ax == 0.0 ? 0.0 : tail_bound(last, before_last);
  const double est = tail + kTermRelErr * abs_sum + kEps * std::abs(value);
  if (est > tol) return false;
  out = MLResult{value, est, MLRegime::series};
  return true;
}

// Owning wrapper around mpfr_t.
class Mp {
 public:
  explicit Mp(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mp() { mpfr_clear(v_); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

MLResult series_mpfr(const MLQuery& q, double tol, const SeriesShape& shape, int cap) {
  const double threshold_floor = kTruncationMargin * tol * 1e-3;
  const double needed = (std::max(shape.log_max_term, 0.0) - std::log(threshold_floor)) / std::numbers::ln2;
  if (needed > 20000.0) {
    throw NonConvergence("Mittag-Leffler series: cancellation too severe at " + describe(q));
  }
  const auto prec = static_cast<mpfr_prec_t>(64 + std::ceil(needed));
  constexpr mpfr_rnd_t rnd = MPFR_RNDN;

  Mp alpha(prec), beta(prec), x(prec), y(prec), g(prec), power(prec), term(prec), sum(prec);
  mpfr_set_d(alpha.get(), q.alpha, rnd);
  mpfr_set_d(beta.get(), q.beta, rnd);
  mpfr_set_d(x.get(), q.x, rnd);
  mpfr_set_ui(power.get(), 1, rnd);
  mpfr_set_zero(sum.get(), 1);

  double abs_sum = 0.0;
  double last = 0.0;
  double before_last = 0.0;
  int small = 0;
  bool converged = false;
  for (int k = 0; k <= cap; ++k) {
    if (k > 0) mpfr_mul(power.get(), power.get(), x.get(), rnd);
    mpfr_mul_ui(y.get(), alpha.get(), static_cast<unsigned long>(k), rnd);
    mpfr_add(y.get(), y.get(), beta.get(), rnd);
    const double yd = q.alpha * k + q.beta;
    if (mpfr_sgn(y.get()) <= 0 && mpfr_integer_p(y.get())) {
      mpfr_set_zero(term.get(), 1);
    } else {
      mpfr_gamma(g.get(), y.get(), rnd);
      mpfr_div(term.get(), power.get(), g.get(), rnd);
      if (q.rho == 2) mpfr_mul_ui(term.get(), term.get(), static_cast<unsigned long>(k + 1), rnd);
    }
    mpfr_add(sum.get(), sum.get(), term.get(), rnd);
    const double td = mpfr_get_d(term.get(), rnd);
    abs_sum += std::abs(td);
    before_last = last;
    last = td;
    if (q.x == 0.0) {
      converged = true;
      break;
    }
    const bool past_peak = k > shape.peak && yd > 1.0;
    if (past_peak && std::abs(td) <= stop_threshold(tol, mpfr_get_d(sum.get(), rnd))) {
      if (++small >= 3) {
        converged = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  if (!converged) {
    throw NonConvergence("Mittag-Leffler series: term cap reached at " + describe(q));
  }
  const double value = mpfr_get_d(sum.get(), rnd);
  const double tail = q.x == 0.0 ? 0.0 : tail_bound(last, before_last);
  const double rounding = std::ldexp(abs_sum, -static_cast<int>(prec) + 8) + kEps * std::abs(value);
  const double est = tail + rounding;
  if (est > tol) {
    throw NonConvergence("Mittag-Leffler series: error estimate above tol at " + describe(q));
  }
  return MLResult{value, est, MLRegime::series};
}

}  // namespace

const char* to_string(MLRegime regime) {
  switch (regime) {
    case MLRegime::series:
      return "series";
    case MLRegime::asymptotic:
      return "asymptotic";
    case MLRegime::recurrence:
      return "recurrence";
  }
  return "unknown";
}

double scaled_radius(double alpha, double x) {
  if (x == 0.0) return 0.0;
  return std::exp(std::log(std::abs(x)) / alpha);
}

MLResult ml_series(const MLQuery& q, double tol) {
  validate(q, tol);
  const int cap = term_cap(q.alpha, scaled_radius(q.alpha, q.x));
  const SeriesShape shape = series_shape(q, cap);
  // Cheap path first; it declines when rounding would exceed tol.
  if (shape.log_max_term <= std::log(1e3)) {
    MLResult out;
    if (series_double(q, tol, shape, cap, out)) return out;
  }
  return series_mpfr(q, tol, shape, cap);
}

MLResult ml_asymptotic(const MLQuery& q, double tol) {
  validate(q, tol);
  if (q.rho != 1) throw DomainError("Mittag-Leffler asymptotics are for rho = 1 only " + describe(q));
  if (!(q.x < 0.0)) throw RegimeError("Mittag-Leffler asymptotics need x < 0, got " + describe(q));

  const double r = -q.x;
  const double lr = std::log(r);
  const double radius = std::exp(lr / q.alpha);

  // Exponential contributions from the poles zeta = R e^{+-i pi/alpha}, present for alpha >= 1.
  double exponential = 0.0;
  if (q.alpha >= 1.0) {
    const double power = std::pow(radius, 1.0 - q.beta);
    if (q.alpha == 1.0) {
      // zeta = -r on the cut; each side carries half weight.
      exponential = power * std::exp(-r) * sinpi(1.5 - q.beta);  // cos(pi (1 - beta))
    } else {
      const double theta = std::numbers::pi / q.alpha;
      const double phase = (1.0 - q.beta) * theta + radius * std::sin(theta);
      exponential = (2.0 / q.alpha) * power * std::exp(radius * std::cos(theta)) * std::cos(phase);
    }
  }

  CompensatedSum sum;
  sum.add(exponential);
  double abs_sum = std::abs(exponential);
  double scale = 0.0;
  double prev_bound = std::numeric_limits<double>::infinity();
  const int cap = term_cap(q.alpha, radius);
  for (int k = 1; k <= cap; ++k) {
    const double y = q.beta - q.alpha * k;
    const double lb = log_rgamma_bound(y) - k * lr;
    if (scale == 0.0 && std::isfinite(lb)) scale = std::exp(lb);
    const double target = kTruncationMargin * tol * std::min(1.0, std::max(scale, 1e-3));
    if (lb <= std::log(target)) {
      const double est = std::exp(lb) + 4.0 * kEps * abs_sum;
      return MLResult{sum.value(), est, MLRegime::asymptotic};
    }
    if (y < -1.0 && lb > prev_bound) {
      // Past the smallest term: accept only if it already met tol.
      const double est = std::exp(prev_bound) + 4.0 * kEps * abs_sum;
      if (est <= tol) return MLResult{sum.value(), est, MLRegime::asymptotic};
      throw RegimeError("Mittag-Leffler asymptotics diverge before tol at " + describe(q));
    }
    if (y < -1.0) prev_bound = lb;
    const double rg = rgamma(y);
    if (rg == 0.0) continue;
    double mag = std::pow(r, -k) * std::abs(rg);
    if (!std::isfinite(mag) || mag == 0.0) mag = std::exp(log_abs_rgamma(y) - k * lr);
    // term = -x^{-k} / Gamma(y) = -(-1)^k r^{-k} / Gamma(y)
    double term = std::copysign(mag, rg);
    if (k % 2 == 0) term = -term;
    sum.add(term);
    abs_sum += std::abs(term);
  }
  throw RegimeError("Mittag-Leffler asymptotics: term cap reached at " + describe(q));
}

MLResult reduce_rho2(const MLQuery& q, double tol) {
  validate(q, tol);
  if (q.rho != 2) throw DomainError("reduce_rho2 needs rho = 2, got " + describe(q));
  if (q.x == 0.0 || std::abs(q.x) <= kRho2SeriesRadius) return ml_series(q, tol);

  const double shift = 1.0 + q.alpha - q.beta;
  const double denom = q.alpha * std::abs(q.x);
  const double sub_tol = 0.25 * tol * denom / (std::abs(shift) + 1.0);
  const MLResult e1 = ml_eval(MLQuery{q.alpha, q.beta - q.alpha, 1, q.x}, sub_tol);
  const MLResult e2 = ml_eval(MLQuery{q.alpha, q.beta - q.alpha - 1.0, 1, q.x}, sub_tol);
  const double numer = shift * e1.value + e2.value;
  const double value = numer / (q.alpha * q.x);
  const double est = (std::abs(shift) * e1.est_abs_error + e2.est_abs_error) / denom +
                     4.0 * kEps * (std::abs(shift * e1.value) + std::abs(e2.value)) / denom;
  return MLResult{value, est, MLRegime::recurrence};
}

MLResult ml_eval(const MLQuery& q, double tol) {
  validate(q, tol);
  if (q.rho == 2) return reduce_rho2(q, tol);
  if (q.x < 0.0 && scaled_radius(q.alpha, q.x) >= kAsymptoticRadius) {
    try {
      return ml_asymptotic(q, tol);
    } catch (const RegimeError&) {
      // falls through to the series
    }
  }
  return ml_series(q, tol);
}

double mittag_leffler(double alpha, double beta, double x, double tol) {
  return ml_eval(MLQuery{alpha, beta, 1, x}, tol).value;
}

double mittag_leffler2(double alpha, double beta, double x, double tol) {
  return ml_eval(MLQuery{alpha, beta, 2, x}, tol).value;
}

double recurrence_residual(double alpha, double beta, double lambda, double t) {
  if (lambda < 0.0 || t < 0.0) throw DomainError("recurrence_residual: lambda and t must be >= 0");
  const double s = lambda * std::pow(t, alpha);
  const double ml_tol = 1e-13 / std::max(1.0, s);
  const double lhs = s == 0.0 ? 0.0 : s * mittag_leffler(alpha, alpha + beta, -s, ml_tol);
  const double rhs = rgamma(beta) - mittag_leffler(alpha, beta, -s, ml_tol);
  return std::abs(lhs - rhs);
}

bool check_recurrence(double alpha, double beta, double lambda, double t, double tol) {
  const double scale = std::max(1.0, std::abs(rgamma(beta)));
  return recurrence_residual(alpha, beta, lambda, t) <= tol * scale;
}

}  // namespace fracsource
