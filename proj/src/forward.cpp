#include "fracsource/forward.hpp"

#include <algorithm>
#include <cmath>

#include "fracsource/errors.hpp"
#include "fracsource/gamma.hpp"
#include "fracsource/mittag_leffler.hpp"

namespace fracsource {

namespace {

void require_positive_time(double t) {
  if (!(t > 0.0)) throw DomainError("solution modes are evaluated for t > 0 only");
}

double ml_tol_for(double x) { return kAssemblyMLTol / std::max(1.0, std::abs(x)); }

std::size_t slot(ModeIndex idx) { return idx.n == 0 ? 0 : static_cast<std::size_t>(2 * idx.n - 2 + idx.k); }

}  // namespace

SolutionField SolutionField::from_coefficients(const FractionalOrders& orders, const TimePair& times,
                                               const SeriesField& source, const SeriesField& trace) {
  if (source.N() != trace.N()) throw IndexError("source and trace fields differ in truncation");
  SolutionField field;
  field.orders = orders;
  field.times = times;
  field.N = source.N();
  for (const ModeIndex idx : mode_indices(field.N)) {
    field.modes.push_back(ModeState{idx, ModeCoefficients{source.at(idx), trace.at(idx)}, lambda_n(idx.n)});
  }
  return field;
}

const ModeState& SolutionField::mode(ModeIndex idx) const {
  validate(idx);
  if (idx.n > N) throw IndexError("mode beyond truncation order");
  return modes.at(slot(idx));
}

SeriesField SolutionField::source() const {
  SeriesField s = SeriesField::zeros(N);
  for (const auto& m : modes) s.at(m.index) = m.coefs.f;
  return s;
}

SeriesField SolutionField::trace() const {
  SeriesField s = SeriesField::zeros(N);
  for (const auto& m : modes) s.at(m.index) = m.coefs.c;
  return s;
}

double u_mode1(const ModeState& state, const FractionalOrders& orders, double t) {
  require_positive_time(t);
  const auto& [f, c] = state.coefs;
  if (f == 0.0 && c == 0.0) return 0.0;
  const double a = orders.alpha;
  const double g = orders.gamma;
  const double ta = std::pow(t, a);
  const double x = -state.lambda_n * state.lambda_n * ta;
  const double tol = ml_tol_for(x);
  double u = 0.0;
  if (f != 0.0) u += f * ta * mittag_leffler(a, a + 1.0, x, tol);
  if (c != 0.0) u += c * std::pow(t, g - 1.0) * mittag_leffler(a, g, x, tol);
  return u;
}

double u_mode2(const ModeState& state2, const ModeState& state1, const FractionalOrders& orders, double t) {
  if (state2.index.k != 2 || state1.index.k != 1 || state2.index.n != state1.index.n || state1.index.n < 1) {
    throw IndexError("u_mode2 needs a (2,n)/(1,n) pair with n >= 1");
  }
  return u_mode1(state2, orders, t) + coupling_dn(orders, state1.lambda_n, state1.coefs, t);
}

SeriesField snapshot(const SolutionField& field, double t) {
  SeriesField s = SeriesField::zeros(field.N);
  s.c10 = u_mode1(field.mode({1, 0}), field.orders, t);
  for (int n = 1; n <= field.N; ++n) {
    const ModeState& m1 = field.mode({1, n});
    const ModeState& m2 = field.mode({2, n});
    s.c1[n - 1] = u_mode1(m1, field.orders, t);
    s.c2[n - 1] = u_mode2(m2, m1, field.orders, t);
  }
  return s;
}

double evaluate_u(const SolutionField& field, double x, double t) { return synthesize(snapshot(field, t), x); }

std::vector<double> evaluate_u_grid(const SolutionField& field, const std::vector<double>& xs, double t) {
  const SeriesField s = snapshot(field, t);
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(synthesize(s, x));
  return out;
}

namespace {

// hD of the mode-1 shape functions, returned as (hD of f-part, hD of c-part) per unit coefficient.
std::pair<double, double> hilfer_derivative_parts(double lambda, const FractionalOrders& orders, double t) {
  const double a = orders.alpha;
  const double g = orders.gamma;
  const double x = -lambda * std::pow(t, a);
  const double tol = ml_tol_for(x);
  const double df = mittag_leffler(a, 1.0, x, tol);
  const double dc = std::pow(t, g - 1.0 - a) * (mittag_leffler(a, g - a, x, tol) - rgamma(g - a));
  return {df, dc};
}

}  // namespace

double residual_mode1(const ModeState& state, const FractionalOrders& orders, double t) {
  require_positive_time(t);
  const double lambda = state.lambda_n * state.lambda_n;
  const auto [df, dc] = hilfer_derivative_parts(lambda, orders, t);
  const double hd = state.coefs.f * df + state.coefs.c * dc;
  return hd + lambda * u_mode1(state, orders, t) - state.coefs.f;
}

double residual_mode2(const ModeState& state2, const ModeState& state1, const FractionalOrders& orders, double t) {
  require_positive_time(t);
  const double a = orders.alpha;
  const double g = orders.gamma;
  const double l = state1.lambda_n;
  const double lambda = l * l;
  const auto [df, dc] = hilfer_derivative_parts(lambda, orders, t);
  double hd = state2.coefs.f * df + state2.coefs.c * dc;

  // hD[t^(2a) E^2_{a,2a+1}] = t^a E_{a,a+1} - L t^(2a) E^2_{a,2a+1}, and
  // hD[t^(a+g-1) E^2_{a,a+g}] = t^(g-1) E_{a,g} - L t^(a+g-1) E^2_{a,a+g}.
  const double ta = std::pow(t, a);
  const double x = -lambda * ta;
  const double tol = ml_tol_for(x);
  const double tol2 = kAssemblyMLTol / std::max(1.0, x * x);
  const auto& [f1, c1] = state1.coefs;
  double hd_coupling = 0.0;
  if (f1 != 0.0) {
    hd_coupling += f1 * (ta * mittag_leffler(a, a + 1.0, x, tol) -
                         lambda * std::pow(t, 2.0 * a) * mittag_leffler2(a, 2.0 * a + 1.0, x, tol2));
  }
  if (c1 != 0.0) {
    hd_coupling += c1 * (std::pow(t, g - 1.0) * mittag_leffler(a, g, x, tol) -
                         lambda * std::pow(t, a + g - 1.0) * mittag_leffler2(a, a + g, x, tol2));
  }
  hd += 2.0 * l * hd_coupling;
  return hd + lambda * u_mode2(state2, state1, orders, t) - 2.0 * l * u_mode1(state1, orders, t) - state2.coefs.f;
}

double flux_mismatch(const SolutionField& field, double t, double h) {
  const SeriesField s = snapshot(field, t);
  auto u = [&](double x) { return synthesize(s, x); };
  return numerical_derivative(u, 1, 0.0, h) - numerical_derivative(u, 1, 1.0, h);
}

}  // namespace fracsource
