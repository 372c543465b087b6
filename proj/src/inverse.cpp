#include "fracsource/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracsource/errors.hpp"

namespace fracsource {

namespace {

// mu = 1 + alpha in every mode system.
double system_mu(const FractionalOrders& orders) { return 1.0 + orders.alpha; }

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

double family_slope(const std::vector<double>& coefs, double floor) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < coefs.size(); ++i) {
    if (std::abs(coefs[i]) > floor) {
      xs.push_back(std::log(lambda_n(static_cast<int>(i) + 1)));
      ys.push_back(std::log(std::abs(coefs[i])));
    }
  }
  return fit_slope(xs, ys);
}

double worst_slope(std::initializer_list<double> slopes) {
  double worst = std::numeric_limits<double>::quiet_NaN();
  for (double s : slopes) {
    if (std::isnan(s)) continue;
    if (std::isnan(worst) || s > worst) worst = s;
  }
  return worst;
}

}  // namespace

const std::array<const char*, 6>& HypothesisReport::residual_names() {
  static const std::array<const char*, 6> names = {"z_flux", "z_at_1", "z_dd_at_1", "h_flux", "h_at_1", "h_dd_at_1"};
  return names;
}

std::vector<std::string> HypothesisReport::warnings(double tol) const {
  static const std::array<const char*, 6> text = {"z'(0) != z'(1)", "z(1) != 0", "z''(1) != 0",
                                                  "h'(0) != h'(1)", "h(1) != 0", "h''(1) != 0"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < boundary_residuals.size(); ++i) {
    if (boundary_residuals[i] > tol) {
      std::ostringstream os;
      os.precision(6);
      os << text[i] << " (residual " << boundary_residuals[i] << ")";
      out.push_back(os.str());
    }
  }
  return out;
}

double coefficient_decay_exponent(const SeriesField& coefficients, double floor) {
  return worst_slope({family_slope(coefficients.c1, floor), family_slope(coefficients.c2, floor)});
}

HypothesisReport check_hypotheses(const MeasurementPair& m, int N, const AnalyzeOptions& options) {
  HypothesisReport r;
  auto fill = [&](const SampledFunction& g, std::size_t offset) {
    r.boundary_residuals[offset + 0] = std::abs(g.derivative(1, 0.0) - g.derivative(1, 1.0));
    r.boundary_residuals[offset + 1] = std::abs(g(1.0));
    r.boundary_residuals[offset + 2] = std::abs(g.derivative(2, 1.0));
  };
  fill(m.z, 0);
  fill(m.h, 3);
  r.z_decay_exponent = coefficient_decay_exponent(analyze(m.z, N, options));
  r.h_decay_exponent = coefficient_decay_exponent(analyze(m.h, N, options));
  r.coef_decay_exponent = worst_slope({r.z_decay_exponent, r.h_decay_exponent});
  r.ingestion_error = m.ingestion_error;
  return r;
}

SolutionField solve_modes(const SeriesField& zc, const SeriesField& hc, const FractionalOrders& orders,
                          const TimePair& times) {
  orders.validate();
  times.validate();
  if (zc.N() != hc.N()) throw IndexError("z and h coefficient fields differ in truncation");
  const int N = zc.N();
  const double mu = system_mu(orders);
  SeriesField source = SeriesField::zeros(N);
  SeriesField trace = SeriesField::zeros(N);

  const ModeCoefficients zero = solve_mode1(assemble(orders, mu, 0.0, times), hc.c10, zc.c10);
  source.c10 = zero.f;
  trace.c10 = zero.c;
  for (int n = 1; n <= N; ++n) {
    const double l = lambda_n(n);
    const ModeMatrix A = assemble(orders, mu, l * l, times);
    const ModeCoefficients one = solve_mode1(A, hc.c1[n - 1], zc.c1[n - 1]);
    const double dT = coupling_dn(orders, l, one, times.T);
    const double dTm = coupling_dn(orders, l, one, times.Tm);
    const ModeCoefficients two = solve_mode2(A, hc.c2[n - 1], zc.c2[n - 1], dT, dTm);
    source.c1[n - 1] = one.f;
    trace.c1[n - 1] = one.c;
    source.c2[n - 1] = two.f;
    trace.c2[n - 1] = two.c;
  }
  return SolutionField::from_coefficients(orders, times, source, trace);
}

ReconstructionResult reconstruct(const MeasurementPair& m, const FractionalOrders& orders, int N,
                                 const AnalyzeOptions& options) {
  if (N < 1) throw IndexError("reconstruct needs N >= 1");
  orders.validate();
  m.times.validate();
  ReconstructionResult r;
  r.z_coefficients = analyze(m.z, N, options);
  r.h_coefficients = analyze(m.h, N, options);
  r.solution = solve_modes(r.z_coefficients, r.h_coefficients, orders, m.times);
  r.source = r.solution.source();

  // Boundary residuals only; the decay fit reuses the coefficients above.
  HypothesisReport& d = r.diagnostics;
  auto fill = [&](const SampledFunction& g, std::size_t offset) {
    d.boundary_residuals[offset + 0] = std::abs(g.derivative(1, 0.0) - g.derivative(1, 1.0));
    d.boundary_residuals[offset + 1] = std::abs(g(1.0));
    d.boundary_residuals[offset + 2] = std::abs(g.derivative(2, 1.0));
  };
  fill(m.z, 0);
  fill(m.h, 3);
  d.z_decay_exponent = coefficient_decay_exponent(r.z_coefficients);
  d.h_decay_exponent = coefficient_decay_exponent(r.h_coefficients);
  d.coef_decay_exponent = worst_slope({d.z_decay_exponent, d.h_decay_exponent});
  d.ingestion_error = m.ingestion_error;
  return r;
}

RoundTripError round_trip_errors(const FractionalOrders& orders, const TimePair& times, int N,
                                 const SeriesField& planted_source, const SeriesField& planted_trace,
                                 const AnalyzeOptions& options) {
  for (const double v : {planted_source.c10, planted_trace.c10}) {
    if (!std::isfinite(v)) throw DomainError("planted coefficients must be finite");
  }
  const SolutionField planted = SolutionField::from_coefficients(orders, times, planted_source, planted_trace);
  const SeriesField at_tm = snapshot(planted, times.Tm);
  const SeriesField at_t = snapshot(planted, times.T);

  MeasurementPair m;
  m.z = SampledFunction::from_callable([at_tm](double x) { return synthesize(at_tm, x); });
  m.h = SampledFunction::from_callable([at_t](double x) { return synthesize(at_t, x); });
  m.times = times;
  m.label = "round-trip";

  const SeriesField zc = analyze(m.z, N, options);
  const SeriesField hc = analyze(m.h, N, options);
  const SolutionField recovered = solve_modes(zc, hc, orders, times);

  RoundTripError err;
  for (const ModeIndex idx : mode_indices(N)) {
    const ModeState& s = recovered.mode(idx);
    err.source = std::max(err.source, std::abs(s.coefs.f - planted_source.at(idx)));
    err.trace = std::max(err.trace, std::abs(s.coefs.c - planted_trace.at(idx)));
  }
  return err;
}

double round_trip(const FractionalOrders& orders, const TimePair& times, int N, const SeriesField& planted_source,
                  const SeriesField& planted_trace, const AnalyzeOptions& options) {
  return round_trip_errors(orders, times, N, planted_source, planted_trace, options).max();
}

}  // namespace fracsource
