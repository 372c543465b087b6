#include "fracsource/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "fracsource/errors.hpp"
#include "fracsource/gamma.hpp"
#include "fracsource/spline.hpp"

namespace fracsource {

MeasurementPair example1_pair(double c, const TimePair& times) {
  if (!std::isfinite(c)) throw DomainError("c must be finite");
  MeasurementPair m;
  m.z = SampledFunction::from_polynomial({2.0, -2.0});
  m.h = SampledFunction::from_polynomial({2.0 * c, -2.0 * c});
  m.times = times;
  m.label = "example1";
  return m;
}

ModeCoefficients example1_closed_form(double c, const FractionalOrders& orders, const TimePair& times) {
  orders.validate();
  times.validate();
  const double a = orders.alpha, g = orders.gamma;
  const double tm_g = std::pow(times.Tm, g - 1.0), t_g = std::pow(times.T, g - 1.0);
  const double tm_a = std::pow(times.Tm, a), t_a = std::pow(times.T, a);
  const double D = diff_of_products(tm_g, t_a, t_g, tm_a);
  ModeCoefficients out;
  out.f = gamma(a + 1.0) * diff_of_products(c, tm_g, 1.0, t_g) / D;
  out.c = gamma(g) * diff_of_products(1.0, t_a, c, tm_a) / D;
  return out;
}

double example1_source_free_c(const FractionalOrders& orders, const TimePair& times) {
  return std::pow(times.Tm / times.T, 1.0 - orders.gamma);
}

double example1_homogeneous_c(const FractionalOrders& orders, const TimePair& times) {
  return std::pow(times.T / times.Tm, orders.alpha);
}

const std::vector<double>& example2_z_polynomial() {
  static const std::vector<double> p = {0.2, -0.6, 1.2, -0.8};
  return p;
}

const std::vector<double>& example2_h_polynomial() {
  static const std::vector<double> p = {1.0, 0.0, -6.0, 8.0, -3.0};
  return p;
}

MeasurementPair example2_pair(const TimePair& times) {
  MeasurementPair m;
  m.z = SampledFunction::from_polynomial(example2_z_polynomial());
  m.h = SampledFunction::from_polynomial(example2_h_polynomial());
  m.times = times;
  m.label = "example2";
  return m;
}

void validate_table(const MeasurementTable& t) {
  const std::size_t n = t.x.size();
  if (t.z.size() != n || t.h.size() != n) throw InputError("measurement columns differ in length");
  if (n < kMinTablePoints) throw InputError("measurement table needs at least 64 rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(t.x[i]) || !std::isfinite(t.z[i]) || !std::isfinite(t.h[i]))
      throw InputError("measurement table contains a non-finite value");
  }
  const double dx = (t.x.back() - t.x.front()) / static_cast<double>(n - 1);
  if (!(dx > 0.0)) throw InputError("measurement grid must be increasing");
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = t.x.front() + dx * static_cast<double>(i);
    if (std::abs(t.x[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected)) + 1e-6 * dx)
      throw InputError("measurement grid must be uniform");
  }
  if (t.x.front() > 1e-12 || t.x.back() < 1.0 - 1e-12) throw InputError("measurement grid must cover [0, 1]");
}

namespace {

SampledFunction spline_function(std::shared_ptr<const CubicSpline> s) {
  SampledFunction g = SampledFunction::from_callable([s](double x) { return (*s)(x); });
  for (int order = 1; order <= 3; ++order) g.derivatives.push_back([s, order](double x) { return s->derivative(order, x); });
  return g;
}

// Max deviation at the dropped samples of a spline through every other point,
// scaled by 1/16 for the h^4 convergence of the full-resolution spline.
double ingestion_estimate(const MeasurementTable& t, const std::vector<double>& y) {
  const std::size_t n = t.x.size();
  const double dx = (t.x.back() - t.x.front()) / static_cast<double>(n - 1);
  std::vector<double> coarse;
  for (std::size_t i = 0; i < n; i += 2) coarse.push_back(y[i]);
  const CubicSpline s(t.x.front(), 2.0 * dx, coarse);
  double worst = 0.0;
  for (std::size_t i = 1; i < n; i += 2) {
    if (t.x[i] > s.back()) break;
    worst = std::max(worst, std::abs(s(t.x[i]) - y[i]));
  }
  return worst / 16.0;
}

}  // namespace

MeasurementPair measurement_from_table(const MeasurementTable& table, const TimePair& times) {
  validate_table(table);
  const std::size_t n = table.x.size();
  const double dx = (table.x.back() - table.x.front()) / static_cast<double>(n - 1);
  auto zs = std::make_shared<const CubicSpline>(table.x.front(), dx, table.z);
  auto hs = std::make_shared<const CubicSpline>(table.x.front(), dx, table.h);
  MeasurementPair m;
  m.z = spline_function(zs);
  m.h = spline_function(hs);
  m.times = times;
  m.label = "table";
  m.ingestion_error = std::max(ingestion_estimate(table, table.z), ingestion_estimate(table, table.h));
  return m;
}

}  // namespace fracsource
