#include "fracsource/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "fracsource/catalog.hpp"
#include "fracsource/forward.hpp"
#include "fracsource/gamma.hpp"
#include "fracsource/inverse.hpp"
#include "fracsource/io.hpp"
#include "fracsource/mittag_leffler.hpp"
#include "fracsource/mode_system.hpp"

namespace fracsource {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v = linspace(std::log10(a), std::log10(b), n);
  for (double& x : v) x = std::pow(10.0, x);
  return v;
}

using Check = std::function<InvariantResult(bool full)>;

InvariantResult make(const char* name, double observed, double threshold, std::string detail = {}) {
  InvariantResult r;
  r.name = name;
  r.observed = observed;
  r.threshold = threshold;
  r.passed = std::isfinite(observed) && observed <= threshold;
  r.detail = std::move(detail);
  return r;
}

InvariantResult ml_identities(bool full) {
  const int n = full ? 50 : 20;
  double worst = 0.0;
  for (double x : linspace(0.0, 50.0, n)) worst = std::max(worst, std::abs(mittag_leffler(1.0, 1.0, -x) - std::exp(-x)));
  for (double x : linspace(0.0, 10.0, n))
    worst = std::max(worst, std::abs(mittag_leffler(2.0, 1.0, -x * x) - std::cos(x)));
  for (double x : linspace(0.0, 5.0, n))
    worst = std::max(worst, std::abs(mittag_leffler(0.5, 1.0, -x) - std::exp(x * x) * std::erfc(x)));
  return make("ml_identities", worst, 1e-11, "exp, cos, erfc closed forms");
}

InvariantResult recurrence_closure(bool full) {
  const std::vector<double> alphas = full ? linspace(0.1, 1.0, 10) : std::vector<double>{0.25, 0.5, 0.8, 1.0};
  const std::vector<double> betas = full ? linspace(0.2, 2.9, 10) : std::vector<double>{0.5, 1.0, 1.7};
  const std::vector<double> lambdas = full ? logspace(1e-3, 1e6, 10) : std::vector<double>{1e-2, 4.0, 1e3, 1e6};
  const std::vector<double> ts = {0.3, 1.0};
  double worst = 0.0;
  for (double a : alphas)
    for (double b : betas)
      for (double l : lambdas)
        for (double t : ts) {
          const double scale = std::max(1.0, std::abs(rgamma(b)));
          worst = std::max(worst, recurrence_residual(a, b, l, t) / scale);
        }
  return make("recurrence_closure", worst, 1e-10, "scaled residual of lambda t^a E_{a,a+b} = 1/Gamma(b) - E_{a,b}");
}

InvariantResult rho2_reduction(bool full) {
  const std::vector<double> alphas = full ? linspace(0.2, 1.0, 5) : std::vector<double>{0.4, 1.0};
  const std::vector<double> betas = full ? linspace(1.1, 3.0, 5) : std::vector<double>{1.5, 2.2};
  const std::vector<double> fractions = full ? linspace(0.0, 1.0, 6) : std::vector<double>{0.0, 1.0};
  double worst = 0.0;
  for (double a : alphas)
    for (double b : betas)
      for (double f : fractions) {
        // Stay inside the direct-series regime: 1.2 <= |x| < 0.95 * 40^alpha.
        const double hi = 0.95 * std::pow(kAsymptoticRadius, a);
        const MLQuery q{a, b, 2, -(1.2 + f * (hi - 1.2))};
        const MLResult direct = ml_series(q, 1e-14);
        const MLResult reduced = reduce_rho2(q, 1e-14);
        worst = std::max(worst, std::abs(direct.value - reduced.value));
      }
  return make("rho2_reduction", worst, 1e-10, "reduced vs direct rho=2 series");
}

InvariantResult regime_consistency(bool full) {
  const std::vector<double> alphas = full ? linspace(0.2, 1.0, 9) : std::vector<double>{0.3, 0.6, 1.0};
  const std::vector<double> betas = full ? linspace(0.3, 2.5, 6) : std::vector<double>{0.5, 1.0, 2.0};
  double worst = 0.0;
  for (double a : alphas)
    for (double b : betas) {
      const MLQuery q{a, b, 1, -std::pow(kAsymptoticRadius, a)};
      const MLResult s = ml_series(q);
      const MLResult as = ml_asymptotic(q);
      const double allowed = 2.0 * (s.est_abs_error + as.est_abs_error);
      worst = std::max(worst, std::abs(s.value - as.value) / allowed);
    }
  return make("regime_consistency", worst, 1.0, "|series - asymptotic| / (2 * sum of estimates) at the handover");
}

InvariantResult boundedness(bool full) {
  const std::vector<double> alphas = full ? linspace(0.2, 1.8, 9) : std::vector<double>{0.3, 0.9, 1.5};
  const std::vector<double> betas = full ? std::vector<double>{0.5, 1.0, 1.5, 2.5} : std::vector<double>{0.8, 2.0};
  const std::vector<double> lambdas = logspace(1e-3, 1e6, full ? 19 : 10);
  const std::vector<double> ts = logspace(1e-3, 1e2, full ? 11 : 6);
  double worst = 0.0;
  for (int rho = 1; rho <= 2; ++rho)
    for (double a : alphas)
      for (double b : betas) {
        double all = 0.0, interior = 0.0;
        for (std::size_t i = 0; i < lambdas.size(); ++i)
          for (std::size_t j = 0; j < ts.size(); ++j) {
            const double s = lambdas[i] * std::pow(ts[j], a);
            const double v = std::pow(s, rho) * std::abs(ml_eval({a, b, rho, -s}).value);
            all = std::max(all, v);
            if (i > 0 && j > 0 && i + 1 < lambdas.size() && j + 1 < ts.size()) interior = std::max(interior, v);
          }
        worst = std::max(worst, all / (10.0 * interior));
      }
  return make("ml_boundedness", worst, 1.0, "grid max / (10 * interior max) of lambda^rho t^(a rho) |E|");
}

InvariantResult monotonicity(bool) {
  struct Case {
    double a, b, lambda;
    int rho;
    int kind;  // 0: E decreasing, 1: t^(b-1) E_{a,b} decreasing, 2: t^a E_{a,b} increasing
  };
  const std::vector<Case> cases = {
      {0.3, 0.3, 1.0, 1, 0},  {0.5, 1.0, 2.0, 1, 0},  {0.8, 1.6, 5.0, 2, 0},  {1.0, 1.0, 1.0, 1, 0},
      {0.4, 1.0, 40.0, 2, 0}, {0.6, 0.9, 0.5, 1, 0},  {0.9, 2.5, 10.0, 2, 0}, {0.5, 0.7, 1.0, 1, 1},
      {0.3, 0.9, 3.0, 1, 1},  {0.4, 0.8, 20.0, 2, 1}, {0.5, 1.0, 1.0, 2, 1},  {0.2, 0.5, 7.0, 2, 1},
      {0.9, 1.0, 2.0, 1, 1},  {0.7, 0.8, 0.1, 1, 1},  {0.5, 1.0, 1.0, 1, 2},  {0.3, 0.6, 4.0, 1, 2},
      {0.8, 2.0, 9.0, 1, 2},  {1.0, 2.0, 1.0, 1, 2},  {0.4, 1.5, 100.0, 1, 2}, {0.6, 1.2, 0.2, 1, 2}};
  const std::vector<double> ts = logspace(1e-3, 100.0, 100);
  int violations = 0;
  for (const Case& c : cases) {
    double prev = 0.0, prev_err = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double t = ts[i];
      const MLResult r = ml_eval({c.a, c.b, c.rho, -c.lambda * std::pow(t, c.a)});
      double w = 1.0;
      if (c.kind == 1) w = std::pow(t, c.b - 1.0);
      if (c.kind == 2) w = std::pow(t, c.a);
      const double v = w * r.value, err = w * r.est_abs_error + 1e-15 * std::abs(v);
      if (v < -err) ++violations;
      if (i > 0) {
        if (c.kind == 2 ? v < prev - err - prev_err : v > prev + err + prev_err) ++violations;
      }
      prev = v;
      prev_err = err;
    }
  }
  return make("monotonicity", violations, 0.0, "violations over 20 cases x 100 points");
}

InvariantResult biorthogonality(bool full) {
  const int N = full ? 25 : 6;
  const auto G = biorthogonality_matrix(N);
  double worst = 0.0;
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = 0; j < G.size(); ++j) worst = std::max(worst, std::abs(G[i][j] - (i == j ? 1.0 : 0.0)));
  return make("biorthogonality", worst, 1e-9, "N=" + std::to_string(N));
}

InvariantResult synthesis_at_one(bool, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    SeriesField f = SeriesField::zeros(30);
    f.c10 = u(rng);
    for (int n = 0; n < 30; ++n) {
      f.c1[n] = u(rng);
      f.c2[n] = u(rng);
    }
    worst = std::max(worst, std::abs(synthesize(f, 1.0)) / f.l1_norm());
  }
  return make("synthesis_at_one", worst, 1e-12, "|u(1)| / l1 norm");
}

std::vector<std::pair<double, double>> order_grid(bool full) {
  const std::vector<double> values = full ? linspace(0.1, 1.0, 10) : std::vector<double>{0.25, 0.5, 0.75, 1.0};
  std::vector<std::pair<double, double>> out;
  for (double a : values)
    for (double g : values)
      if (a <= g) out.emplace_back(a, g);
  return out;
}

InvariantResult determinant_positivity(bool full) {
  const int nmax = full ? 50 : 10;
  const TimePair times{0.3, 1.0};
  double worst = -INFINITY;
  int failures = 0;
  for (const auto& [a, g] : order_grid(full)) {
    const FractionalOrders o{a, g};
    for (int n = 0; n <= nmax; ++n) {
      const double l = lambda_n(n);
      const ModeMatrix m = assemble(o, 1.0 + a, l * l, times);
      if (!det_positive(m)) ++failures;
      worst = std::max(worst, -m.log_det);
    }
  }
  return make("determinant_positivity", failures, 0.0, "n=0.." + std::to_string(nmax) + ", max(-log det)=" + format_real(worst));
}

InvariantResult scaled_det_bound(bool full) {
  const TimePair times{0.3, 1.0};
  double worst = 0.0;
  std::ostringstream detail;
  for (const auto& [a, g] : order_grid(full)) {
    if (!(g > a)) continue;
    const FractionalOrders o{a, g};
    auto min_scaled = [&](int nmax) {
      double lo = INFINITY;
      for (int n = 1; n <= nmax; ++n) {
        const double l = lambda_n(n);
        lo = std::min(lo, det_scaled(assemble(o, 1.0 + a, l * l, times)));
      }
      return lo;
    };
    const double coarse = min_scaled(25), fine = min_scaled(50);
    if (!(fine > 0.0)) return make("scaled_det_bound", INFINITY, 0.05, "non-positive lambda^2 det");
    worst = std::max(worst, std::abs(coarse - fine) / fine);
  }
  return make("scaled_det_bound", worst, 0.05, "relative change of min lambda^2 det from n<=25 to n<=50");
}

InvariantResult det_limit(bool full) {
  const TimePair times{0.3, 1.0};
  double worst = 0.0;
  for (const auto& [a, g] : order_grid(full)) {
    if (!(g > a)) continue;
    const FractionalOrders o{a, g};
    const double mu = 1.0 + a;
    const double limit = det_scaled_limit(o, mu, times);
    const double got = det_scaled(assemble(o, mu, 1e6, times));
    worst = std::max(worst, std::abs(got - limit) / limit);
  }
  return make("det_limit", worst, 0.05, "relative gap of lambda^2 det at lambda=1e6");
}

InvariantResult example1(bool) {
  const std::vector<std::pair<FractionalOrders, TimePair>> params = {{{0.5, 0.5}, {0.3, 1.0}}, {{0.6, 0.9}, {0.5, 2.0}}};
  double worst = 0.0;
  for (const auto& [o, tp] : params) {
    for (double c : {0.5, example1_source_free_c(o, tp), example1_homogeneous_c(o, tp), 2.0}) {
      const ReconstructionResult r = reconstruct(example1_pair(c, tp), o, 4);
      const ModeCoefficients ref = example1_closed_form(c, o, tp);
      const ModeState& m = r.solution.mode({1, 0});
      worst = std::max({worst, std::abs(m.coefs.f - ref.f), std::abs(m.coefs.c - ref.c)});
      for (std::size_t i = 1; i < r.solution.modes.size(); ++i) {
        worst = std::max({worst, std::abs(r.solution.modes[i].coefs.f), std::abs(r.solution.modes[i].coefs.c)});
      }
    }
  }
  return make("example1_closed_form", worst, 1e-10, "f_{1,0}, c_{1,0} against the closed form");
}

InvariantResult example2(bool full) {
  const MeasurementPair m = example2_pair();
  const FractionalOrders o{0.5, 0.5};
  const int N = 20;
  const ReconstructionResult r = reconstruct(m, o, N);
  const std::vector<double> xs = linspace(0.0, 1.0, full ? 512 : 128);
  double worst = 0.0;
  for (const auto& [t, coefs] : {std::pair{m.times.Tm, r.z_coefficients}, std::pair{m.times.T, r.h_coefficients}}) {
    const std::vector<double> u = evaluate_u_grid(r.solution, xs, t);
    for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::abs(u[i] - synthesize(coefs, xs[i])) / 1e-8);
  }
  for (double t : {0.2, 0.3, 0.6, 1.0}) {
    if (evaluate_u(r.solution, 1.0, t) != 0.0) worst = INFINITY;
    worst = std::max(worst, std::abs(flux_mismatch(r.solution, t)) / 1e-5);
  }
  return make("example2_consistency", worst, 1.0, "max of snapshot error / 1e-8 and flux residual / 1e-5");
}

SeriesField random_decaying_field(int N, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SeriesField f = SeriesField::zeros(N);
  f.c10 = u(rng);
  for (int n = 1; n <= N; ++n) {
    const double l2 = lambda_n(n) * lambda_n(n);
    f.c1[n - 1] = u(rng) / l2;
    f.c2[n - 1] = u(rng) / l2;
  }
  return f;
}

InvariantResult round_trip_check(bool full, std::mt19937_64& rng) {
  const int sets = full ? 25 : 3;
  const int N = full ? 10 : 5;
  const std::vector<FractionalOrders> orders = {{0.5, 0.5}, {0.6, 0.8}, {0.9, 1.0}};
  const TimePair times{0.3, 1.0};
  double worst = 0.0;
  for (int s = 0; s < sets; ++s) {
    const FractionalOrders& o = orders[static_cast<std::size_t>(s) % orders.size()];
    const SeriesField f = random_decaying_field(N, rng);
    const SeriesField c = random_decaying_field(N, rng);
    worst = std::max(worst, round_trip(o, times, N, f, c));
  }
  return make("round_trip", worst, 1e-7, std::to_string(sets) + " planted sets, N=" + std::to_string(N));
}

InvariantResult mode_residual(bool full) {
  const std::vector<FractionalOrders> orders = {{0.5, 0.5}, {0.3, 0.7}, {0.8, 1.0}, {1.0, 1.0}};
  const std::vector<double> ts = full ? std::vector<double>{0.05, 0.1, 0.3, 0.5, 1.0, 2.0} : std::vector<double>{0.1, 1.0};
  const int nmax = full ? 10 : 3;
  double worst = 0.0;
  for (const FractionalOrders& o : orders)
    for (int n = 0; n <= nmax; ++n)
      for (double t : ts) {
        const double l = lambda_n(n);
        const ModeState m1{{1, n}, {1.0, 0.5}, l};
        worst = std::max(worst, std::abs(residual_mode1(m1, o, t)));
        if (n >= 1) {
          const ModeState m2{{2, n}, {-0.7, 0.3}, l};
          worst = std::max(worst, std::abs(residual_mode2(m2, m1, o, t)));
        }
      }
  return make("mode_residual", worst, 1e-10, "|hD u + lambda^2 u - f| per mode");
}

}  // namespace

const char* to_string(VerifyLevel level) { return level == VerifyLevel::full ? "full" : "quick"; }

bool VerifyReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const InvariantResult& r) { return r.passed; });
}

void VerifyReport::write(std::ostream& os) const {
  os << "level=" << to_string(level) << '\n' << "seed=" << seed << '\n';
  for (const InvariantResult& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << " observed=" << format_real(r.observed)
       << " threshold=" << format_real(r.threshold);
    if (!r.detail.empty()) os << " # " << r.detail;
    os << '\n';
  }
  os << "result=" << (passed() ? "pass" : "fail") << '\n';
}

std::uint64_t verify_seed() {
  if (const char* s = std::getenv("FRACSOURCE_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') return v;
  }
  return kDefaultSeed;
}

VerifyReport run_verify(VerifyLevel level, std::uint64_t seed) {
  const bool full = level == VerifyLevel::full;
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<const char*, Check>> checks = {
      {"ml_identities", ml_identities},
      {"recurrence_closure", recurrence_closure},
      {"rho2_reduction", rho2_reduction},
      {"regime_consistency", regime_consistency},
      {"ml_boundedness", boundedness},
      {"monotonicity", monotonicity},
      {"biorthogonality", biorthogonality},
      {"synthesis_at_one", [&rng](bool f) { return synthesis_at_one(f, rng); }},
      {"determinant_positivity", determinant_positivity},
      {"scaled_det_bound", scaled_det_bound},
      {"det_limit", det_limit},
      {"example1_closed_form", example1},
      {"example2_consistency", example2},
      {"round_trip", [&rng](bool f) { return round_trip_check(f, rng); }},
      {"mode_residual", mode_residual},
  };
  VerifyReport report;
  report.level = level;
  report.seed = seed;
  for (const auto& [name, check] : checks) {
    try {
      report.results.push_back(check(full));
    } catch (const std::exception& e) {
      InvariantResult r;
      r.name = name;
      r.observed = INFINITY;
      r.detail = std::string("exception: ") + e.what();
      report.results.push_back(r);
    }
  }
  return report;
}

}  // namespace fracsource
