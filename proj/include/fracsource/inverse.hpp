#pragma once

#include <array>
#include <string>
#include <vector>

#include "fracsource/basis.hpp"
#include "fracsource/forward.hpp"
#include "fracsource/mode_system.hpp"

namespace fracsource {

// Snapshots u(x, Tm) = z(x) and u(x, T) = h(x).
struct MeasurementPair {
  SampledFunction z;
  SampledFunction h;
  TimePair times;
  std::string label;
  // Estimated sup-norm interpolation error for tabulated inputs, 0 for closed forms.
  double ingestion_error = 0.0;
};

// Diagnostics for the smoothness/boundary hypotheses on z and h. Never fatal.
struct HypothesisReport {
  // |z'(0)-z'(1)|, |z(1)|, |z''(1)|, |h'(0)-h'(1)|, |h(1)|, |h''(1)|
  std::array<double, 6> boundary_residuals{};
  // Least-squares slope of log|g_{k,n}| against log l_n, worst (largest) over
  // the four coefficient families of z and h; NaN when every coefficient is negligible.
  double coef_decay_exponent = 0.0;
  double z_decay_exponent = 0.0;
  double h_decay_exponent = 0.0;
  double ingestion_error = 0.0;

  static const std::array<const char*, 6>& residual_names();
  // One message per residual above tol.
  std::vector<std::string> warnings(double tol = 1e-8) const;
};

struct ReconstructionResult {
  SeriesField source;      // f
  SolutionField solution;  // u
  HypothesisReport diagnostics;
  SeriesField z_coefficients;
  SeriesField h_coefficients;
};

HypothesisReport check_hypotheses(const MeasurementPair& m, int N = 20, const AnalyzeOptions& options = {});

ReconstructionResult reconstruct(const MeasurementPair& m, const FractionalOrders& orders, int N,
                                 const AnalyzeOptions& options = {});

// Solves every mode system from already-extracted snapshot coefficients.
SolutionField solve_modes(const SeriesField& z_coefficients, const SeriesField& h_coefficients,
                          const FractionalOrders& orders, const TimePair& times);

struct RoundTripError {
  double source = 0.0;  // max |f recovered - f planted|
  double trace = 0.0;   // max |c recovered - c planted|
  double max() const { return source > trace ? source : trace; }
};

// Forward-solves the planted coefficients, samples u(., Tm) and u(., T) as
// functions, reconstructs, and compares coefficient by coefficient.
RoundTripError round_trip_errors(const FractionalOrders& orders, const TimePair& times, int N,
                                 const SeriesField& planted_source, const SeriesField& planted_trace,
                                 const AnalyzeOptions& options = {});

double round_trip(const FractionalOrders& orders, const TimePair& times, int N, const SeriesField& planted_source,
                  const SeriesField& planted_trace, const AnalyzeOptions& options = {});

// Fitted slope of log|coef| against log l_n over both families of a field.
double coefficient_decay_exponent(const SeriesField& coefficients, double floor = 1e-14);

}  // namespace fracsource
