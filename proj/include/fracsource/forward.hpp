#pragma once

#include <vector>

#include "fracsource/basis.hpp"
#include "fracsource/mode_system.hpp"

namespace fracsource {

struct ModeState {
  ModeIndex index;
  ModeCoefficients coefs;
  double lambda_n = 0.0;  // 2 pi n
};

// u(x,t) = sum over modes u_{k,n}(t) phi_{k,n}(x), stored as per-mode (f, c).
struct SolutionField {
  FractionalOrders orders;
  TimePair times;
  int N = 0;
  std::vector<ModeState> modes;  // mode_indices(N) order

  // Builds the field from source coefficients f and initial traces c.
  static SolutionField from_coefficients(const FractionalOrders& orders, const TimePair& times,
                                         const SeriesField& source, const SeriesField& trace);

  const ModeState& mode(ModeIndex idx) const;
  SeriesField source() const;
  SeriesField trace() const;
};

// t^a E_{a,a+1}(-l^2 t^a) f + t^(g-1) E_{a,g}(-l^2 t^a) c. Throws DomainError for t <= 0.
double u_mode1(const ModeState& state, const FractionalOrders& orders, double t);

// Mode-1 formula on state2's coefficients plus the coupling d_n from state1.
double u_mode2(const ModeState& state2, const ModeState& state1, const FractionalOrders& orders, double t);

// The coefficients u_{k,n}(t) as a SeriesField.
SeriesField snapshot(const SolutionField& field, double t);

double evaluate_u(const SolutionField& field, double x, double t);

// One snapshot, then synthesis at every x.
std::vector<double> evaluate_u_grid(const SolutionField& field, const std::vector<double>& xs, double t);

// hD u + l^2 u - f for a mode-1 state. The derivative goes through the
// identities hD[t^a E_{a,a+1}(-L t^a)] = E_{a,1}(-L t^a) and
// hD[t^(g-1) E_{a,g}(-L t^a)] = t^(g-1-a) (E_{a,g-a}(-L t^a) - 1/Gamma(g-a)),
// so it is evaluated independently of u itself.
double residual_mode1(const ModeState& state, const FractionalOrders& orders, double t);

// hD u2 + l^2 u2 - 2 l u1 - f2.
double residual_mode2(const ModeState& state2, const ModeState& state1, const FractionalOrders& orders, double t);

// u_x(0,t) - u_x(1,t) from 5-point one-sided differences with step h.
double flux_mismatch(const SolutionField& field, double t, double h = 1e-4);

}  // namespace fracsource
