#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracsource/quadrature.hpp"

// Bi-orthogonal pair on [0, 1] for u(1,t) = 0, u_x(0,t) = u_x(1,t):
//
//   phi_{1,0} = 2(1-x)   phi_{1,n} = 4(1-x) cos(l_n x)   phi_{2,n} = 4 sin(l_n x)
//   psi_{1,0} = 1        psi_{1,n} = cos(l_n x)          psi_{2,n} = x sin(l_n x)
//
// with l_n = 2 pi n and <phi_i, psi_j> = delta_ij.

namespace fracsource {

double lambda_n(int n);

struct ModeIndex {
  int k = 1;
  int n = 0;
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

// Throws IndexError unless k in {1,2}, n >= 0, and (k,n) != (2,0).
void validate(ModeIndex idx);

// (1,0), (1,1), (2,1), (1,2), (2,2), ..., (1,N), (2,N): the summation order.
std::vector<ModeIndex> mode_indices(int N);

double phi(ModeIndex idx, double x);
double psi(ModeIndex idx, double x);

// Truncated expansion c10 phi_{1,0} + sum_n c1[n-1] phi_{1,n} + c2[n-1] phi_{2,n}.
struct SeriesField {
  double c10 = 0.0;
  std::vector<double> c1;
  std::vector<double> c2;

  static SeriesField zeros(int N);
  int N() const { return static_cast<int>(c1.size()); }
  double& at(ModeIndex idx);
  double at(ModeIndex idx) const;
  // Sum of |coefficients|.
  double l1_norm() const;
};

// A function on [0, 1], optionally with analytic derivatives and an exact
// polynomial form (ascending coefficients) that enables closed-form inner products.
struct SampledFunction {
  std::function<double(double)> eval;
  // derivatives[i] is the (i+1)-th derivative.
  std::vector<std::function<double(double)>> derivatives;
  std::optional<std::vector<double>> polynomial;

  static SampledFunction from_polynomial(std::vector<double> coefficients);
  static SampledFunction from_callable(std::function<double(double)> f);

  double operator()(double x) const { return eval(x); }
  // Analytic derivative when supplied, otherwise a one-sided or central
  // 5-point difference that stays inside [0, 1].
  double derivative(int order, double x) const;
};

struct AnalyzeOptions {
  double quad_tol = 1e-11;
  int max_depth = 20;
  // When false, polynomial inputs go through quadrature like everything else.
  bool use_polynomial_fast_path = true;
};

// <g, psi_idx> over [0, 1].
double inner_product(const SampledFunction& g, ModeIndex idx, const AnalyzeOptions& options = {});

SeriesField analyze(const SampledFunction& g, int N, const AnalyzeOptions& options = {});

double synthesize(const SeriesField& field, double x);

// G[i][j] = <phi_i, psi_j> over mode_indices(N).
std::vector<std::vector<double>> biorthogonality_matrix(int N, const AnalyzeOptions& options = {});

// Polynomial helpers shared with the measurement catalog.
double eval_polynomial(const std::vector<double>& coefficients, double x);
std::vector<double> differentiate_polynomial(const std::vector<double>& coefficients);

// Derivative by 5-point finite differences, one-sided near the ends of [0, 1].
double numerical_derivative(const std::function<double(double)>& f, int order, double x, double h);

}  // namespace fracsource
