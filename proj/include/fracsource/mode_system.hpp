#pragma once

#include <array>

namespace fracsource {

// Orders of the two-parameter derivative; 0 < alpha <= gamma <= 1.
struct FractionalOrders {
  double alpha = 0.5;
  double gamma = 0.5;
  void validate() const;
};

// Measurement times; 0 < Tm < T.
struct TimePair {
  double Tm = 0.3;
  double T = 1.0;
  void validate() const;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

//   [ T^a  E_{a,mu}(-lambda T^a)    T^(g-1)  E_{a,g}(-lambda T^a)  ]
//   [ Tm^a E_{a,mu}(-lambda Tm^a)   Tm^(g-1) E_{a,g}(-lambda Tm^a) ]
// In the solver lambda is the squared frequency l_n^2.
struct ModeMatrix {
  Matrix2 entries{};
  double lambda = 0.0;
  double det = 0.0;
  // log|entry|, finite even where an entry underflows (alpha = 1, exponential decay).
  Matrix2 log_entries{};
  // log(det), or -inf when det > 0 cannot be established.
  double log_det = 0.0;
};

struct ModeCoefficients {
  double f = 0.0;  // source coefficient
  double c = 0.0;  // fractional-integral initial trace I^{1-g} u(0)
};

// Mittag-Leffler tolerance used inside assemble(), independent of callers.
inline constexpr double kAssemblyMLTol = 1e-13;
inline constexpr double kSingularThreshold = 1e-300;

// a*b - c*d with one rounding error (Kahan's fma trick).
double diff_of_products(double a, double b, double c, double d);

ModeMatrix assemble(const FractionalOrders& orders, double mu, double lambda, const TimePair& times);

// det > 0 in exact arithmetic, decided through log_det when det underflows.
bool det_positive(const ModeMatrix& m);

// lambda^2 * det for lambda > 0, det itself for lambda = 0. Throws SingularSystem if det <= 0.
double det_scaled(const ModeMatrix& m);

// The large-lambda limit of lambda^2 det:
// (Tm^(g-1-a) - T^(g-1-a)) / (Gamma(g-a) Gamma(mu-a)); zero when g = a.
double det_scaled_limit(const FractionalOrders& orders, double mu, const TimePair& times);

Matrix2 inverse(const ModeMatrix& m);

// Solves m (f, c) = (h, z) by Cramer's rule. A zero right-hand side gives zero
// even when det underflows; otherwise an underflowed det throws SingularSystem.
ModeCoefficients solve_mode1(const ModeMatrix& m, double h_coef, double z_coef);

// Solves m (f, c) = (h2 - dT, z2 - dTm).
ModeCoefficients solve_mode2(const ModeMatrix& m, double h2, double z2, double dT, double dTm);

// d_n(t) = 2 l_n [ f1 t^(2a) E^2_{a,2a+1}(-l_n^2 t^a) + c1 t^(a+g-1) E^2_{a,a+g}(-l_n^2 t^a) ].
// lambda_n is the unsquared frequency.
double coupling_dn(const FractionalOrders& orders, double lambda_n, const ModeCoefficients& mode1, double t);

}  // namespace fracsource
