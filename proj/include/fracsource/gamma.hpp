#pragma once

namespace fracsource {

// sin(pi*x) with exact zeros at the integers.
double sinpi(double x);
// cos(pi*x) with exact zeros at the half-integers.
double cospi(double x);

// Gamma function (Lanczos, g=7, with reflection below 1/2).
// Returns +-inf at the non-positive integers.
double gamma(double x);

// 1/Gamma(x). Exactly zero at the non-positive integers.
double rgamma(double x);

}  // namespace fracsource
