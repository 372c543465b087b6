#pragma once

#include <vector>

#include "fracsource/inverse.hpp"

namespace fracsource {

// z = 2(1-x), h = 2c(1-x). Both lie in span{phi_{1,0}}.
MeasurementPair example1_pair(double c, const TimePair& times);

// Closed-form (f_{1,0}, c_{1,0}) for the linear pair.
ModeCoefficients example1_closed_form(double c, const FractionalOrders& orders, const TimePair& times);

// c giving a source-free solution, and c giving u(x,0) = 0.
double example1_source_free_c(const FractionalOrders& orders, const TimePair& times);
double example1_homogeneous_c(const FractionalOrders& orders, const TimePair& times);

// z = (1 - (2x-1)^3)/10, h = -3x^2(x^2+2) + 8x^3 + 1, ascending coefficients.
const std::vector<double>& example2_z_polynomial();
const std::vector<double>& example2_h_polynomial();
MeasurementPair example2_pair(const TimePair& times = {0.3, 1.0});

// Uniformly sampled z and h, interpolated by not-a-knot cubic splines.
struct MeasurementTable {
  std::vector<double> x;
  std::vector<double> z;
  std::vector<double> h;
};

inline constexpr std::size_t kMinTablePoints = 64;

// Throws InputError unless the grid is uniform, covers [0, 1] and has >= 64 points.
void validate_table(const MeasurementTable& table);

// Spline interpolation; ingestion_error compares against a spline through every other sample.
MeasurementPair measurement_from_table(const MeasurementTable& table, const TimePair& times);

}  // namespace fracsource
