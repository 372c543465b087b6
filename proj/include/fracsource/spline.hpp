#pragma once

#include <vector>

namespace fracsource {

// Not-a-knot cubic spline through samples on a uniform grid x0, x0+dx, ...
class CubicSpline {
 public:
  CubicSpline(double x0, double dx, std::vector<double> values);

  double operator()(double x) const;
  // Orders 1 to 3; the third derivative is piecewise constant.
  double derivative(int order, double x) const;

  double front() const { return x0_; }
  double back() const { return x0_ + dx_ * static_cast<double>(y_.size() - 1); }
  std::size_t size() const { return y_.size(); }

 private:
  std::size_t segment(double x) const;

  double x0_;
  double dx_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace fracsource
