#include "fracsource/spline.hpp"

#include <algorithm>
#include <cmath>

#include "fracsource/errors.hpp"

namespace fracsource {

CubicSpline::CubicSpline(double x0, double dx, std::vector<double> values)
    : x0_(x0), dx_(dx), y_(std::move(values)) {
  const std::size_t n = y_.size();
  if (n < 5) throw InputError("cubic spline needs at least 5 samples");
  if (!(dx_ > 0.0)) throw InputError("cubic spline needs a positive grid step");

  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    rhs[i] = 6.0 * (y_[i - 1] - 2.0 * y_[i] + y_[i + 1]) / (dx_ * dx_);
  }
  m_.assign(n, 0.0);
  // Not-a-knot on a uniform grid: M0 = 2 M1 - M2 turns the first interior
  // equation into 6 M1 = rhs1, and symmetrically at the right end.
  m_[1] = rhs[1] / 6.0;
  m_[n - 2] = rhs[n - 2] / 6.0;

  // Tridiagonal (1, 4, 1) for M2 .. M_{n-3}.
  if (n > 5) {
    const std::size_t first = 2;
    const std::size_t last = n - 3;
    const std::size_t count = last - first + 1;
    std::vector<double> diag(count, 4.0);
    std::vector<double> b(count);
    for (std::size_t j = 0; j < count; ++j) b[j] = rhs[first + j];
    b.front() -= m_[1];
    b.back() -= m_[n - 2];
    for (std::size_t j = 1; j < count; ++j) {
      const double w = 1.0 / diag[j - 1];
      diag[j] -= w;
      b[j] -= w * b[j - 1];
    }
    std::vector<double> sol(count);
    sol[count - 1] = b[count - 1] / diag[count - 1];
    for (std::size_t j = count - 1; j-- > 0;) sol[j] = (b[j] - sol[j + 1]) / diag[j];
    for (std::size_t j = 0; j < count; ++j) m_[first + j] = sol[j];
  } else {
    m_[2] = (rhs[2] - m_[1] - m_[3]) / 4.0;
  }
  m_[0] = 2.0 * m_[1] - m_[2];
  m_[n - 1] = 2.0 * m_[n - 2] - m_[n - 3];
}

std::size_t CubicSpline::segment(double x) const {
  const double pos = std::floor((x - x0_) / dx_);
  const double last = static_cast<double>(y_.size() - 2);
  return static_cast<std::size_t>(std::clamp(pos, 0.0, last));
}

double CubicSpline::operator()(double x) const {
  const std::size_t i = segment(x);
  const double h = dx_;
  const double a = x0_ + h * static_cast<double>(i + 1) - x;  // x_{i+1} - x
  const double b = x - (x0_ + h * static_cast<double>(i));    // x - x_i
  return m_[i] * a * a * a / (6.0 * h) + m_[i + 1] * b * b * b / (6.0 * h) +
         (y_[i] / h - m_[i] * h / 6.0) * a + (y_[i + 1] / h - m_[i + 1] * h / 6.0) * b;
}

double CubicSpline::derivative(int order, double x) const {
  const std::size_t i = segment(x);
  const double h = dx_;
  const double a = x0_ + h * static_cast<double>(i + 1) - x;
  const double b = x - (x0_ + h * static_cast<double>(i));
  switch (order) {
    case 1:
      return -m_[i] * a * a / (2.0 * h) + m_[i + 1] * b * b / (2.0 * h) - (y_[i] / h - m_[i] * h / 6.0) +
             (y_[i + 1] / h - m_[i + 1] * h / 6.0);
    case 2:
      return (m_[i] * a + m_[i + 1] * b) / h;
    case 3:
      return (m_[i + 1] - m_[i]) / h;
    default:
      throw DomainError("spline derivative order must be 1, 2 or 3");
  }
}

}  // namespace fracsource
