#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"

namespace testutil {

using cplx = std::complex<double>;

// Horner evaluation of a polynomial given by ascending-power coefficients.
inline cplx polyval(const std::vector<cplx>& coeff, cplx z) {
  cplx acc = 0.0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * z + *it;
  return acc;
}

inline double max_abs_diff(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Least-squares slope of y against x.
inline double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}

} // namespace testutil

// Matrix2d comparison with a readable failure message.
#define CHECK_MAT2_NEAR(A, B, TOL)                                                      \
  do {                                                                                  \
    const Eigen::Matrix2d a_ = (A), b_ = (B);                                           \
    INFO("left:\n", a_, "\nright:\n", b_);                                              \
    CHECK(testutil::max_abs_diff(a_, b_) <= (TOL));                                     \
  } while (0)
