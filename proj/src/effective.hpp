#pragma once

#include <Eigen/Dense>

#include "laurent.hpp"

namespace npspec {

// Lanczos approximation (g = 7, 9 terms), relative error well under 1e-13 on
// (0, 1]; reflection below 1/2.
double gamma_fn(double x);

// Dilute periodic composite, inclusion D = rho * Omega in the unit cell, at
// extreme contrast sign = +1 (superconducting) or -1 (insulating):
//   sigma* = I + rho^2 * order2 + rho^4 * order4 + O(rho^6),
// order2 the extreme polarization tensor, order4 = order2^2 / 2.
struct EffectiveExpansion {
  int sign = 1;
  double rho = 0.0;
  Eigen::Matrix2d order2, order4;
  Eigen::Matrix2d sigma() const {
    return Eigen::Matrix2d::Identity() + rho * rho * order2 +
           rho * rho * rho * rho * order4;
  }
};

EffectiveExpansion effective_expansion(const LaurentMap& map, int sign, double rho);

// Functionals of A = sigma* - I. trace_inverse = trace/det (2x2 adjugate).
struct AFunctionals {
  double trace = 0.0;
  double det = 0.0;
  double trace_inverse = 0.0;
};

AFunctionals A_functionals(const LaurentMap& map, int sign, double rho);

// X = pi (gamma^2 - |a1|^2 / gamma^2) >= area, equality iff the map is an
// ellipse (a_n = 0 for n >= 2). tr(A^-1) is decreasing in X, so substituting
// the area gives a sharp bound.
double x_functional(const LaurentMap& map);
double a_trace_inverse_bound(const LaurentMap& map, int sign, double rho);

// Conformal radius of the regular n-gon scaled to the given area:
//   gamma = (1/4pi) Gamma(1/n)^2 / Gamma(2/n) * sqrt(4 tan(pi/n)/n) * sqrt(area).
// Real-argument version used for monotonicity sampling in x > 2.
double ngon_radius(int n, double area = 1.0);
double ngon_radius_real(double x, double area = 1.0);

// Closed-form expansion coefficients for the unit-area regular n-gon:
//   order2 = sign/(2 pi) * Gamma^4(1/n)/Gamma^2(2/n) * tan(pi/n)/n * I,
//   order4 = 1/(8 pi^2) * Gamma^8(1/n)/Gamma^4(2/n) * tan^2(pi/n)/n^2 * I.
EffectiveExpansion ngon_effective(int n, int sign, double rho);

} // namespace npspec
