#include "effective.hpp"

#include <cmath>

#include "polarization.hpp"

namespace npspec {

double gamma_fn(double x) {
  if (!(x > 0.0)) fail(ErrorCode::invalid_argument, "gamma_fn requires x > 0");
  if (x < 0.5) return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
  static const double c[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  double z = x - 1.0;
  double a = c[0];
  for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
  double t = z + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

namespace {

void check_dilute(const LaurentMap& map, double rho) {
  if (!(rho >= 0.0)) fail(ErrorCode::invalid_argument, "rho must be nonnegative");
  if (!(rho * rho * map.area() < 1.0))
    fail(ErrorCode::dilute_violation, "rho^2 * area >= 1: outside the dilute regime");
}

} // namespace

EffectiveExpansion effective_expansion(const LaurentMap& map, int sign, double rho) {
  if (sign != 1 && sign != -1) fail(ErrorCode::invalid_argument, "sign must be +1 or -1");
  check_dilute(map, rho);
  double s = sign;
  double g2 = map.gamma() * map.gamma();
  cplx a1 = map.order() >= 1 ? map.coeff(1) : cplx(0.0, 0.0);
  EffectiveExpansion e;
  e.sign = sign;
  e.rho = rho;
  e.order2 << 2.0 * M_PI * (s * g2 + a1.real()), 2.0 * M_PI * a1.imag(),
      2.0 * M_PI * a1.imag(), 2.0 * M_PI * (s * g2 - a1.real());
  double g4 = g2 * g2, n1 = std::norm(a1);
  e.order4 << 2.0 * M_PI * M_PI * (g4 + 2.0 * s * g2 * a1.real() + n1),
      2.0 * M_PI * M_PI * 2.0 * s * g2 * a1.imag(),
      2.0 * M_PI * M_PI * 2.0 * s * g2 * a1.imag(),
      2.0 * M_PI * M_PI * (g4 - 2.0 * s * g2 * a1.real() + n1);
  return e;
}

AFunctionals A_functionals(const LaurentMap& map, int sign, double rho) {
  EffectiveExpansion e = effective_expansion(map, sign, rho);
  Eigen::Matrix2d A = e.sigma() - Eigen::Matrix2d::Identity();
  AFunctionals f;
  f.trace = A.trace();
  f.det = A.determinant();
  if (f.det == 0.0)
    fail(ErrorCode::singular_tensor, "A is singular (|a1| = gamma^2 or rho = 0)");
  f.trace_inverse = f.trace / f.det;
  return f;
}

double x_functional(const LaurentMap& map) {
  double g2 = map.gamma() * map.gamma();
  cplx a1 = map.order() >= 1 ? map.coeff(1) : cplx(0.0, 0.0);
  return M_PI * (g2 - std::norm(a1) / g2);
}

double a_trace_inverse_bound(const LaurentMap& map, int sign, double rho) {
  check_dilute(map, rho);
  if (sign != 1 && sign != -1) fail(ErrorCode::invalid_argument, "sign must be +1 or -1");
  // tr(A^-1) = s (1 + 2 pi g^2 r^2 s - s r^2 X) / (r^2 X (1 + 2 pi g^2 r^2 s + pi g^2 r^4 X)),
  // decreasing in X; substituting X -> area (the minimum of X) bounds it.
  double s = sign;
  double g2 = map.gamma() * map.gamma();
  double X = map.area();
  double r2 = rho * rho;
  double num = 1.0 + 2.0 * M_PI * g2 * r2 * s - s * r2 * X;
  double den = r2 * X * (1.0 + 2.0 * M_PI * g2 * r2 * s + M_PI * g2 * r2 * r2 * X);
  if (den == 0.0) fail(ErrorCode::singular_tensor, "degenerate bound denominator");
  return s * num / den;
}

double ngon_radius_real(double x, double area) {
  if (!(x > 2.0)) fail(ErrorCode::invalid_argument, "n-gon parameter must exceed 2");
  if (!(area > 0.0)) fail(ErrorCode::invalid_argument, "area must be positive");
  double L = std::sqrt(4.0 * std::tan(M_PI / x) / x);
  double g1 = gamma_fn(1.0 / x);
  double g2 = gamma_fn(2.0 / x);
  return g1 * g1 / g2 / (4.0 * M_PI) * L * std::sqrt(area);
}

double ngon_radius(int n, double area) {
  if (n < 3) fail(ErrorCode::invalid_argument, "regular n-gon needs n >= 3");
  return ngon_radius_real(double(n), area);
}

EffectiveExpansion ngon_effective(int n, int sign, double rho) {
  if (n < 3) fail(ErrorCode::invalid_argument, "regular n-gon needs n >= 3");
  if (sign != 1 && sign != -1) fail(ErrorCode::invalid_argument, "sign must be +1 or -1");
  if (!(rho >= 0.0) || !(rho * rho < 1.0))
    fail(ErrorCode::dilute_violation, "rho^2 >= unit area: outside the dilute regime");
  double g1 = gamma_fn(1.0 / n), g2 = gamma_fn(2.0 / n);
  double q = g1 * g1 / g2;       // Gamma^2(1/n) / Gamma(2/n)
  double tn = std::tan(M_PI / n) / n;
  double c2 = sign / (2.0 * M_PI) * q * q * tn;
  double c4 = 1.0 / (8.0 * M_PI * M_PI) * q * q * q * q * tn * tn;
  EffectiveExpansion e;
  e.sign = sign;
  e.rho = rho;
  e.order2 = c2 * Eigen::Matrix2d::Identity();
  e.order4 = c4 * Eigen::Matrix2d::Identity();
  return e;
}

} // namespace npspec
