#include "shapes.hpp"

#include <cmath>

#include "effective.hpp"

namespace npspec {

LaurentMap ellipse(double a, double b) {
  if (!(a >= b) || !(b > 0.0))
    fail(ErrorCode::invalid_argument, "ellipse needs semi-axes a >= b > 0");
  double g = 0.5 * (a + b);
  double a1 = 0.25 * (a * a - b * b);
  std::vector<cplx> coeffs;
  if (a1 != 0.0) coeffs.push_back(cplx(a1, 0.0));
  return LaurentMap(g, cplx(0.0, 0.0), std::move(coeffs));
}

LaurentMap algebraic(int m, cplx c) {
  if (m < 1) fail(ErrorCode::invalid_argument, "coefficient index must be >= 1");
  if (!(double(m) * std::abs(c) < 1.0))
    fail(ErrorCode::invalid_map, "m|c| >= 1: w + c w^-m is not univalent");
  std::vector<cplx> coeffs(m, cplx(0.0, 0.0));
  coeffs[m - 1] = c;
  return LaurentMap(1.0, cplx(0.0, 0.0), std::move(coeffs));
}

LaurentMap regular_ngon(int n, double area, double orientation) {
  if (n < 3) fail(ErrorCode::invalid_argument, "regular n-gon needs n >= 3");
  if (!(area > 0.0)) fail(ErrorCode::invalid_argument, "area must be positive");
  double g = ngon_radius(n, area);
  // Psi'(w) = sum_j beta_j (gamma/w)^{jn}, beta_j the binomial series of
  // (1-x)^{2/n}; termwise antiderivative gives a_{jn-1} = beta_j g^{jn}/(1-jn).
  const int terms = 8;
  std::vector<cplx> coeffs(terms * n - 1, cplx(0.0, 0.0));
  double alpha = 2.0 / n;
  double beta = 1.0;
  double gpow = 1.0;
  for (int j = 1; j <= terms; ++j) {
    beta *= -(alpha - (j - 1)) / j;
    for (int q = 0; q < n; ++q) gpow *= g;
    coeffs[j * n - 2] = cplx(beta * gpow / (1.0 - j * n), 0.0);
  }
  LaurentMap base(g, cplx(0.0, 0.0), std::move(coeffs));
  if (orientation != 0.0) return base.transformed(1.0, orientation, cplx(0.0, 0.0));
  return base;
}

LaurentMap rectangle_fixture() {
  return LaurentMap(0.66273, cplx(0.0, 0.0), {cplx(0.20439, 0.0)});
}

LaurentMap sample_blob() {
  return LaurentMap(1.0, cplx(0.0, 0.0),
                    {cplx(0.01, 0.0), cplx(0.07, 0.0), cplx(0.01, 0.0), cplx(0.03, 0.0),
                     cplx(0.05, 0.0), cplx(0.07, 0.0)});
}

LaurentMap coeff_sweep_a(int j) {
  if (j < 1 || j > 42) fail(ErrorCode::invalid_argument, "coeff_sweep_a needs 1 <= j <= 42");
  double t = j;
  return LaurentMap(1.0, cplx(0.0, 0.0),
                    {cplx(t / 600.0, 0.0), cplx(t / 300.0, 0.0), cplx(t / 1200.0, 0.0),
                     cplx(t / 320.0, 0.0)});
}

LaurentMap coeff_sweep_b(int j) {
  if (j < 1 || j > 119) fail(ErrorCode::invalid_argument, "coeff_sweep_b needs 1 <= j <= 119");
  double t = j;
  return LaurentMap(1.0, cplx(0.0, 0.0),
                    {cplx(t / 400.0, 0.0), cplx(t / 600.0, 0.0), cplx(t / 1200.0, 0.0)});
}

LaurentMap crossing_pair(int j) {
  if (j < 1 || j > 6) fail(ErrorCode::invalid_argument, "crossing_pair needs 1 <= j <= 6");
  double t = j;
  return LaurentMap(1.0, cplx(0.0, 0.0), {cplx(t * t / 600.0, 0.0), cplx(t / 300.0, 0.0)});
}

} // namespace npspec
