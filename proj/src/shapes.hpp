#pragma once

#include "laurent.hpp"

namespace npspec {

// Ellipse with semi-axes a >= b > 0: gamma = (a+b)/2, a1 = (a^2-b^2)/4.
LaurentMap ellipse(double a, double b);

// One-coefficient map w + c w^{-m}, gamma = 1. Univalent iff m|c| < 1.
LaurentMap algebraic(int m, cplx c);

// Regular n-gon of the given area. Exterior Schwarz-Christoffel derivative
// (1 - (gamma/w)^n)^{2/n} expanded binomially and integrated termwise, kept to
// 8 series terms (coefficient indices j*n - 1, j = 1..8). Default orientation
// puts one vertex on the positive real axis; `orientation` rotates the shape.
LaurentMap regular_ngon(int n, double area = 1.0, double orientation = 0.0);

// Fixed reference rectangle-like map: gamma = 0.66273, a1 = 0.20439.
LaurentMap rectangle_fixture();

// Fixed six-coefficient blob used across the validation suite.
LaurentMap sample_blob();

// One-parameter families for spectral sweep studies. Coefficients grow
// linearly in j; valid ranges keep the maps univalent.
LaurentMap coeff_sweep_a(int j); // a = j*(1/600, 1/300, 1/1200, 1/320), 1 <= j <= 42
LaurentMap coeff_sweep_b(int j); // a = j*(1/400, 1/600, 1/1200),       1 <= j <= 119

// Two-coefficient family with competing quadratic/linear growth,
// a = (j^2/600, j/300), 1 <= j <= 6. Exhibits eigenvalue-order crossings.
LaurentMap crossing_pair(int j);

} // namespace npspec
