#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "laurent.hpp"

namespace npspec {

// Periodic unit-cell conductivity problem: Y = (-1/2,1/2)^2 with inclusion
// D = rho * Omega, sigma = 1 + (k-1) chi(D), discretized on a gridN x gridN
// cell-centered mesh with harmonic face averaging.
struct CellProblem {
  int gridN = 0;
  double rho = 0.0;
  double k_eff = 1.0;              // contrast actually used (proxied at extremes)
  std::vector<std::uint8_t> mask;  // 1 = cell center inside the inclusion
  std::vector<double> sigma;       // per cell
  double mask_fraction = 0.0;
};

// Extreme contrasts are proxied: k = 0 -> 1e-8, k = inf -> 1e8.
double proxy_contrast(double k);

// Winding-number rasterization against a 4096-point boundary sample.
// Geometry error if the scaled inclusion does not fit strictly inside Y.
CellProblem rasterize(const LaurentMap& map, double rho, int gridN, double k);

struct CorrectorSolution {
  std::vector<double> u; // periodic corrector, mean zero
  double residual = 0.0; // relative l2 residual reached
  int iters = 0;
};

// Jacobi-preconditioned CG on the mean-zero subspace, relative residual 1e-10.
CorrectorSolution solve_cell(const CellProblem& prob, int direction);

struct FdmResult {
  Eigen::Matrix2d sigma_star;
  double residual[2] = {0.0, 0.0};
  int iters[2] = {0, 0};
  double mask_fraction = 0.0;
  double k_eff = 1.0;
};

// Both correctors + energy quadrature sigma*_ij = int sigma grad u_i . grad u_j.
FdmResult effective_fdm(const LaurentMap& map, double rho, double k, int gridN);

} // namespace npspec
