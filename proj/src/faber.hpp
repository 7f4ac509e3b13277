#pragma once

#include <Eigen/Dense>

#include "laurent.hpp"

namespace npspec {

// Faber polynomials of the domain: monic, deg F_m = m, defined by
// F_m(Psi(w)) = w^m + O(w^{-1}). Recurrence over the map coefficients:
//   F_{n+1}(z) = z F_n(z) - sum_{k=0..n} a_k F_{n-k}(z) - n a_n,  a_k = 0 for k > N.
struct FaberSet {
  std::vector<std::vector<cplx>> poly; // poly[m][j] = coefficient of z^j in F_m
};

FaberSet faber_polynomials(const LaurentMap& map, int M);

// Grunsky coefficients: F_m(Psi(w)) = w^m + sum_{k>=1} c_{m,k} w^{-k}.
// Computed by exact finite Laurent composition; rows vanish beyond k = m*N.
struct GrunskyMatrix {
  int M = 0, K = 0;
  double gamma = 1.0;
  Eigen::MatrixXcd c; // (m-1, k-1) -> c_{m,k}
};

GrunskyMatrix grunsky_coefficients(const LaurentMap& map, int M, int K);

// mu_{m,k} = sqrt(k/m) c_{m,k} gamma^{-(m+k)}. Symmetric (Grunsky identity);
// asymmetry beyond 1e-12 trips a consistency error. Exact when the source map
// is capacity-normalized; otherwise entries below the double-precision range
// of gamma^{m+k} degrade to 0.
struct MuMatrix {
  int M = 0;
  Eigen::MatrixXcd mu; // (m-1, k-1) -> mu_{m,k}
};

MuMatrix mu_matrix(const GrunskyMatrix& g);

// mu matrix of the capacity-normalized map, the scale-invariant route used by
// the spectral pipeline.
MuMatrix mu_of(const LaurentMap& map, int M);

} // namespace npspec
