#pragma once

#include <Eigen/Dense>

#include "faber.hpp"
#include "laurent.hpp"
#include "polarization.hpp"

namespace npspec {

enum class Region { inside, outside, collar };

// Point classification against a dense boundary polygon (winding number),
// with an ill-conditioned collar of width 1e-6 * gamma excluded.
class PointClassifier {
public:
  // The default sampling keeps the polyline's sagitta well below the collar
  // width, so true boundary points always classify as collar.
  PointClassifier(const LaurentMap& map, int Q = 16384);
  Region classify(cplx z) const;

private:
  std::vector<cplx> poly_;
  double collar_;
};

// Preimage of an exterior point: solves Psi(w) = z by (damped) fixed point
// w <- z - a0 - sum a_n w^{-n}, seeded with w = z.
cplx exterior_preimage(const LaurentMap& map, cplx z);

// Single layer potential of the basis density zeta_m at z. m = 0 gives the
// capacity eigenfunction (log gamma inside, log|w| outside); m != 0 follows
// the Faber/Grunsky representation with the exterior sum kept to its exact
// finite depth k <= |m| * order. Conjugation symmetry handles m < 0.
cplx single_layer_zeta(const LaurentMap& map, int m, cplx z);

// Background harmonic field H = Re P for a complex polynomial P and the
// transmission solution u = H + S[phi] at contrast k.
struct TransmissionSolution {
  LaurentMap map;
  MaterialParam mat;
  int n = 0;
  std::vector<cplx> hpoly;    // P coefficients, ascending powers
  Eigen::VectorXcd phi;       // density in the zeta basis (-n..-1, 1..n)
  FaberSet faber;             // F_m for the interior representation
  GrunskyMatrix grunsky;      // rows m <= n to exact depth for the exterior one
  PointClassifier classifier;

  double background(cplx z) const;
  double value(cplx z) const; // throws on collar points
};

TransmissionSolution transmission_solve(const LaurentMap& map, const MaterialParam& mat,
                                        const std::vector<cplx>& hpoly, int n);

struct FieldGrid {
  int nx = 0, ny = 0;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  std::vector<double> u;      // row-major [iy][ix], NaN on collar points
  std::vector<int> region;    // 0 inside, 1 outside, 2 collar
};

FieldGrid transmission_field(const TransmissionSolution& sol, double xmin, double xmax,
                             double ymin, double ymax, int nx, int ny);

} // namespace npspec
