#pragma once

#include <optional>

#include <Eigen/Dense>

#include "laurent.hpp"
#include "spectrum.hpp"

namespace npspec {

// Conductivity contrast k in [0, inf], k != 1, and the spectral parameter
// lambda = (k+1)/(2(k-1)), |lambda| >= 1/2 with equality at the extremes.
struct MaterialParam {
  double k = 0.0;
  double lambda = 0.0;
};

MaterialParam material_from_k(double k);
MaterialParam material_from_lambda(double lambda);

struct PolarizationTensor {
  Eigen::Matrix2d M;
  double tau1 = 0.0, tau2 = 0.0; // eigenvalues, tau1 >= tau2
};

// Extreme-contrast tensor, sign = +1 (k = inf) or -1 (k = 0):
//   M = 2 pi [[ s g^2 + Re a1, Im a1 ], [ Im a1, s g^2 - Re a1 ]].
PolarizationTensor pt_extreme(const LaurentMap& map, int sign);

// tr(M^-1) at extreme contrast: s (1/pi) g^2 / (g^4 - |a1|^2).
double pt_trace_inverse(const LaurentMap& map, int sign);

// Finite-contrast tensor through the order-n section: solve
// (lambda I - K)phi = d(background)/d(nu) in the zeta basis, integrate the
// moments with a Q-point trapezoid (exact for the trigonometric polynomials
// involved). Requires n >= 2*order, Q >= 8n.
PolarizationTensor pt_general(const LaurentMap& map, const MaterialParam& mat, int n, int Q);

// Density coefficients (zeta basis, index -n..-1,1..n) for one background
// direction; exposed for the reality/consistency tests and the field solver.
Eigen::VectorXcd pt_density(const LaurentMap& map, const MaterialParam& mat, int n,
                            int direction);

// (lambda I - K_n)^{-1} rhs with a condition guard (resonance error beyond
// cond 1e12). Shared by the tensor and transmission solvers.
Eigen::VectorXcd resolvent_solve(const LaurentMap& map, const MaterialParam& mat, int n,
                                 const Eigen::VectorXcd& rhs);

struct HsReport {
  bool extreme = false;
  double slack_trace = 0.0;   // (1+1/k)|O| - tr(M)/(k-1), NaN for extreme contrast
  double slack_inverse = 0.0; // (1+k)/|O| - (k-1) tr(M^-1), or 1/|O| - |tr(M^-1)|
  bool ok = false;
};

HsReport hs_check(const PolarizationTensor& pt, double k, double area);

struct TraceDiamReport {
  double trace_abs = 0.0; // |tr M| at extreme contrast = 4 pi gamma^2
  double diam = 0.0;
  double slack_low = 0.0;  // |tr M| - (pi/4) diam^2
  double slack_high = 0.0; // 4 pi diam^2 - |tr M|
};

TraceDiamReport trace_diam_check(const LaurentMap& map, int Q = 2048);

struct DilationReport {
  LaurentMap dilated;      // same Laurent tail, capacity r
  double area = 0.0;
  double product = 0.0;    // |O_r| * |tr(M(O_r)^-1)| -> 1 as r grows
  double tau_gap = 0.0;    // tau1 - tau2 = 4 pi |a1|, r-independent
};

DilationReport dilation_family(const LaurentMap& map, double r);

// Exterior Laurent data from an interior Riemann-map expansion
// Phi(zeta) = b1 zeta + b2 zeta^2 + ... (b1 > 0): series reciprocal of
// Phi(1/(b1 z)) gives gamma = 1/b1, a0 = -b2/b1^2, a1 = (b2^2/b1 - b3)/b1^3, ...
LaurentMap riemann_to_exterior(const std::vector<cplx>& b, int order);

struct RiemannCheck {
  double e_plus = 0.0, e_minus = 0.0;   // E(b, +/-) = gamma^2 +/- Re a1
  double slack_plus = 0.0, slack_minus = 0.0;   // E(b, +/-) - |O|/(2 pi)
  double mono_plus = 0.0, mono_minus = 0.0;     // E(b, +/-) - E(c, +/-), NaN if no c
};

RiemannCheck riemann_inequality_check(const std::vector<cplx>& b, double area,
                                      const std::optional<std::vector<cplx>>& c = std::nullopt);

} // namespace npspec
