#pragma once

#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"

namespace npspec {

using cplx = std::complex<double>;

// Exterior conformal map of a Jordan domain, truncated Laurent series
//   Psi(w) = w + a0 + sum_{n>=1} a_n w^{-n},  |w| > gamma.
// gamma is the conformal radius (= logarithmic capacity) of the domain.
class LaurentMap {
public:
  LaurentMap(double gamma, cplx a0, std::vector<cplx> a);

  double gamma() const { return gamma_; }
  cplx a0() const { return a0_; }
  const std::vector<cplx>& coeffs() const { return a_; }
  int order() const { return static_cast<int>(a_.size()); }
  cplx coeff(int n) const;                 // a_n, zero beyond the truncation

  cplx eval(cplx w) const;                 // requires |w| > gamma
  cplx boundary_point(double theta) const; // Psi(gamma e^{i theta})
  cplx w_dpsi(cplx w) const;               // w Psi'(w), finite Laurent sum

  double area() const;                     // pi (gamma^2 - sum n |a_n|^2 gamma^{-2n})
  double capacity() const { return gamma_; }

  LaurentMap transformed(double scale, double rot, cplx shift) const;
  LaurentMap normalized() const;           // capacity-1 rescaling, NP spectrum invariant

  // Jordan-domain checks: Bieberbach, positive area, non-self-intersecting
  // boundary sample, no collapsed tangent. Throws on failure.
  void validate(int Q = 2048) const;

private:
  double gamma_;
  cplx a0_;
  std::vector<cplx> a_;
};

// Uniform boundary sample at theta_i = 2 pi i / Q. h is the length element
// |dz/dtheta| = |w Psi'(w)|, normal is the outward unit normal as a complex
// number, so normal*h equals w Psi'(w) on the sample.
struct BoundarySample {
  std::vector<double> theta;
  std::vector<cplx> point;
  std::vector<double> h;
  std::vector<cplx> normal;
};

BoundarySample boundary_sample(const LaurentMap& map, int Q);

// Max pairwise distance over a Q-point boundary sample. Nondecreasing under
// sample refinement; Q >= 256 required.
double diameter(const LaurentMap& map, int Q = 2048);

// Shape file format: {"gamma": g, "a0": [re, im], "a": [[re, im], ...]}.
LaurentMap map_from_json(const std::string& text);
LaurentMap map_from_json_file(const std::string& path);
std::string map_to_json(const LaurentMap& map);
void map_to_json_file(const LaurentMap& map, const std::string& path);

} // namespace npspec
