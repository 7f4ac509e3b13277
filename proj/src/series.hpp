#pragma once

#include <vector>

#include "laurent.hpp"

namespace npspec {

// Dense finite Laurent polynomial sum_{p=lo..hi} c_p w^p. Small helper for
// exact compositions; spans stay modest (a few hundred terms).
class LaurentSeries {
public:
  LaurentSeries() : lo_(0) {}
  static LaurentSeries monomial(cplx coef, int power);
  static LaurentSeries from_map(const LaurentMap& map);   // w + a0 + sum a_n w^{-n}
  static LaurentSeries wdpsi_of(const LaurentMap& map);   // w - sum n a_n w^{-n}

  bool empty() const { return c_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  cplx coeff(int p) const;
  void add_term(int p, cplx v);

  LaurentSeries& operator+=(const LaurentSeries& rhs);
  LaurentSeries& operator*=(cplx s);
  friend LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y);

  // Value at w (w != 0).
  cplx eval(cplx w) const;

  void trim();

private:
  int lo_;
  std::vector<cplx> c_;
};

// P(S(w)) for a polynomial P given by coefficients poly[j] of z^j, composed
// with a finite Laurent series. Exact (Horner over series arithmetic).
LaurentSeries compose_poly(const std::vector<cplx>& poly, const LaurentSeries& s);

} // namespace npspec
