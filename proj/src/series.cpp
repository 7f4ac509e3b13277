#include "series.hpp"

namespace npspec {

LaurentSeries LaurentSeries::monomial(cplx coef, int power) {
  LaurentSeries s;
  s.lo_ = power;
  s.c_.assign(1, coef);
  return s;
}

LaurentSeries LaurentSeries::from_map(const LaurentMap& map) {
  LaurentSeries s;
  int N = map.order();
  s.lo_ = N > 0 ? -N : 0;
  s.c_.assign(N + 2, cplx(0.0, 0.0));
  for (int n = 1; n <= N; ++n) s.c_[N - n] = map.coeff(n);
  s.c_[N] = map.a0();
  s.c_[N + 1] = cplx(1.0, 0.0);
  s.trim();
  return s;
}

LaurentSeries LaurentSeries::wdpsi_of(const LaurentMap& map) {
  LaurentSeries s;
  int N = map.order();
  s.lo_ = N > 0 ? -N : 1;
  s.c_.assign(N + 2, cplx(0.0, 0.0));
  for (int n = 1; n <= N; ++n) s.c_[N - n] = -double(n) * map.coeff(n);
  s.c_[N + 1] = cplx(1.0, 0.0);
  s.trim();
  return s;
}

cplx LaurentSeries::coeff(int p) const {
  int i = p - lo_;
  if (i < 0 || i >= static_cast<int>(c_.size())) return cplx(0.0, 0.0);
  return c_[i];
}

void LaurentSeries::add_term(int p, cplx v) {
  if (c_.empty()) {
    lo_ = p;
    c_.assign(1, v);
    return;
  }
  if (p < lo_) {
    c_.insert(c_.begin(), lo_ - p, cplx(0.0, 0.0));
    lo_ = p;
  } else if (p > hi()) {
    c_.resize(p - lo_ + 1, cplx(0.0, 0.0));
  }
  c_[p - lo_] += v;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& rhs) {
  for (int p = rhs.lo(); p <= rhs.hi(); ++p) {
    cplx v = rhs.coeff(p);
    if (v != cplx(0.0, 0.0)) add_term(p, v);
  }
  return *this;
}

LaurentSeries& LaurentSeries::operator*=(cplx s) {
  for (cplx& v : c_) v *= s;
  return *this;
}

LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y) {
  LaurentSeries r;
  if (x.empty() || y.empty()) return r;
  r.lo_ = x.lo() + y.lo();
  r.c_.assign(x.c_.size() + y.c_.size() - 1, cplx(0.0, 0.0));
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == cplx(0.0, 0.0)) continue;
    for (size_t j = 0; j < y.c_.size(); ++j) r.c_[i + j] += x.c_[i] * y.c_[j];
  }
  return r;
}

cplx LaurentSeries::eval(cplx w) const {
  // Horner from the top power down, then multiply by w^lo.
  cplx acc(0.0, 0.0);
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) acc = acc * w + c_[i];
  if (lo_ == 0) return acc;
  return acc * std::pow(w, cplx(double(lo_), 0.0));
}

void LaurentSeries::trim() {
  size_t head = 0;
  while (head < c_.size() && c_[head] == cplx(0.0, 0.0)) ++head;
  if (head == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  size_t tail = c_.size();
  while (tail > head && c_[tail - 1] == cplx(0.0, 0.0)) --tail;
  c_ = std::vector<cplx>(c_.begin() + head, c_.begin() + tail);
  lo_ += static_cast<int>(head);
}

LaurentSeries compose_poly(const std::vector<cplx>& poly, const LaurentSeries& s) {
  LaurentSeries acc;
  for (int j = static_cast<int>(poly.size()) - 1; j >= 0; --j) {
    acc = acc * s;
    acc.add_term(0, poly[j]);
  }
  acc.trim();
  return acc;
}

} // namespace npspec
