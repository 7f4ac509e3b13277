#include "faber.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "shapes.hpp"
#include "test_util.hpp"

using npspec::cplx;
using npspec::LaurentMap;
using testutil::polyval;

namespace {

constexpr double pi = std::numbers::pi;

// Laurent coefficient of w^{-k} of theta -> values(theta) sampled uniformly on
// the circle |w| = R: a plain DFT, accurate to the trapezoid-rule aliasing.
cplx dft_coefficient(const std::vector<cplx>& values, double R, int k) {
  int Q = int(values.size());
  cplx acc = 0.0;
  for (int q = 0; q < Q; ++q) {
    double theta = 2 * pi * q / Q;
    acc += values[size_t(q)] * std::polar(1.0, k * theta);
  }
  return acc / double(Q) * std::pow(R, k);
}

} // namespace

TEST_SUITE("faber") {

TEST_CASE("low-order polynomials match the hand recurrence") {
  LaurentMap m(1.1, cplx(0.2, 0.1), {cplx(0.15, -0.05), cplx(0.04, 0.02)});
  npspec::FaberSet f = npspec::faber_polynomials(m, 3);
  REQUIRE(f.poly.size() == 4);

  // F_0 = 1, F_1 = z - a0, F_2 = (z - a0)^2 - 2 a1.
  CHECK(f.poly[0].size() == 1);
  CHECK(std::abs(f.poly[0][0] - cplx(1.0)) <= 1e-15);

  CHECK(std::abs(f.poly[1][1] - cplx(1.0)) <= 1e-15);
  CHECK(std::abs(f.poly[1][0] + m.a0()) <= 1e-15);

  cplx a0 = m.a0(), a1 = m.coeff(1);
  CHECK(std::abs(f.poly[2][2] - cplx(1.0)) <= 1e-15);
  CHECK(std::abs(f.poly[2][1] + 2.0 * a0) <= 1e-14);
  CHECK(std::abs(f.poly[2][0] - (a0 * a0 - 2.0 * a1)) <= 1e-14);
}

TEST_CASE("polynomials are monic of full degree") {
  LaurentMap m = npspec::sample_blob();
  int M = 12;
  npspec::FaberSet f = npspec::faber_polynomials(m, M);
  REQUIRE(int(f.poly.size()) == M + 1);
  for (int k = 0; k <= M; ++k) {
    REQUIRE(int(f.poly[size_t(k)].size()) == k + 1);
    CHECK(std::abs(f.poly[size_t(k)][size_t(k)] - cplx(1.0)) <= 1e-12);
  }
}

TEST_CASE("ellipse polynomials are shifted chebyshev") {
  // For Psi(w) = w + c/w one has F_m(Psi(w)) = w^m + c^m w^{-m}, i.e.
  // F_2(z) = z^2 - 2c and F_3(z) = z^3 - 3cz.
  double c = 0.75;
  LaurentMap m = npspec::ellipse(2.0, 1.0);
  npspec::FaberSet f = npspec::faber_polynomials(m, 3);
  CHECK(std::abs(f.poly[2][0] + 2.0 * c) <= 1e-14);
  CHECK(std::abs(f.poly[2][1]) <= 1e-14);
  CHECK(std::abs(f.poly[3][1] + 3.0 * c) <= 1e-14);
  CHECK(std::abs(f.poly[3][2]) <= 1e-14);
}

TEST_CASE("composition has the defining laurent form on a circle") {
  // F_m(Psi(w)) = w^m + sum_k c_{m,k} w^{-k}: sample on a circle just outside
  // |w| = gamma and read off every Fourier mode. Positive modes below m must
  // vanish; negative modes must reproduce the stored Grunsky coefficients.
  // Extracting the w^{-k} mode multiplies the round-off in the samples by
  // R^k, so the sampling radius stays close to gamma to keep that
  // amplification (1.2^48 ~ 6e3) well inside the tolerances below.
  LaurentMap m = npspec::sample_blob().normalized();
  int M = 8, Q = 1024;
  double R = 1.2 * m.gamma();
  npspec::FaberSet f = npspec::faber_polynomials(m, M);
  npspec::GrunskyMatrix g = npspec::grunsky_coefficients(m, M, M * m.order());

  for (int mm = 1; mm <= M; ++mm) {
    std::vector<cplx> values(static_cast<size_t>(Q));
    for (int q = 0; q < Q; ++q) {
      cplx w = std::polar(R, 2 * pi * q / Q);
      values[size_t(q)] = polyval(f.poly[size_t(mm)], m.eval(w));
    }
    // Leading mode: coefficient of w^{+mm} equals 1.
    CHECK(std::abs(dft_coefficient(values, R, -mm) - cplx(1.0)) <= 1e-10);
    // No intermediate nonnegative modes.
    for (int j = 0; j < mm; ++j)
      CHECK(std::abs(dft_coefficient(values, R, -j)) <= 1e-10);
    // Tail modes match the Grunsky matrix entry by entry.
    for (int k = 1; k <= g.K; ++k) {
      cplx oracle = dft_coefficient(values, R, k);
      CHECK(std::abs(g.c(mm - 1, k - 1) - oracle) <= 1e-8);
    }
    // The tail is exactly finite: modes beyond m * order vanish.
    CHECK(std::abs(dft_coefficient(values, R, mm * m.order() + 1)) <= 1e-9);
  }
}

TEST_CASE("grunsky rows vanish beyond the exact depth") {
  LaurentMap m = npspec::sample_blob();
  int M = 6, K = 40;
  npspec::GrunskyMatrix g = npspec::grunsky_coefficients(m, M, K);
  REQUIRE(g.M == M);
  REQUIRE(g.K == K);
  for (int mm = 1; mm <= M; ++mm)
    for (int k = mm * m.order() + 1; k <= K; ++k)
      CHECK(std::abs(g.c(mm - 1, k - 1)) == 0.0);
}

TEST_CASE("grunsky symmetry relation holds") {
  // n c_{m,n} = m c_{n,m}: the generating function of the coefficients is
  // symmetric in its two variables. Entries beyond a row's exact depth are
  // stored as exact zeros while their transposed partners cancel only to
  // round-off, so the comparison carries an absolute floor at round-off
  // scale alongside the relative tolerance.
  for (const LaurentMap& m : {npspec::sample_blob(), npspec::rectangle_fixture(),
                              npspec::regular_ngon(5, 1.0)}) {
    int M = 16;
    npspec::GrunskyMatrix g = npspec::grunsky_coefficients(m, M, M);
    double cmax = 0.0;
    for (int a = 1; a <= M; ++a)
      for (int b = 1; b <= M; ++b) cmax = std::max(cmax, std::abs(g.c(a - 1, b - 1)));
    double floor = 1e-12 * M * std::max(1.0, cmax);
    for (int a = 1; a <= M; ++a)
      for (int b = 1; b <= M; ++b) {
        cplx lhs = double(b) * g.c(a - 1, b - 1);
        cplx rhs = double(a) * g.c(b - 1, a - 1);
        double scale = std::max(std::abs(lhs), std::abs(rhs));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * scale + floor);
      }
  }
}

TEST_CASE("ellipse grunsky matrix is diagonal with powers of the ratio") {
  LaurentMap m = npspec::ellipse(2.0, 1.0);
  int M = 10;
  npspec::GrunskyMatrix g = npspec::grunsky_coefficients(m, M, M);
  double c = 0.75;
  for (int a = 1; a <= M; ++a)
    for (int b = 1; b <= M; ++b) {
      cplx expect = (a == b) ? cplx(std::pow(c, a)) : cplx(0.0);
      CHECK(std::abs(g.c(a - 1, b - 1) - expect) <= 1e-12);
    }
}

TEST_CASE("mu matrix is symmetric and scale free") {
  LaurentMap m = npspec::sample_blob();
  int M = 24;
  npspec::MuMatrix mu = npspec::mu_of(m, M);
  REQUIRE(mu.M == M);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      CHECK(std::abs(mu.mu(a, b) - mu.mu(b, a)) <= 1e-12);

  // mu is a similarity invariant: rescaling, rotating, and shifting the
  // domain conjugates the spectrum-generating data by a phase only, so the
  // entrywise moduli are unchanged and the spectrum is identical.
  npspec::MuMatrix tr = npspec::mu_of(m.transformed(2.3, 0.7, cplx(5.0, -2.0)), M);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      CHECK(std::abs(std::abs(tr.mu(a, b)) - std::abs(mu.mu(a, b))) <= 1e-12);
}

TEST_CASE("mu diagonal of the ellipse carries the spectrum") {
  // mu_{m,m} = (a1 / gamma^2)^m = (1/3)^m for the 2:1 ellipse; everything
  // else vanishes.
  npspec::MuMatrix mu = npspec::mu_of(npspec::ellipse(2.0, 1.0), 8);
  for (int a = 1; a <= 8; ++a)
    for (int b = 1; b <= 8; ++b) {
      double expect = (a == b) ? std::pow(1.0 / 3.0, a) : 0.0;
      CHECK(std::abs(mu.mu(a - 1, b - 1) - cplx(expect)) <= 1e-13);
    }
}

} // TEST_SUITE
