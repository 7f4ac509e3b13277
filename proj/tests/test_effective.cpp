#include "effective.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "shapes.hpp"
#include "test_util.hpp"

using npspec::LaurentMap;

namespace {

constexpr double pi = std::numbers::pi;

Eigen::Matrix2d diag2(double a, double b) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

} // namespace

TEST_SUITE("effective") {

TEST_CASE("gamma function matches the standard library") {
  for (double x = 0.05; x <= 5.0; x += 0.0625)
    CHECK(npspec::gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
  CHECK(npspec::gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
}

TEST_CASE("reference rectangle expansion matrices") {
  LaurentMap m = npspec::rectangle_fixture();
  npspec::EffectiveExpansion plus = npspec::effective_expansion(m, +1, 0.1);
  npspec::EffectiveExpansion minus = npspec::effective_expansion(m, -1, 0.1);

  CHECK_MAT2_NEAR(plus.order2, diag2(4.0438, 1.4754), 5e-4);
  CHECK_MAT2_NEAR(plus.order4, diag2(8.1763, 1.0885), 5e-4);
  CHECK_MAT2_NEAR(minus.order2, diag2(-1.4754, -4.0438), 5e-4);
  CHECK_MAT2_NEAR(minus.order4, diag2(1.0885, 8.1763), 5e-4);
}

TEST_CASE("fourth order term is half the squared second order term") {
  LaurentMap m = npspec::sample_blob();
  for (int sign : {+1, -1}) {
    npspec::EffectiveExpansion e = npspec::effective_expansion(m, sign, 0.2);
    CHECK_MAT2_NEAR(e.order4, Eigen::Matrix2d(0.5 * e.order2 * e.order2), 1e-12);
  }
}

TEST_CASE("expansion evaluates to the identity at vanishing density") {
  npspec::EffectiveExpansion e = npspec::effective_expansion(npspec::sample_blob(), +1, 0.0);
  CHECK_MAT2_NEAR(e.sigma(), Eigen::Matrix2d::Identity(), 1e-15);
}

TEST_CASE("expansion rejects densities outside the dilute regime") {
  CHECK_THROWS_AS(npspec::effective_expansion(npspec::sample_blob(), +1, -0.1), npspec::Error);
  CHECK_THROWS_AS(npspec::effective_expansion(npspec::sample_blob(), +1, 2.0), npspec::Error);
  CHECK_THROWS_AS(npspec::effective_expansion(npspec::sample_blob(), 2, 0.1), npspec::Error);
}

TEST_CASE("a-functionals agree with the expansion matrices") {
  LaurentMap m = npspec::rectangle_fixture();
  double rho = 0.25;
  for (int sign : {+1, -1}) {
    npspec::EffectiveExpansion e = npspec::effective_expansion(m, sign, rho);
    Eigen::Matrix2d A = e.sigma() - Eigen::Matrix2d::Identity();
    npspec::AFunctionals f = npspec::A_functionals(m, sign, rho);
    CHECK(f.trace == doctest::Approx(A.trace()).epsilon(1e-12));
    CHECK(f.det == doctest::Approx(A.determinant()).epsilon(1e-12));
    CHECK(f.trace_inverse == doctest::Approx(A.inverse().trace()).epsilon(1e-10));
  }
}

TEST_CASE("x functional dominates the area with ellipse equality") {
  // X = pi (gamma^2 - |a1|^2 / gamma^2) equals the area exactly when all
  // higher coefficients vanish.
  LaurentMap ell = npspec::ellipse(2.0, 1.0);
  CHECK(npspec::x_functional(ell) == doctest::Approx(ell.area()).epsilon(1e-12));
  for (const LaurentMap& m : {npspec::sample_blob(), npspec::rectangle_fixture(),
                              npspec::regular_ngon(6, 1.0)}) {
    CHECK(npspec::x_functional(m) >= m.area() - 1e-12);
  }
}

TEST_CASE("trace inverse bound is sharp for ellipses and one-sided otherwise") {
  double rho = 0.2;
  for (int sign : {+1, -1}) {
    LaurentMap ell = npspec::ellipse(2.0, 1.0);
    double bound = npspec::a_trace_inverse_bound(ell, sign, rho);
    double actual = npspec::A_functionals(ell, sign, rho).trace_inverse;
    CHECK(bound == doctest::Approx(actual).epsilon(1e-10));

    LaurentMap blob = npspec::sample_blob();
    double b2 = npspec::a_trace_inverse_bound(blob, sign, rho);
    double a2 = npspec::A_functionals(blob, sign, rho).trace_inverse;
    // Substituting the smaller area for X moves the functional one way only;
    // the direction depends on the sign of the tensor.
    if (sign > 0)
      CHECK(b2 >= a2 - 1e-12);
    else
      CHECK(b2 <= a2 + 1e-12);
  }
}

TEST_CASE("polygon conformal radius decreases toward the disk limit") {
  CHECK(npspec::ngon_radius(4) == doctest::Approx(0.5901703).epsilon(1e-6));
  double prev = npspec::ngon_radius(3);
  for (int n = 4; n <= 200; ++n) {
    double g = npspec::ngon_radius(n);
    CHECK(g < prev);
    prev = g;
  }
  CHECK(std::abs(npspec::ngon_radius(200) - 1.0 / std::sqrt(pi)) <= 1e-3);
  // The real-argument version interpolates the integer one.
  CHECK(npspec::ngon_radius_real(7.0) == doctest::Approx(npspec::ngon_radius(7)).epsilon(1e-13));
  CHECK_THROWS_AS(npspec::ngon_radius(2), npspec::Error);
}

TEST_CASE("polygon conformal radius scales with the square root of area") {
  double base = npspec::ngon_radius(5, 1.0);
  CHECK(npspec::ngon_radius(5, 4.0) == doctest::Approx(2.0 * base).epsilon(1e-13));
}

TEST_CASE("closed-form polygon expansion matches the generic route") {
  for (int n : {3, 4, 5, 8}) {
    npspec::EffectiveExpansion closed = npspec::ngon_effective(n, +1, 0.1);
    npspec::EffectiveExpansion series =
        npspec::effective_expansion(npspec::regular_ngon(n, 1.0), +1, 0.1);
    // The polygon map is truncated, so the two differ at the truncation level.
    CHECK(testutil::max_abs_diff(closed.order2, series.order2) <= 2e-3);
    CHECK(testutil::max_abs_diff(closed.order4, series.order4) <= 2e-2);
  }
}

TEST_CASE("square expansion coefficients in closed form") {
  npspec::EffectiveExpansion e = npspec::ngon_effective(4, +1, 0.1);
  CHECK(e.order2(0, 0) == doctest::Approx(2.18843961523).epsilon(1e-10));
  CHECK(e.order2(1, 1) == doctest::Approx(2.18843961523).epsilon(1e-10));
  CHECK(e.order2(0, 1) == doctest::Approx(0.0));
  CHECK(e.order4(0, 0) == doctest::Approx(2.39463397475).epsilon(1e-10));
  npspec::EffectiveExpansion i = npspec::ngon_effective(4, -1, 0.1);
  CHECK(i.order2(0, 0) == doctest::Approx(-2.18843961523).epsilon(1e-10));
  CHECK(i.order4(0, 0) == doctest::Approx(2.39463397475).epsilon(1e-10));
}

} // TEST_SUITE
