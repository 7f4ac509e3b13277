#include "shapes.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "test_util.hpp"

using npspec::cplx;
using npspec::Error;
using npspec::LaurentMap;

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

TEST_SUITE("shapes") {

TEST_CASE("ellipse stores the joukowski data") {
  LaurentMap m = npspec::ellipse(2.0, 1.0);
  CHECK(m.gamma() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(std::abs(m.a0()) == 0.0);
  CHECK(m.order() == 1);
  CHECK(std::real(m.coeff(1)) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(m.area() == doctest::Approx(2 * pi).epsilon(1e-14));
  // Rightmost boundary point sits at x = a, topmost at y = b.
  CHECK(std::real(m.boundary_point(0.0)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::imag(m.boundary_point(pi / 2)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_NOTHROW(m.validate());

  CHECK_THROWS_AS(npspec::ellipse(1.0, 2.0), Error);  // requires a >= b
  CHECK_THROWS_AS(npspec::ellipse(2.0, 0.0), Error);
}

TEST_CASE("circle is the order-zero ellipse") {
  LaurentMap m = npspec::ellipse(1.5, 1.5);
  CHECK(m.gamma() == doctest::Approx(1.5));
  CHECK(m.order() <= 1);
  CHECK(std::abs(m.coeff(1)) == 0.0);
  CHECK(m.area() == doctest::Approx(pi * 2.25).epsilon(1e-14));
}

TEST_CASE("algebraic map has unit capacity and one tail coefficient") {
  LaurentMap m = npspec::algebraic(3, cplx(0.1, 0.0));
  CHECK(m.gamma() == 1.0);
  CHECK(m.order() == 3);
  CHECK(m.coeff(1) == cplx(0.0));
  CHECK(m.coeff(2) == cplx(0.0));
  CHECK(m.coeff(3) == cplx(0.1, 0.0));
  CHECK_NOTHROW(m.validate());
  // m |c| >= 1 breaks univalence and must fail validation.
  CHECK_THROWS_AS(npspec::algebraic(3, cplx(0.34, 0.0)).validate(), Error);
  CHECK_THROWS_AS(npspec::algebraic(0, cplx(0.1, 0.0)), Error);
}

TEST_CASE("regular n-gon hits the requested area") {
  for (int n : {3, 4, 5, 6, 12}) {
    for (double area : {1.0, 2.5}) {
      LaurentMap m = npspec::regular_ngon(n, area);
      CHECK_NOTHROW(m.validate());
      // The stored series area is the exact area of the truncated shape;
      // truncation of the corner expansion costs a little accuracy.
      CHECK(m.area() == doctest::Approx(area).epsilon(2e-3));
    }
  }
  CHECK_THROWS_AS(npspec::regular_ngon(2), Error);
  CHECK_THROWS_AS(npspec::regular_ngon(4, -1.0), Error);
}

TEST_CASE("regular n-gon boundary has the dihedral symmetry") {
  int n = 5;
  LaurentMap m = npspec::regular_ngon(n, 1.0);
  cplx rot = std::polar(1.0, 2 * pi / n);
  for (double theta : {0.3, 1.0, 2.6}) {
    cplx a = m.boundary_point(theta + 2 * pi / n);
    cplx b = rot * m.boundary_point(theta);
    CHECK(std::abs(a - b) <= 1e-12);
  }
  // Default orientation: a vertex on the positive real axis, so the boundary
  // point at theta = 0 is the farthest-right point and is real.
  CHECK(std::abs(std::imag(m.boundary_point(0.0))) <= 1e-12);
}

TEST_CASE("regular n-gon orientation rotates the vertices") {
  int n = 4;
  double phi = pi / 4;
  LaurentMap base = npspec::regular_ngon(n, 1.0);
  LaurentMap turned = npspec::regular_ngon(n, 1.0, phi);
  cplx rot = std::polar(1.0, phi);
  for (double theta : {0.0, 0.9, 2.0}) {
    cplx expect = rot * base.boundary_point(theta);
    CHECK(std::abs(turned.boundary_point(theta + phi) - expect) <= 1e-12);
  }
  // With the pi/4 turn the square's edges are axis-parallel: the extreme
  // x-coordinate is attained on a whole edge, so the topmost boundary point
  // has |x| <= half the side length and y = side/2.
  double side = 1.0;  // unit area
  cplx top = turned.boundary_point(pi / 2 + phi);
  CHECK(std::imag(top) == doctest::Approx(side / 2).epsilon(1e-2));
}

TEST_CASE("rectangle fixture stores the reference data") {
  LaurentMap m = npspec::rectangle_fixture();
  CHECK(m.gamma() == doctest::Approx(0.66273).epsilon(1e-12));
  CHECK(std::real(m.coeff(1)) == doctest::Approx(0.20439).epsilon(1e-12));
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("sample blob is a valid six-coefficient shape") {
  LaurentMap m = npspec::sample_blob();
  CHECK(m.gamma() == 1.0);
  CHECK(m.order() == 6);
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("sweep families stay valid across their ranges") {
  for (int j : {1, 21, 42}) CHECK_NOTHROW(npspec::coeff_sweep_a(j).validate());
  for (int j : {1, 60, 119}) CHECK_NOTHROW(npspec::coeff_sweep_b(j).validate());
  for (int j = 1; j <= 6; ++j) CHECK_NOTHROW(npspec::crossing_pair(j).validate());
  CHECK_THROWS_AS(npspec::coeff_sweep_a(0), Error);
  CHECK_THROWS_AS(npspec::coeff_sweep_a(43), Error);
  CHECK_THROWS_AS(npspec::coeff_sweep_b(120), Error);
  CHECK_THROWS_AS(npspec::crossing_pair(7), Error);
}

TEST_CASE("sweep coefficients grow linearly in the index") {
  LaurentMap a1 = npspec::coeff_sweep_a(1);
  LaurentMap a5 = npspec::coeff_sweep_a(5);
  for (int n = 1; n <= a1.order(); ++n)
    CHECK(std::abs(a5.coeff(n) - 5.0 * a1.coeff(n)) <= 1e-15);

  LaurentMap b1 = npspec::coeff_sweep_b(1);
  LaurentMap b7 = npspec::coeff_sweep_b(7);
  for (int n = 1; n <= b1.order(); ++n)
    CHECK(std::abs(b7.coeff(n) - 7.0 * b1.coeff(n)) <= 1e-15);
}

TEST_CASE("crossing pair mixes quadratic and linear growth") {
  LaurentMap m = npspec::crossing_pair(5);
  CHECK(std::real(m.coeff(1)) == doctest::Approx(25.0 / 600).epsilon(1e-15));
  CHECK(std::real(m.coeff(2)) == doctest::Approx(5.0 / 300).epsilon(1e-15));
}

} // TEST_SUITE
