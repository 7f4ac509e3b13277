#include "npspec.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

constexpr double pi = std::numbers::pi;

struct MapHandle {
  npspec_map* m = nullptr;
  ~MapHandle() { npspec_map_free(m); }
};

} // namespace

TEST_SUITE("capi") {

TEST_CASE("version and error names are stable strings") {
  const char* v = npspec_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
  CHECK(std::string(npspec_error_name(NPSPEC_OK)) == "ok");
  CHECK(std::string(npspec_error_name(NPSPEC_ERR_INVALID_ARGUMENT)) ==
        "invalid_argument");
  CHECK(std::string(npspec_error_name(NPSPEC_ERR_IO)) == "io_error");
  CHECK(std::string(npspec_error_name(NPSPEC_ERR_DILUTE)) == "dilute_violation");
  CHECK(npspec_error_name(12345) != nullptr);
}

TEST_CASE("map creation, accessors, and free tolerate the documented inputs") {
  const double re[2] = {0.25, 0.05};
  const double im[2] = {0.1, -0.02};
  MapHandle h;
  REQUIRE(npspec_map_create(1.2, 0.3, -0.1, re, im, 2, &h.m) == NPSPEC_OK);
  REQUIRE(h.m != nullptr);

  double g = 0;
  CHECK(npspec_map_gamma(h.m, &g) == NPSPEC_OK);
  CHECK(g == 1.2);
  int order = 0;
  CHECK(npspec_map_order(h.m, &order) == NPSPEC_OK);
  CHECK(order == 2);
  double a0re = 0, a0im = 0;
  CHECK(npspec_map_a0(h.m, &a0re, &a0im) == NPSPEC_OK);
  CHECK(a0re == 0.3);
  CHECK(a0im == -0.1);
  double cre = 0, cim = 0;
  CHECK(npspec_map_coeff(h.m, 2, &cre, &cim) == NPSPEC_OK);
  CHECK(cre == 0.05);
  CHECK(cim == -0.02);
  CHECK(npspec_map_coeff(h.m, 9, &cre, &cim) == NPSPEC_OK);  // beyond truncation
  CHECK(cre == 0.0);
  CHECK(npspec_map_coeff(h.m, 0, &cre, &cim) == NPSPEC_ERR_INVALID_ARGUMENT);

  double area = 0;
  CHECK(npspec_map_area(h.m, &area) == NPSPEC_OK);
  CHECK(area > 0.0);
  CHECK(npspec_map_validate(h.m, 2048) == NPSPEC_OK);

  // Null handles are rejected, freeing null is a no-op.
  CHECK(npspec_map_gamma(nullptr, &g) == NPSPEC_ERR_INVALID_ARGUMENT);
  npspec_map_free(nullptr);
}

TEST_CASE("invalid construction reports an error with a message") {
  npspec_map* m = nullptr;
  CHECK(npspec_map_create(-1.0, 0, 0, nullptr, nullptr, 0, &m) ==
        NPSPEC_ERR_INVALID_ARGUMENT);
  CHECK(m == nullptr);
  const char* msg = npspec_last_error();
  REQUIRE(msg != nullptr);
  CHECK(std::strlen(msg) > 0);
}

TEST_CASE("generator strings build the documented shapes") {
  struct Case {
    const char* spec;
    double gamma;
  };
  const Case cases[] = {
      {"disk:2.0", 2.0},
      {"ellipse:2,1", 1.5},
      {"algebraic:3,0.1", 1.0},
      {"blob", 1.0},
  };
  for (const Case& c : cases) {
    MapHandle h;
    REQUIRE_MESSAGE(npspec_map_generate(c.spec, &h.m) == NPSPEC_OK, c.spec);
    double g = 0;
    CHECK(npspec_map_gamma(h.m, &g) == NPSPEC_OK);
    CHECK(g == doctest::Approx(c.gamma).epsilon(1e-12));
  }

  MapHandle bad;
  CHECK(npspec_map_generate("nonsense:1,2", &bad.m) == NPSPEC_ERR_INVALID_ARGUMENT);
  CHECK(npspec_map_generate("ellipse:2", &bad.m) == NPSPEC_ERR_INVALID_ARGUMENT);
  CHECK(npspec_map_generate("ellipse:2,abc", &bad.m) == NPSPEC_ERR_INVALID_ARGUMENT);
  CHECK(npspec_map_generate("algebraic:2.5,0.1", &bad.m) ==
        NPSPEC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("json round trip through the string interface") {
  MapHandle h;
  REQUIRE(npspec_map_generate("ellipse:2,1", &h.m) == NPSPEC_OK);
  char* text = nullptr;
  REQUIRE(npspec_map_to_json(h.m, &text) == NPSPEC_OK);
  REQUIRE(text != nullptr);
  MapHandle back;
  CHECK(npspec_map_from_json(text, &back.m) == NPSPEC_OK);
  double g = 0;
  CHECK(npspec_map_gamma(back.m, &g) == NPSPEC_OK);
  CHECK(g == 1.5);
  npspec_string_free(text);
  npspec_string_free(nullptr);

  MapHandle bad;
  CHECK(npspec_map_from_json("{broken", &bad.m) == NPSPEC_ERR_IO);
}

TEST_CASE("eval and boundary walk the mapped curve") {
  MapHandle h;
  REQUIRE(npspec_map_generate("ellipse:2,1", &h.m) == NPSPEC_OK);
  double zr = 0, zi = 0;
  CHECK(npspec_map_eval(h.m, 3.0, 0.0, &zr, &zi) == NPSPEC_OK);
  CHECK(zr == doctest::Approx(3.25).epsilon(1e-14));  // w + 0.75/w at w = 3
  CHECK(npspec_map_eval(h.m, 0.1, 0.0, &zr, &zi) == NPSPEC_ERR_DOMAIN);

  const int Q = 8;
  std::vector<double> xy(2 * Q);
  CHECK(npspec_map_boundary(h.m, Q, xy.data()) == NPSPEC_OK);
  CHECK(xy[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(xy[1]) <= 1e-14);
}

TEST_CASE("spectrum options default to the published protocol") {
  npspec_spectrum_options opt;
  npspec_spectrum_options_default(&opt);
  CHECK(opt.kmax == 30);
  CHECK(opt.threshold == doctest::Approx(1e-5));
  CHECK(opt.max_step == 16);
  CHECK(opt.window == 5);
  CHECK(opt.step_size == 100);
  CHECK(opt.floor == doctest::Approx(2.6161e-13));
}

TEST_CASE("fixed-section spectrum reproduces the ellipse decay") {
  MapHandle h;
  REQUIRE(npspec_map_generate("ellipse:2,1", &h.m) == NPSPEC_OK);
  std::vector<double> lam(50);
  REQUIRE(npspec_positive_spectrum(h.m, 50, lam.data()) == NPSPEC_OK);
  for (int k = 1; k <= 10; ++k)
    CHECK(std::abs(lam[size_t(k - 1)] - 0.5 * std::pow(1.0 / 3.0, k)) <= 1e-10);

  std::vector<double> eig(100);
  REQUIRE(npspec_section_eigenvalues(h.m, 50, eig.data()) == NPSPEC_OK);
  CHECK(eig[0] == doctest::Approx(-lam[0]).epsilon(1e-12));
  CHECK(eig[99] == doctest::Approx(lam[0]).epsilon(1e-12));
}

TEST_CASE("adaptive spectrum run exposes steps, values, and history") {
  MapHandle h;
  REQUIRE(npspec_map_generate("ellipse:2,1", &h.m) == NPSPEC_OK);
  npspec_spectrum_options opt;
  npspec_spectrum_options_default(&opt);
  opt.kmax = 6;
  npspec_spectrum* s = nullptr;
  REQUIRE(npspec_spectrum_run(h.m, &opt, &s) == NPSPEC_OK);
  REQUIRE(s != nullptr);

  int steps = 0, early = 0;
  CHECK(npspec_spectrum_steps(s, &steps, &early) == NPSPEC_OK);
  CHECK(steps == 6);
  CHECK(early == 1);

  std::vector<double> lam(6);
  std::vector<int> conv(6), floored(6);
  CHECK(npspec_spectrum_values(s, lam.data(), conv.data(), floored.data()) ==
        NPSPEC_OK);
  for (int k = 1; k <= 6; ++k) {
    CHECK(conv[size_t(k - 1)] == 1);
    CHECK(floored[size_t(k - 1)] == 0);
    CHECK(std::abs(lam[size_t(k - 1)] - 0.5 * std::pow(1.0 / 3.0, k)) <= 1e-12);
  }

  std::vector<double> hist(6), rel(6);
  CHECK(npspec_spectrum_history(s, 2, hist.data(), rel.data()) == NPSPEC_OK);
  CHECK(hist[0] == doctest::Approx(lam[0]).epsilon(1e-12));
  CHECK(rel[0] <= 1e-5);  // the diagonal case is exact at every order
  CHECK(npspec_spectrum_history(s, 99, hist.data(), rel.data()) ==
        NPSPEC_ERR_INVALID_ARGUMENT);
  npspec_spectrum_free(s);
  npspec_spectrum_free(nullptr);
}

TEST_CASE("cluster helpers expose the symmetric multiset") {
  CHECK(npspec_cluster_count(3) == 6);
  CHECK(npspec_cluster_count(0) == 0);
  std::vector<double> v(6);
  REQUIRE(npspec_cluster_asymptotics(3, 0.05, v.data()) == NPSPEC_OK);
  CHECK(v[0] == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(v[5] == doctest::Approx(-0.05).epsilon(1e-14));
  CHECK(npspec_cluster_asymptotics(0, 0.05, v.data()) ==
        NPSPEC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("polarization tensors and bound checks cross the boundary") {
  MapHandle h;
  REQUIRE(npspec_map_generate("ellipse:2,1", &h.m) == NPSPEC_OK);
  double M[4] = {0, 0, 0, 0}, tau1 = 0, tau2 = 0;
  REQUIRE(npspec_pt(h.m, 5.0, 32, 256, M, &tau1, &tau2) == NPSPEC_OK);
  CHECK(M[0] == doctest::Approx(24 * pi / 7).epsilon(1e-10));
  CHECK(M[3] == doctest::Approx(24 * pi / 11).epsilon(1e-10));
  CHECK(tau1 >= tau2);

  double Mx[4], t1, t2;
  REQUIRE(npspec_pt_extreme(h.m, +1, Mx, &t1, &t2) == NPSPEC_OK);
  CHECK(Mx[0] == doctest::Approx(6 * pi).epsilon(1e-12));
  CHECK(Mx[3] == doctest::Approx(3 * pi).epsilon(1e-12));
  double ti = 0;
  REQUIRE(npspec_pt_trace_inverse_extreme(h.m, +1, &ti) == NPSPEC_OK);
  CHECK(ti == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-12));

  double slack_trace = 0, slack_inverse = 0;
  int ok = 0;
  REQUIRE(npspec_hs_check(M, 5.0, 2 * pi, &slack_trace, &slack_inverse, &ok) ==
          NPSPEC_OK);
  CHECK(ok == 1);
  CHECK(std::abs(slack_inverse) <= 1e-10);

  // lambda parameterization agrees with the contrast one: k=5 <-> lambda=3/4.
  double Ml[4];
  REQUIRE(npspec_pt_lambda(h.m, 0.75, 32, 256, Ml, &t1, &t2) == NPSPEC_OK);
  CHECK(Ml[0] == doctest::Approx(M[0]).epsilon(1e-12));

  double trace_abs = 0, diam = 0, slo = 0, shi = 0;
  REQUIRE(npspec_trace_diam_check(h.m, 2048, &trace_abs, &diam, &slo, &shi) ==
          NPSPEC_OK);
  CHECK(trace_abs == doctest::Approx(4 * pi * 1.5 * 1.5).epsilon(1e-12));
  CHECK(diam == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(slo >= 0.0);
  CHECK(shi >= 0.0);

  double darea = 0, product = 0, gap = 0;
  REQUIRE(npspec_dilation(h.m, 100 * 1.5, &darea, &product, &gap) == NPSPEC_OK);
  CHECK(std::abs(product - 1.0) <= 1e-3);
  CHECK(gap == doctest::Approx(4 * pi * 0.75).epsilon(1e-10));
}

TEST_CASE("interior expansions convert and satisfy the area inequality") {
  const double bre[1] = {2.0};
  const double bim[1] = {0.0};
  MapHandle h;
  REQUIRE(npspec_riemann_to_exterior(bre, bim, 1, 4, &h.m) == NPSPEC_OK);
  double g = 0;
  CHECK(npspec_map_gamma(h.m, &g) == NPSPEC_OK);
  CHECK(g == doctest::Approx(0.5).epsilon(1e-14));

  double out6[6];
  REQUIRE(npspec_riemann_check(bre, bim, 1, pi * 0.25, nullptr, nullptr, 0,
                               out6) == NPSPEC_OK);
  CHECK(out6[0] == doctest::Approx(0.25).epsilon(1e-12));  // gamma^2, disk
  CHECK(out6[2] >= -1e-12);
  CHECK(out6[3] >= -1e-12);
  CHECK(std::isnan(out6[4]));
}

TEST_CASE("effective expansion and functionals agree with the closed forms") {
  MapHandle h;
  REQUIRE(npspec_map_generate("rect", &h.m) == NPSPEC_OK);
  double sig[4], o2[4], o4[4];
  REQUIRE(npspec_effective(h.m, +1, 0.1, sig, o2, o4) == NPSPEC_OK);
  CHECK(sig[0] == doctest::Approx(1.0 + 0.01 * o2[0] + 1e-4 * o4[0]).epsilon(1e-12));
  CHECK(o4[0] == doctest::Approx(0.5 * (o2[0] * o2[0] + o2[1] * o2[2])).epsilon(1e-12));

  double tr = 0, det = 0, tri = 0;
  REQUIRE(npspec_a_functionals(h.m, +1, 0.1, &tr, &det, &tri) == NPSPEC_OK);
  CHECK(tri == doctest::Approx(tr / det).epsilon(1e-12));

  double X = 0;
  REQUIRE(npspec_x_functional(h.m, &X) == NPSPEC_OK);
  double area = 0;
  CHECK(npspec_map_area(h.m, &area) == NPSPEC_OK);
  CHECK(X >= area);

  double bound = 0;
  REQUIRE(npspec_a_trace_inverse_bound(h.m, +1, 0.1, &bound) == NPSPEC_OK);
  CHECK(bound > 0.0);

  double ngsig[4], ngo2[4], ngo4[4];
  REQUIRE(npspec_ngon_effective(4, +1, 0.1, ngsig, ngo2, ngo4) == NPSPEC_OK);
  CHECK(ngo2[0] == doctest::Approx(2.18843961523).epsilon(1e-10));
  CHECK(ngo2[1] == 0.0);

  double radius = 0;
  REQUIRE(npspec_ngon_radius(4, 1.0, &radius) == NPSPEC_OK);
  CHECK(radius == doctest::Approx(0.5901703).epsilon(1e-6));

  // rho^2 |Omega| >= 1 violates the dilute regime.
  CHECK(npspec_effective(h.m, +1, 2.0, sig, nullptr, nullptr) ==
        NPSPEC_ERR_DILUTE);
}

TEST_CASE("field solve samples the transmission solution") {
  MapHandle h;
  REQUIRE(npspec_map_generate("ellipse:2,1", &h.m) == NPSPEC_OK);
  const double pre[2] = {0.0, 1.0};
  const double pim[2] = {0.0, 0.0};
  npspec_field* f = nullptr;
  REQUIRE(npspec_field_solve(h.m, 5.0, pre, pim, 2, 24, &f) == NPSPEC_OK);
  REQUIRE(f != nullptr);

  int order = 0;
  CHECK(npspec_field_order(f, &order) == NPSPEC_OK);
  CHECK(order == 24);

  double u = 0;
  CHECK(npspec_field_value(f, 0.5, 0.2, &u) == NPSPEC_OK);
  CHECK(u == doctest::Approx(0.5 * 3.0 / 7.0).epsilon(1e-8));

  double bg = 0;
  CHECK(npspec_field_background(f, 0.5, 0.2, &bg) == NPSPEC_OK);
  CHECK(bg == doctest::Approx(0.5));

  std::vector<double> dre(48), dim(48);
  CHECK(npspec_field_density(f, dre.data(), dim.data()) == NPSPEC_OK);

  const int nx = 7, ny = 5;
  std::vector<double> us(size_t(nx) * ny);
  std::vector<int> regions(size_t(nx) * ny);
  CHECK(npspec_field_grid(f, -3, 3, -2, 2, nx, ny, us.data(), regions.data()) ==
        NPSPEC_OK);
  CHECK(regions[size_t(ny / 2) * nx + nx / 2] == 0);  // center is inside
  CHECK(regions[0] == 1);                             // far corner is outside

  npspec_field_free(f);
  npspec_field_free(nullptr);
}

TEST_CASE("fdm entry point returns the homogenized tensor") {
  MapHandle h;
  REQUIRE(npspec_map_generate("disk:0.5641895835477563", &h.m) == NPSPEC_OK);
  double sig[4], mask = 0, residual[2] = {0, 0};
  int iters[2] = {0, 0};
  REQUIRE(npspec_fdm(h.m, 0.2, 4.0, 64, sig, &mask, residual, iters) ==
          NPSPEC_OK);
  CHECK(sig[0] > 1.0);
  CHECK(sig[0] == doctest::Approx(sig[3]).epsilon(1e-6));
  CHECK(mask == doctest::Approx(0.04).epsilon(0.1));
  CHECK(residual[0] <= 1e-10);
  CHECK(iters[0] > 0);
}

TEST_CASE("grunsky, mu, and faber exports match their shapes") {
  MapHandle h;
  REQUIRE(npspec_map_generate("ellipse:2,1", &h.m) == NPSPEC_OK);
  const int M = 4, K = 4;
  std::vector<double> cre(size_t(M) * K), cim(size_t(M) * K);
  REQUIRE(npspec_grunsky(h.m, M, K, cre.data(), cim.data()) == NPSPEC_OK);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < K; ++b) {
      double expect = (a == b) ? std::pow(0.75, a + 1) : 0.0;
      CHECK(cre[size_t(a) * K + b] == doctest::Approx(expect).epsilon(1e-12));
    }

  std::vector<double> mre(size_t(M) * M), mim(size_t(M) * M);
  REQUIRE(npspec_mu(h.m, M, mre.data(), mim.data()) == NPSPEC_OK);
  for (int a = 0; a < M; ++a)
    CHECK(mre[size_t(a) * M + a] ==
          doctest::Approx(std::pow(1.0 / 3.0, a + 1)).epsilon(1e-12));

  CHECK(npspec_faber_size(3) == 9);
  CHECK(npspec_faber_size(0) == 0);
  std::vector<double> fre(npspec_faber_size(3)), fim(npspec_faber_size(3));
  REQUIRE(npspec_faber(h.m, 3, fre.data(), fim.data()) == NPSPEC_OK);
  // Packed as F_1 (2 coeffs), F_2 (3 coeffs), F_3 (4 coeffs); F_2 = z^2 - 1.5.
  CHECK(fre[2] == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(fre[4] == doctest::Approx(1.0));
}

TEST_CASE("transform and normalize are exposed") {
  MapHandle h;
  REQUIRE(npspec_map_generate("blob", &h.m) == NPSPEC_OK);
  MapHandle t;
  REQUIRE(npspec_map_transformed(h.m, 2.0, 0.5, 1.0, -1.0, &t.m) == NPSPEC_OK);
  double g = 0;
  CHECK(npspec_map_gamma(t.m, &g) == NPSPEC_OK);
  CHECK(g == doctest::Approx(2.0).epsilon(1e-14));

  MapHandle n;
  REQUIRE(npspec_map_normalized(t.m, &n.m) == NPSPEC_OK);
  CHECK(npspec_map_gamma(n.m, &g) == NPSPEC_OK);
  CHECK(g == doctest::Approx(1.0).epsilon(1e-14));

  double d = 0;
  CHECK(npspec_map_diameter(h.m, 2048, &d) == NPSPEC_OK);
  CHECK(d > 0.0);
}

} // TEST_SUITE
