#include "potentials.hpp"

#include <cmath>

#include "series.hpp"

namespace npspec {

PointClassifier::PointClassifier(const LaurentMap& map, int Q) {
  poly_.resize(Q);
  for (int i = 0; i < Q; ++i) poly_[i] = map.boundary_point(2.0 * M_PI * i / Q);
  collar_ = 1e-6 * map.gamma();
}

Region PointClassifier::classify(cplx z) const {
  int Q = static_cast<int>(poly_.size());
  double d2 = std::numeric_limits<double>::max();
  int wind = 0;
  for (int i = 0; i < Q; ++i) {
    const cplx& a = poly_[i];
    const cplx& b = poly_[(i + 1) % Q];
    // Distance to the segment [a, b], so the collar is a proper band around
    // the sampled curve rather than a union of disks at the vertices.
    cplx e = b - a;
    double len2 = std::norm(e);
    double t = len2 > 0.0 ? std::clamp((std::conj(e) * (z - a)).real() / len2, 0.0, 1.0) : 0.0;
    d2 = std::min(d2, std::norm(a + t * e - z));
    bool up = a.imag() <= z.imag() && b.imag() > z.imag();
    bool dn = a.imag() > z.imag() && b.imag() <= z.imag();
    if (up || dn) {
      double s = (z.imag() - a.imag()) / (b.imag() - a.imag());
      double xc = a.real() + s * (b.real() - a.real());
      if (xc > z.real()) wind += up ? 1 : -1;
    }
  }
  if (d2 < collar_ * collar_) return Region::collar;
  return wind != 0 ? Region::inside : Region::outside;
}

cplx exterior_preimage(const LaurentMap& map, cplx z) {
  const double gam = map.gamma();
  const double tol = 1e-12 * std::max(1.0, std::abs(z));
  auto tail = [&](cplx wc) {  // sum_n a_n w^{-n}
    cplx inv = 1.0 / wc, acc(0.0, 0.0);
    for (int n = map.order(); n >= 1; --n) acc = (acc + map.coeff(n)) * inv;
    return acc;
  };
  auto deriv = [&](cplx wc) {  // Psi'(w) = 1 - sum_n n a_n w^{-n-1}
    cplx inv = 1.0 / wc, acc(0.0, 0.0);
    for (int n = map.order(); n >= 1; --n) acc = (acc + double(n) * map.coeff(n)) * inv;
    return 1.0 - acc * inv;
  };
  // Newton on Psi(w) - z = 0. The fixed-point map w -> z - a0 - tail(w) is
  // only marginally contractive near the boundary, so plain iteration stalls
  // there; Newton converges quadratically everywhere Psi' stays away from 0
  // and falls back to the (damped) fixed-point step where it does not.
  cplx w = z - map.a0();
  if (!(std::abs(w) > gam)) w = std::abs(w) > 0.0 ? w * (2.0 * gam / std::abs(w)) : cplx(2.0 * gam, 0.0);
  for (int it = 0; it < 200; ++it) {
    cplx f = w + map.a0() + tail(w) - z;  // Psi(w) - z
    cplx fp = deriv(w);
    cplx step = std::abs(fp) > 1e-8 ? f / fp : f;  // w - f is the fixed-point step
    cplx next = w - step;
    // Keep the iterate strictly outside the critical circle.
    double shrink = 1.0;
    for (int h = 0; h < 80 && !(std::abs(next) > gam); ++h) {
      shrink *= 0.5;
      next = w - shrink * step;
    }
    if (!(std::abs(next) > gam))
      fail(ErrorCode::domain_error, "preimage fell inside the critical circle");
    if (std::abs(next - w) < tol) return next;
    w = next;
  }
  fail(ErrorCode::no_convergence, "exterior preimage iteration did not converge");
}

namespace {

cplx poly_eval(const std::vector<cplx>& poly, cplx z) {
  cplx acc(0.0, 0.0);
  for (int j = static_cast<int>(poly.size()) - 1; j >= 0; --j) acc = acc * z + poly[j];
  return acc;
}

// Exterior series of S[zeta_m] in w = e^{rho + i theta}:
//   -(1/(2 sqrt(m) g^m)) ( sum_k c_{m,k} e^{-k(rho+i theta)} + g^{2m} e^{m(-rho+i theta)} ).
cplx exterior_single_layer(const LaurentMap& map, const GrunskyMatrix& g, int m, cplx w) {
  double gam = map.gamma();
  cplx iw = 1.0 / w;
  int K = std::min(g.K, m * std::max(map.order(), 1));
  cplx tail(0.0, 0.0);
  for (int k = K; k >= 1; --k) tail = (tail + g.c(m - 1, k - 1)) * iw;
  cplx refl = std::pow(gam * gam / std::abs(w), double(m)) *
              std::polar(1.0, double(m) * std::arg(w));
  double scale = -0.5 / (std::sqrt(double(m)) * std::pow(gam, double(m)));
  return scale * (tail + refl);
}

} // namespace

cplx single_layer_zeta(const LaurentMap& map, int m, cplx z) {
  PointClassifier cls(map);
  Region r = cls.classify(z);
  if (r == Region::collar)
    fail(ErrorCode::domain_error, "evaluation point within the boundary collar");
  if (m == 0) {
    if (r == Region::inside) return cplx(std::log(map.gamma()), 0.0);
    return cplx(std::log(std::abs(exterior_preimage(map, z))), 0.0);
  }
  int am = std::abs(m);
  cplx val;
  if (r == Region::inside) {
    FaberSet fs = faber_polynomials(map, am);
    val = -poly_eval(fs.poly[am], z) / (2.0 * std::sqrt(double(am)) * std::pow(map.gamma(), am));
  } else {
    GrunskyMatrix g = grunsky_coefficients(map, am, am * std::max(map.order(), 1));
    val = exterior_single_layer(map, g, am, exterior_preimage(map, z));
  }
  return m > 0 ? val : std::conj(val);
}

TransmissionSolution transmission_solve(const LaurentMap& map, const MaterialParam& mat,
                                        const std::vector<cplx>& hpoly, int n) {
  int N = std::max(map.order(), 1);
  if (n < 2 * N) fail(ErrorCode::size_error, "section order must be >= twice the map order");
  if (hpoly.size() < 2) fail(ErrorCode::invalid_argument, "background polynomial must be nonconstant");

  // d(Re P)/d(nu) * h on the boundary: real part of T(w) = w Psi'(w) P'(Psi(w)),
  // an exact finite Laurent polynomial.
  std::vector<cplx> dpoly(hpoly.size() - 1);
  for (size_t j = 1; j < hpoly.size(); ++j) dpoly[j - 1] = double(j) * hpoly[j];
  LaurentSeries T = LaurentSeries::wdpsi_of(map) * compose_poly(dpoly, LaurentSeries::from_map(map));

  double g = map.gamma();
  double scale = 0.0;
  for (int p = T.lo(); p <= T.hi(); ++p)
    scale = std::max(scale, std::abs(T.coeff(p)) * std::pow(g, double(p)));
  if (std::abs(T.coeff(0).real()) > 1e-10 * std::max(scale, 1.0))
    fail(ErrorCode::consistency_error, "background flux does not balance on the boundary");

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * n);
  for (int k = 1; k <= n; ++k) {
    cplx gk = 0.5 * (T.coeff(k) * std::pow(g, double(k)) +
                     std::conj(T.coeff(-k)) * std::pow(g, -double(k)));
    rhs(n + k - 1) = gk / std::sqrt(double(k));
    rhs(n - k) = std::conj(gk) / std::sqrt(double(k));
  }

  TransmissionSolution sol{map,
                           mat,
                           n,
                           hpoly,
                           resolvent_solve(map, mat, n, rhs),
                           faber_polynomials(map, n),
                           grunsky_coefficients(map, n, n * N),
                           PointClassifier(map)};
  return sol;
}

double TransmissionSolution::background(cplx z) const { return poly_eval(hpoly, z).real(); }

double TransmissionSolution::value(cplx z) const {
  Region r = classifier.classify(z);
  if (r == Region::collar)
    fail(ErrorCode::domain_error, "evaluation point within the boundary collar");
  double u = background(z);
  double g = map.gamma();
  if (r == Region::inside) {
    for (int m = 1; m <= n; ++m) {
      cplx s = -poly_eval(faber.poly[m], z) / (2.0 * std::sqrt(double(m)) * std::pow(g, m));
      u += 2.0 * (phi(n + m - 1) * s).real();
    }
  } else {
    cplx w = exterior_preimage(map, z);
    for (int m = 1; m <= n; ++m) {
      cplx s = exterior_single_layer(map, grunsky, m, w);
      u += 2.0 * (phi(n + m - 1) * s).real();
    }
  }
  return u;
}

FieldGrid transmission_field(const TransmissionSolution& sol, double xmin, double xmax,
                             double ymin, double ymax, int nx, int ny) {
  if (nx < 2 || ny < 2 || !(xmax > xmin) || !(ymax > ymin))
    fail(ErrorCode::invalid_argument, "field grid must have extent and at least 2x2 points");
  FieldGrid fg;
  fg.nx = nx;
  fg.ny = ny;
  fg.xmin = xmin;
  fg.xmax = xmax;
  fg.ymin = ymin;
  fg.ymax = ymax;
  fg.u.assign(size_t(nx) * ny, 0.0);
  fg.region.assign(size_t(nx) * ny, 0);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      cplx z(xmin + (xmax - xmin) * ix / (nx - 1), ymin + (ymax - ymin) * iy / (ny - 1));
      Region r = sol.classifier.classify(z);
      size_t idx = size_t(iy) * nx + ix;
      fg.region[idx] = r == Region::inside ? 0 : (r == Region::outside ? 1 : 2);
      fg.u[idx] = r == Region::collar ? std::numeric_limits<double>::quiet_NaN() : sol.value(z);
    }
  return fg;
}

} // namespace npspec
