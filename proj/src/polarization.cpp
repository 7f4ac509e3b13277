#include "polarization.hpp"

#include <cmath>
#include <limits>

#include <lapacke.h>

namespace npspec {

namespace {

const double NaN = std::numeric_limits<double>::quiet_NaN();

PolarizationTensor with_eigs(Eigen::Matrix2d M) {
  M = 0.5 * (M + M.transpose().eval());
  PolarizationTensor pt;
  pt.M = M;
  double mean = 0.5 * (M(0, 0) + M(1, 1));
  double disc = std::hypot(0.5 * (M(0, 0) - M(1, 1)), M(0, 1));
  pt.tau1 = mean + disc;
  pt.tau2 = mean - disc;
  return pt;
}

int check_sign(int sign) {
  if (sign != 1 && sign != -1) fail(ErrorCode::invalid_argument, "sign must be +1 or -1");
  return sign;
}

} // namespace

MaterialParam material_from_k(double k) {
  if (std::isnan(k) || k < 0.0) fail(ErrorCode::invalid_argument, "contrast k must lie in [0, inf]");
  if (k == 1.0) fail(ErrorCode::invalid_argument, "contrast k = 1 has no spectral parameter");
  MaterialParam m;
  m.k = k;
  m.lambda = std::isinf(k) ? 0.5 : (k + 1.0) / (2.0 * (k - 1.0));
  return m;
}

MaterialParam material_from_lambda(double lambda) {
  if (!(std::abs(lambda) >= 0.5))
    fail(ErrorCode::invalid_argument, "|lambda| must be >= 1/2");
  MaterialParam m;
  m.lambda = lambda;
  m.k = lambda == 0.5 ? std::numeric_limits<double>::infinity()
                      : (2.0 * lambda + 1.0) / (2.0 * lambda - 1.0);
  return m;
}

PolarizationTensor pt_extreme(const LaurentMap& map, int sign) {
  double s = check_sign(sign);
  double g2 = map.gamma() * map.gamma();
  cplx a1 = map.order() >= 1 ? map.coeff(1) : cplx(0.0, 0.0);
  Eigen::Matrix2d M;
  M(0, 0) = 2.0 * M_PI * (s * g2 + a1.real());
  M(0, 1) = 2.0 * M_PI * a1.imag();
  M(1, 0) = M(0, 1);
  M(1, 1) = 2.0 * M_PI * (s * g2 - a1.real());
  return with_eigs(M);
}

double pt_trace_inverse(const LaurentMap& map, int sign) {
  double s = check_sign(sign);
  double g2 = map.gamma() * map.gamma();
  cplx a1 = map.order() >= 1 ? map.coeff(1) : cplx(0.0, 0.0);
  double den = g2 * g2 - std::norm(a1);
  if (!(den > 0.0))
    fail(ErrorCode::singular_tensor, "|a1| = gamma^2: polarization tensor is singular");
  return s * g2 / (M_PI * den);
}

Eigen::VectorXcd resolvent_solve(const LaurentMap& map, const MaterialParam& mat, int n,
                                 const Eigen::VectorXcd& rhs) {
  if (n < 1) fail(ErrorCode::size_error, "section order must be >= 1");
  int dim = 2 * n;
  if (rhs.size() != dim) fail(ErrorCode::size_error, "rhs size must be 2n");
  FiniteSection sec = assemble_section(mu_of(map, n), n);
  Eigen::MatrixXcd A = mat.lambda * Eigen::MatrixXcd::Identity(dim, dim) - sec.matrix;
  // Condition estimate before solving; at |lambda| = 1/2 the resolvent can
  // degenerate for near-degenerate shapes.
  Eigen::MatrixXcd W = A;
  std::vector<double> sv(dim);
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', dim, dim,
                            reinterpret_cast<lapack_complex_double*>(W.data()), dim, sv.data(),
                            nullptr, 1, nullptr, 1);
  if (info != 0) fail(ErrorCode::solver_error, "zgesdd failed, info = " + std::to_string(info));
  if (!(sv[dim - 1] > 0.0) || sv[0] / sv[dim - 1] > 1e12)
    fail(ErrorCode::resonance, "lambda I - K is numerically singular at this contrast");
  return A.partialPivLu().solve(rhs);
}

Eigen::VectorXcd pt_density(const LaurentMap& map, const MaterialParam& mat, int n,
                            int direction) {
  int N = std::max(map.order(), 1);
  if (n < 2 * N) fail(ErrorCode::size_error, "section order must be >= twice the map order");
  if (direction != 1 && direction != 2)
    fail(ErrorCode::invalid_argument, "direction must be 1 or 2");

  // Right-hand side: zeta coefficients of d(y_dir)/d(nu) * h. On the boundary
  // nu h = w Psi'(w), so the e^{ik theta} Fourier modes are explicit.
  double g = map.gamma();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * n);
  const cplx I(0.0, 1.0);
  for (int k = 1; k <= n; ++k) {
    cplx base = double(k) * std::conj(map.coeff(k)) * std::pow(g, -double(k));
    cplx gk = direction == 1 ? 0.5 * ((k == 1 ? cplx(g, 0.0) : cplx(0.0, 0.0)) - base)
                             : ((k == 1 ? cplx(g, 0.0) : cplx(0.0, 0.0)) + base) / (2.0 * I);
    rhs(n + k - 1) = gk / std::sqrt(double(k));        // zeta_{+k}
    rhs(n - k) = std::conj(gk) / std::sqrt(double(k)); // zeta_{-k}
  }
  return resolvent_solve(map, mat, n, rhs);
}

PolarizationTensor pt_general(const LaurentMap& map, const MaterialParam& mat, int n, int Q) {
  if (Q < 8 * n) fail(ErrorCode::invalid_argument, "quadrature needs Q >= 8n");
  Eigen::VectorXcd phi1 = pt_density(map, mat, n, 1);
  Eigen::VectorXcd phi2 = pt_density(map, mat, n, 2);

  // (phi h)(theta) = sum_m phi_m sqrt(|m|) e^{i m theta}; integrate moments by
  // the Q-point trapezoid rule, exact for these trigonometric polynomials.
  Eigen::Matrix2d M = Eigen::Matrix2d::Zero();
  double w = 2.0 * M_PI / Q;
  for (int q = 0; q < Q; ++q) {
    double th = w * q;
    cplx y = map.boundary_point(th);
    cplx e = std::polar(1.0, th);
    // Evaluate both densities at theta via Horner in e^{i theta} and e^{-i theta}.
    cplx p1(0.0, 0.0), m1(0.0, 0.0), p2(0.0, 0.0), m2(0.0, 0.0);
    for (int k = n; k >= 1; --k) {
      double rk = std::sqrt(double(k));
      p1 = p1 * e + rk * phi1(n + k - 1);
      m1 = m1 * std::conj(e) + rk * phi1(n - k);
      p2 = p2 * e + rk * phi2(n + k - 1);
      m2 = m2 * std::conj(e) + rk * phi2(n - k);
    }
    double f1 = ((p1 * e) + (m1 * std::conj(e))).real();
    double f2 = ((p2 * e) + (m2 * std::conj(e))).real();
    M(0, 0) += y.real() * f1;
    M(0, 1) += y.imag() * f1;
    M(1, 0) += y.real() * f2;
    M(1, 1) += y.imag() * f2;
  }
  M *= w;
  return with_eigs(M);
}

HsReport hs_check(const PolarizationTensor& pt, double k, double area) {
  if (!(area > 0.0)) fail(ErrorCode::invalid_argument, "area must be positive");
  if (k == 1.0 || k < 0.0 || std::isnan(k))
    fail(ErrorCode::invalid_argument, "contrast k must lie in [0, inf], k != 1");
  HsReport rep;
  double tr = pt.M(0, 0) + pt.M(1, 1);
  double det = pt.M(0, 0) * pt.M(1, 1) - pt.M(0, 1) * pt.M(1, 0);
  if (det == 0.0) fail(ErrorCode::singular_tensor, "polarization tensor is singular");
  double trinv = tr / det;
  if (k == 0.0 || std::isinf(k)) {
    rep.extreme = true;
    rep.slack_trace = NaN;
    rep.slack_inverse = 1.0 / area - std::abs(trinv);
    rep.ok = rep.slack_inverse >= -1e-12;
  } else {
    rep.slack_trace = (1.0 + 1.0 / k) * area - tr / (k - 1.0);
    rep.slack_inverse = (1.0 + k) / area - (k - 1.0) * trinv;
    rep.ok = rep.slack_trace >= -1e-12 && rep.slack_inverse >= -1e-12;
  }
  return rep;
}

TraceDiamReport trace_diam_check(const LaurentMap& map, int Q) {
  TraceDiamReport rep;
  rep.trace_abs = 4.0 * M_PI * map.gamma() * map.gamma();
  rep.diam = diameter(map, Q);
  rep.slack_low = rep.trace_abs - 0.25 * M_PI * rep.diam * rep.diam;
  rep.slack_high = 4.0 * M_PI * rep.diam * rep.diam - rep.trace_abs;
  return rep;
}

DilationReport dilation_family(const LaurentMap& map, double r) {
  if (!(r >= map.gamma()))
    fail(ErrorCode::invalid_argument, "dilation radius must be >= the capacity");
  LaurentMap big(r, map.a0(), map.coeffs());
  DilationReport rep{big, 0.0, 0.0, 0.0};
  rep.area = big.area();
  rep.product = rep.area * std::abs(pt_trace_inverse(big, +1));
  cplx a1 = map.order() >= 1 ? map.coeff(1) : cplx(0.0, 0.0);
  rep.tau_gap = 4.0 * M_PI * std::abs(a1);
  return rep;
}

LaurentMap riemann_to_exterior(const std::vector<cplx>& b, int order) {
  if (b.empty()) fail(ErrorCode::invalid_argument, "need at least b1");
  if (order < 0) fail(ErrorCode::invalid_argument, "order must be >= 0");
  cplx b1 = b[0];
  if (!(b1.real() > 0.0) || std::abs(b1.imag()) > 1e-14 * std::abs(b1))
    fail(ErrorCode::invalid_argument, "b1 must be real and positive (normalized Riemann map)");
  double g = 1.0 / b1.real();
  // t = series reciprocal of S(zeta) = b1 + b2 zeta + ..., then a_n = t_{n+1} g^n.
  int L = order + 2;
  std::vector<cplx> t(L, cplx(0.0, 0.0));
  t[0] = cplx(g, 0.0);
  for (int i = 1; i < L; ++i) {
    cplx acc(0.0, 0.0);
    for (int j = 1; j <= i; ++j) {
      cplx Sj = j < static_cast<int>(b.size()) ? b[j] : cplx(0.0, 0.0);
      acc += Sj * t[i - j];
    }
    t[i] = -acc * g;
  }
  std::vector<cplx> a(order);
  double gp = 1.0;
  for (int n = 1; n <= order; ++n) {
    gp *= g;
    a[n - 1] = t[n + 1] * gp;
  }
  return LaurentMap(g, t[1], std::move(a));
}

RiemannCheck riemann_inequality_check(const std::vector<cplx>& b, double area,
                                      const std::optional<std::vector<cplx>>& c) {
  if (!(area > 0.0)) fail(ErrorCode::invalid_argument, "area must be positive");
  auto E = [](const std::vector<cplx>& v) {
    LaurentMap m = riemann_to_exterior(v, 1);
    double g2 = m.gamma() * m.gamma();
    double re_a1 = m.order() >= 1 ? m.coeff(1).real() : 0.0;
    return std::pair<double, double>(g2 + re_a1, g2 - re_a1);
  };
  auto [ep, em] = E(b);
  RiemannCheck rep;
  rep.e_plus = ep;
  rep.e_minus = em;
  rep.slack_plus = ep - area / (2.0 * M_PI);
  rep.slack_minus = em - area / (2.0 * M_PI);
  rep.mono_plus = NaN;
  rep.mono_minus = NaN;
  if (c) {
    auto [cp, cm] = E(*c);
    rep.mono_plus = ep - cp;
    rep.mono_minus = em - cm;
  }
  return rep;
}

} // namespace npspec
