#include "cell.hpp"

#include <algorithm>
#include <cmath>

namespace npspec {

double proxy_contrast(double k) {
  if (std::isnan(k) || k < 0.0) fail(ErrorCode::invalid_argument, "contrast k must lie in [0, inf]");
  if (k == 0.0) return 1e-8;
  if (std::isinf(k)) return 1e8;
  return k;
}

CellProblem rasterize(const LaurentMap& map, double rho, int gridN, double k) {
  if (gridN < 16) fail(ErrorCode::invalid_argument, "gridN must be >= 16");
  if (!(rho > 0.0)) fail(ErrorCode::invalid_argument, "rho must be positive");
  const int Q = 4096;
  std::vector<cplx> poly(Q);
  double rmax = 0.0;
  for (int i = 0; i < Q; ++i) {
    cplx z = rho * map.boundary_point(2.0 * M_PI * i / Q);
    poly[i] = z;
    rmax = std::max({rmax, std::abs(z.real()), std::abs(z.imag())});
  }
  if (!(rmax < 0.5)) fail(ErrorCode::geometry_error, "rho * Omega does not fit inside the unit cell");

  CellProblem prob;
  prob.gridN = gridN;
  prob.rho = rho;
  prob.k_eff = proxy_contrast(k);
  prob.mask.assign(size_t(gridN) * gridN, 0);
  prob.sigma.assign(size_t(gridN) * gridN, 1.0);

  // Scanline winding-number test: per row, signed crossings of the polygon
  // with the horizontal line through the cell centers.
  std::vector<std::pair<double, int>> cross;
  size_t inside_count = 0;
  for (int j = 0; j < gridN; ++j) {
    double yc = (j + 0.5) / gridN - 0.5;
    cross.clear();
    for (int e = 0; e < Q; ++e) {
      const cplx& a = poly[e];
      const cplx& b = poly[(e + 1) % Q];
      bool up = a.imag() <= yc && b.imag() > yc;
      bool dn = a.imag() > yc && b.imag() <= yc;
      if (!up && !dn) continue;
      double t = (yc - a.imag()) / (b.imag() - a.imag());
      cross.emplace_back(a.real() + t * (b.real() - a.real()), up ? 1 : -1);
    }
    if (cross.empty()) continue;
    std::sort(cross.begin(), cross.end());
    // winding(x) = sum of directions of crossings strictly to the right of x
    int total = 0;
    for (auto& c : cross) total += c.second;
    size_t ci = 0;
    int wind = total;
    for (int i = 0; i < gridN; ++i) {
      double xc = (i + 0.5) / gridN - 0.5;
      while (ci < cross.size() && cross[ci].first <= xc) {
        wind -= cross[ci].second;
        ++ci;
      }
      if (wind != 0) {
        size_t idx = size_t(j) * gridN + i;
        prob.mask[idx] = 1;
        prob.sigma[idx] = prob.k_eff;
        ++inside_count;
      }
    }
  }
  prob.mask_fraction = double(inside_count) / (double(gridN) * gridN);
  return prob;
}

namespace {

struct FaceField {
  int N;
  std::vector<double> sE, sN; // harmonic face conductivities (east, north)
};

FaceField faces_of(const CellProblem& prob) {
  int N = prob.gridN;
  FaceField f;
  f.N = N;
  f.sE.resize(size_t(N) * N);
  f.sN.resize(size_t(N) * N);
  auto S = [&](int i, int j) { return prob.sigma[size_t(j) * N + i]; };
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      double a = S(i, j);
      double e = S((i + 1) % N, j);
      double n = S(i, (j + 1) % N);
      f.sE[size_t(j) * N + i] = 2.0 * a * e / (a + e);
      f.sN[size_t(j) * N + i] = 2.0 * a * n / (a + n);
    }
  return f;
}

void apply_A(const FaceField& f, const std::vector<double>& u, std::vector<double>& out) {
  int N = f.N;
  for (int j = 0; j < N; ++j) {
    int jm = (j + N - 1) % N, jp = (j + 1) % N;
    for (int i = 0; i < N; ++i) {
      int im = (i + N - 1) % N, ip = (i + 1) % N;
      size_t c = size_t(j) * N + i;
      double sE = f.sE[c];
      double sW = f.sE[size_t(j) * N + im];
      double sN = f.sN[c];
      double sS = f.sN[size_t(jm) * N + i];
      out[c] = (sE + sW + sN + sS) * u[c] - sE * u[size_t(j) * N + ip] -
               sW * u[size_t(j) * N + im] - sN * u[size_t(jp) * N + i] -
               sS * u[size_t(jm) * N + i];
    }
  }
}

void project_mean(std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= double(v.size());
  for (double& x : v) x -= m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

} // namespace

CorrectorSolution solve_cell(const CellProblem& prob, int direction) {
  if (direction != 1 && direction != 2)
    fail(ErrorCode::invalid_argument, "direction must be 1 or 2");
  if (!(prob.k_eff > 0.0) || std::isinf(prob.k_eff))
    fail(ErrorCode::invalid_argument, "cell solve needs 0 < k_eff < inf");
  int N = prob.gridN;
  size_t M = size_t(N) * N;
  FaceField f = faces_of(prob);
  double h = 1.0 / N;

  // rhs from the linear background: integrating -div(sigma grad u) =
  // div(sigma e_d) over a cell gives b_c = h (sigma_+d - sigma_-d).
  std::vector<double> b(M);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      size_t c = size_t(j) * N + i;
      double sp, sm;
      if (direction == 1) {
        sp = f.sE[c];
        sm = f.sE[size_t(j) * N + (i + N - 1) % N];
      } else {
        sp = f.sN[c];
        sm = f.sN[size_t((j + N - 1) % N) * N + i];
      }
      b[c] = h * (sp - sm);
    }
  project_mean(b);

  std::vector<double> diag(M);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      size_t c = size_t(j) * N + i;
      diag[c] = f.sE[c] + f.sE[size_t(j) * N + (i + N - 1) % N] + f.sN[c] +
                f.sN[size_t((j + N - 1) % N) * N + i];
    }

  CorrectorSolution sol;
  sol.u.assign(M, 0.0);
  std::vector<double> r = b, z(M), p(M), Ap(M);
  double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) { // homogeneous cell: corrector vanishes
    sol.residual = 0.0;
    return sol;
  }
  double tol = 1e-10 * bnorm;
  for (size_t i = 0; i < M; ++i) z[i] = r[i] / diag[i];
  project_mean(z);
  p = z;
  double rz = dot(r, z);
  int maxit = 40 * N + 2000;
  int it = 0;
  double rnorm = bnorm;
  for (; it < maxit; ++it) {
    rnorm = std::sqrt(dot(r, r));
    if (rnorm <= tol) break;
    apply_A(f, p, Ap);
    double alpha = rz / dot(p, Ap);
    for (size_t i = 0; i < M; ++i) sol.u[i] += alpha * p[i];
    for (size_t i = 0; i < M; ++i) r[i] -= alpha * Ap[i];
    for (size_t i = 0; i < M; ++i) z[i] = r[i] / diag[i];
    project_mean(z);
    double rz2 = dot(r, z);
    double beta = rz2 / rz;
    rz = rz2;
    for (size_t i = 0; i < M; ++i) p[i] = z[i] + beta * p[i];
  }
  sol.iters = it;
  sol.residual = rnorm / bnorm;
  if (sol.residual > 1e-10)
    fail(ErrorCode::solver_error,
         "cell solver stalled at relative residual " + std::to_string(sol.residual));
  project_mean(sol.u);
  return sol;
}

FdmResult effective_fdm(const LaurentMap& map, double rho, double k, int gridN) {
  CellProblem prob = rasterize(map, rho, gridN, k);
  CorrectorSolution c1 = solve_cell(prob, 1);
  CorrectorSolution c2 = solve_cell(prob, 2);

  int N = gridN;
  FaceField f = faces_of(prob);
  double h = 1.0 / N;
  Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
  // Energy quadrature over faces; the x-derivative lives on east faces, the
  // y-derivative on north faces, background gradients are (1,0) and (0,1).
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      size_t c = size_t(j) * N + i;
      size_t e = size_t(j) * N + (i + 1) % N;
      size_t n = size_t((j + 1) % N) * N + i;
      double gx1 = 1.0 + (c1.u[e] - c1.u[c]) / h;
      double gx2 = (c2.u[e] - c2.u[c]) / h;
      double gy1 = (c1.u[n] - c1.u[c]) / h;
      double gy2 = 1.0 + (c2.u[n] - c2.u[c]) / h;
      double wE = f.sE[c] * h * h;
      double wN = f.sN[c] * h * h;
      S(0, 0) += wE * gx1 * gx1 + wN * gy1 * gy1;
      S(0, 1) += wE * gx1 * gx2 + wN * gy1 * gy2;
      S(1, 1) += wE * gx2 * gx2 + wN * gy2 * gy2;
    }
  S(1, 0) = S(0, 1);

  FdmResult res;
  res.sigma_star = S;
  res.residual[0] = c1.residual;
  res.residual[1] = c2.residual;
  res.iters[0] = c1.iters;
  res.iters[1] = c2.iters;
  res.mask_fraction = prob.mask_fraction;
  res.k_eff = prob.k_eff;
  return res;
}

} // namespace npspec
