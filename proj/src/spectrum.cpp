#include "spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <lapacke.h>

namespace npspec {

FiniteSection assemble_section(const MuMatrix& mu, int n) {
  if (n < 1) fail(ErrorCode::size_error, "section order must be >= 1");
  if (mu.M < n) fail(ErrorCode::size_error, "mu matrix smaller than requested section");
  FiniteSection sec;
  sec.n = n;
  sec.matrix = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  // row i < n is zeta_{-(n-i)}, row n+j is zeta_{j+1}
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= n; ++k) {
      cplx b = 0.5 * mu.mu(m - 1, k - 1);
      sec.matrix(n - m, n + k - 1) = b;
      sec.matrix(n + k - 1, n - m) = std::conj(b);
    }
  return sec;
}

std::vector<double> section_eigenvalues(const FiniteSection& sec) {
  int N = static_cast<int>(sec.matrix.rows());
  if (N < 2 || sec.matrix.cols() != N) fail(ErrorCode::size_error, "section matrix must be square");
  double herm = (sec.matrix - sec.matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12)
    fail(ErrorCode::consistency_error, "section not Hermitian: " + std::to_string(herm));
  Eigen::MatrixXcd A = sec.matrix;
  std::vector<double> w(N);
  int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', N,
                            reinterpret_cast<lapack_complex_double*>(A.data()), N, w.data());
  if (info != 0) fail(ErrorCode::solver_error, "zheevd failed, info = " + std::to_string(info));
  return w;
}

std::vector<double> positive_spectrum(const LaurentMap& map, int n) {
  MuMatrix mu = mu_of(map, n);
  Eigen::MatrixXcd B = 0.5 * mu.mu;
  std::vector<double> s(n);
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', n, n,
                            reinterpret_cast<lapack_complex_double*>(B.data()), n, s.data(),
                            nullptr, 1, nullptr, 1);
  if (info != 0) fail(ErrorCode::solver_error, "zgesdd failed, info = " + std::to_string(info));
  return s;
}

SpectrumResult adaptive_spectrum(const LaurentMap& map, const SpectrumOptions& opt) {
  if (opt.kmax < 1 || opt.kmax > 2 * opt.step_size)
    fail(ErrorCode::invalid_argument, "kmax must lie in [1, 2*step_size]");
  if (opt.max_step < 1 || opt.window < 1 || opt.step_size < 1)
    fail(ErrorCode::invalid_argument, "protocol parameters must be positive");
  if (!(opt.threshold > 0.0)) fail(ErrorCode::invalid_argument, "threshold must be positive");

  SpectrumResult res;
  res.opt = opt;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  int run = 0; // consecutive steps with max_k r_k below threshold

  for (int step = 1; step <= opt.max_step; ++step) {
    int n = opt.step_size * step;
    std::vector<double> sv = positive_spectrum(map, n);
    // k-th largest eigenvalue of the section: sv for k <= n, then -sv reversed.
    std::vector<double> lam(opt.kmax);
    for (int k = 1; k <= opt.kmax; ++k)
      lam[k - 1] = k <= n ? sv[k - 1] : -sv[2 * n - k];

    std::vector<double> r(opt.kmax, nan);
    if (step >= 2) {
      const std::vector<double>& prev = res.history.back();
      bool all = true;
      for (int k = 0; k < opt.kmax; ++k) {
        double cur = lam[k];
        if (cur == 0.0)
          r[k] = prev[k] == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        else
          r[k] = std::abs(cur - prev[k]) / std::abs(cur);
        if (!(r[k] < opt.threshold)) all = false;
      }
      run = all ? run + 1 : 0;
    }
    res.history.push_back(lam);
    res.rel.push_back(r);
    res.steps_used = step;
    if (run >= opt.window) {
      res.stopped_early = true;
      break;
    }
  }

  res.lambda = res.history.back();
  res.converged.assign(opt.kmax, 0);
  res.floor_flagged.assign(opt.kmax, 0);
  int last = res.steps_used;
  for (int k = 0; k < opt.kmax; ++k) {
    bool ok = last > opt.window; // need `window` r-values, first exists at step 2
    for (int s = last - opt.window + 1; ok && s <= last; ++s) {
      double rv = res.rel[s - 1][k];
      ok = std::isfinite(rv) && rv < opt.threshold;
    }
    res.converged[k] = ok ? 1 : 0;
    if (!ok && res.lambda[k] > 0.0 && res.lambda[k] < opt.floor) res.floor_flagged[k] = 1;
  }
  return res;
}

std::vector<double> cluster_asymptotics(int m, double delta) {
  if (m < 1) fail(ErrorCode::invalid_argument, "cluster order must be >= 1");
  if (!(delta >= 0.0)) fail(ErrorCode::invalid_argument, "delta must be nonnegative");
  // j and m+1-j give equal values, which is exactly the multiplicity the
  // section spectrum carries, so keep the full range.
  std::vector<double> out;
  for (int j = 1; j <= m; ++j)
    out.push_back(std::sqrt(double(j) * double(m + 1 - j)) * delta / 2.0);
  std::sort(out.rbegin(), out.rend());
  std::vector<double> full = out;
  for (auto it = out.rbegin(); it != out.rend(); ++it) full.push_back(-*it);
  return full;
}

} // namespace npspec
