#include "faber.hpp"

#include <cmath>

namespace npspec {

FaberSet faber_polynomials(const LaurentMap& map, int M) {
  if (M < 0) fail(ErrorCode::invalid_argument, "Faber order must be >= 0");
  FaberSet fs;
  fs.poly.resize(M + 1);
  fs.poly[0] = {cplx(1.0, 0.0)};
  if (M == 0) return fs;
  int N = map.order();
  cplx a0 = map.a0();
  for (int n = 0; n < M; ++n) {
    std::vector<cplx> next(n + 2, cplx(0.0, 0.0));
    for (int j = 0; j <= n; ++j) next[j + 1] = fs.poly[n][j]; // z * F_n
    for (int j = 0; j <= n; ++j) next[j] -= a0 * fs.poly[n][j];
    for (int k = 1; k <= std::min(n, N); ++k) {
      const std::vector<cplx>& Fk = fs.poly[n - k];
      cplx ak = map.coeff(k);
      for (size_t j = 0; j < Fk.size(); ++j) next[j] -= ak * Fk[j];
    }
    if (n >= 1 && n <= N) next[0] -= double(n) * map.coeff(n);
    fs.poly[n + 1] = std::move(next);
  }
  return fs;
}

namespace {

// Composed series G_m = F_m(Psi(w)) held as coefficients of powers m..-depth.
// One recurrence step multiplies by Psi (raising depth needs by one), so a
// uniform working floor of -(K + M) keeps every retained coefficient exact.
struct Composed {
  int top;              // highest power = m
  std::vector<cplx> c;  // c[i] = coefficient of w^{top-i}
  cplx at(int p) const {
    int i = top - p;
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : cplx(0.0, 0.0);
  }
};

} // namespace

GrunskyMatrix grunsky_coefficients(const LaurentMap& map, int M, int K) {
  if (M < 1 || K < 1) fail(ErrorCode::invalid_argument, "Grunsky block needs M, K >= 1");
  GrunskyMatrix g;
  g.M = M;
  g.K = K;
  g.gamma = map.gamma();
  g.c = Eigen::MatrixXcd::Zero(M, K);

  int N = map.order();
  int floor_p = -(K + M); // uniform exact working depth

  std::vector<Composed> win; // last N+1 composed series, win.back() = G_m
  Composed g0;
  g0.top = 0;
  g0.c = {cplx(1.0, 0.0)};
  win.push_back(g0);

  for (int m = 0; m < M; ++m) {
    const Composed& gm = win.back();
    Composed nx;
    nx.top = m + 1;
    int lo = std::max(floor_p, -(m + 1) * std::max(N, 1));
    nx.c.assign(nx.top - lo + 1, cplx(0.0, 0.0));
    auto acc = [&](int p, cplx v) {
      int i = nx.top - p;
      if (i >= 0 && i < static_cast<int>(nx.c.size())) nx.c[i] += v;
    };
    // G_{m+1} = Psi * G_m - sum_{k=0..m} a_k G_{m-k} - m a_m; the a_0 parts of
    // the product and of the sum cancel, so only the shifted terms remain.
    for (int i = 0; i < static_cast<int>(gm.c.size()); ++i) {
      cplx v = gm.c[i];
      if (v == cplx(0.0, 0.0)) continue;
      int p = gm.top - i;
      acc(p + 1, v);
      for (int q = 1; q <= N; ++q) acc(p - q, map.coeff(q) * v);
    }
    for (int k = 1; k <= std::min(m, N); ++k) {
      const Composed& gk = win[win.size() - 1 - k];
      cplx ak = map.coeff(k);
      for (int i = 0; i < static_cast<int>(gk.c.size()); ++i) {
        cplx v = gk.c[i];
        if (v != cplx(0.0, 0.0)) acc(gk.top - i, -ak * v);
      }
    }
    if (m >= 1 && m <= N) acc(0, -double(m) * map.coeff(m));

    for (int k = 1; k <= std::min(K, (m + 1) * std::max(N, 1)); ++k)
      g.c(m, k - 1) = nx.at(-k);

    win.push_back(std::move(nx));
    if (static_cast<int>(win.size()) > N + 1) win.erase(win.begin());
  }
  return g;
}

MuMatrix mu_matrix(const GrunskyMatrix& g) {
  int M = std::min(g.M, g.K);
  MuMatrix mu;
  mu.M = M;
  mu.mu = Eigen::MatrixXcd::Zero(M, M);
  double lg = std::log(g.gamma);
  for (int m = 1; m <= M; ++m)
    for (int k = 1; k <= M; ++k) {
      double s = std::sqrt(double(k) / double(m)) * std::exp(-double(m + k) * lg);
      mu.mu(m - 1, k - 1) = std::isfinite(s) ? g.c(m - 1, k - 1) * s
                                             : cplx(0.0, 0.0);
    }
  double asym = 0.0;
  for (int m = 0; m < M; ++m)
    for (int k = m + 1; k < M; ++k)
      asym = std::max(asym, std::abs(mu.mu(m, k) - mu.mu(k, m)));
  if (asym > 1e-12)
    fail(ErrorCode::consistency_error, "Grunsky symmetry violated beyond 1e-12: " + std::to_string(asym));
  return mu;
}

MuMatrix mu_of(const LaurentMap& map, int M) {
  return mu_matrix(grunsky_coefficients(map.normalized(), M, M));
}

} // namespace npspec
