#pragma once

#include <Eigen/Dense>

#include "faber.hpp"
#include "laurent.hpp"

namespace npspec {

// Finite section of the NP operator on span{zeta_{-n}..zeta_{-1}, zeta_1..zeta_n}
// (zeta_0 carries the capacity eigenvalue 1/2 and is excluded). Block form
// [[0, B], [B^H, 0]] with B_{m,k} = mu_{m,k}/2, so the matrix is Hermitian and
// its spectrum is the +/- pairing of the singular values of B.
struct FiniteSection {
  int n = 0;
  Eigen::MatrixXcd matrix; // 2n x 2n, basis order zeta_{-n},..,zeta_{-1},zeta_1,..,zeta_n
};

FiniteSection assemble_section(const MuMatrix& mu, int n);

// All 2n eigenvalues, ascending. Asserts Hermiticity to 1e-12 first.
std::vector<double> section_eigenvalues(const FiniteSection& sec);

// Positive half-spectrum of the order-n section, descending. Computed as the
// singular values of B, identical to the positive eigenvalues.
std::vector<double> positive_spectrum(const LaurentMap& map, int n);

struct SpectrumOptions {
  int kmax = 30;
  double threshold = 1e-5;
  int max_step = 16;
  int window = 5;         // consecutive passing steps required to stop
  int step_size = 100;    // n = step_size * step
  double floor = 2.6161e-13; // round-off floor for unconverged tiny eigenvalues
};

struct SpectrumResult {
  SpectrumOptions opt;
  int steps_used = 0;
  bool stopped_early = false;
  std::vector<double> lambda;              // accepted values, k = 1..kmax
  std::vector<char> converged;             // per k: passed the final window
  std::vector<char> floor_flagged;         // per k: unconverged but below floor
  std::vector<std::vector<double>> history; // history[s-1][k-1] = lambda_k at step s
  std::vector<std::vector<double>> rel;     // rel[s-1][k-1] = r_k at step s (s >= 2), NaN at s = 1
};

// Section-growth protocol: n = step_size * step until every k <= kmax changes
// by less than threshold (relatively) for `window` consecutive steps, hard cap
// at max_step where the per-k window decides acceptance.
SpectrumResult adaptive_spectrum(const LaurentMap& map, const SpectrumOptions& opt = {});

// Predicted leading +/- eigenvalue multiset (with multiplicity) for the
// one-coefficient map w + delta w^{-m}: +/- sqrt(j(m+1-j)) delta/2 for
// j = 1..m, sorted descending; 2m values. One further group member sits at
// the delta^2 scale and is not predicted here.
std::vector<double> cluster_asymptotics(int m, double delta);

} // namespace npspec
