/* npspec - spectral analysis of the Neumann-Poincare operator for 2-D
 * inclusions given by exterior conformal maps (truncated Laurent series),
 * with polarization tensors, dilute effective-conductivity expansions,
 * transmission fields, and a finite-difference cross-check solver.
 *
 * Conventions
 *   - Every function returns 0 (NPSPEC_OK) or a nonzero NPSPEC_ERR_* code;
 *     npspec_last_error() returns a thread-local message for the most recent
 *     failure on the calling thread.
 *   - Complex arrays are split into re/im pairs of equal length.
 *   - 2x2 matrices are row-major double[4]: [m11, m12, m21, m22].
 *   - Output pointers marked "nullable" may be NULL when the value is not
 *     wanted; all other pointer arguments must be non-NULL.
 *   - Handles are created by the _create/_run/_solve functions and released
 *     with the matching _free; every _free tolerates NULL.
 */
#ifndef NPSPEC_H
#define NPSPEC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Error codes. Keep in sync with the internal ErrorCode enum. */
#define NPSPEC_OK 0
#define NPSPEC_ERR_INVALID_ARGUMENT 1
#define NPSPEC_ERR_INVALID_MAP 2
#define NPSPEC_ERR_DEGENERATE_BOUNDARY 3
#define NPSPEC_ERR_DOMAIN 4
#define NPSPEC_ERR_SIZE 5
#define NPSPEC_ERR_RESONANCE 6
#define NPSPEC_ERR_SINGULAR_TENSOR 7
#define NPSPEC_ERR_DILUTE 8
#define NPSPEC_ERR_GEOMETRY 9
#define NPSPEC_ERR_SOLVER 10
#define NPSPEC_ERR_CONSISTENCY 11
#define NPSPEC_ERR_IO 12
#define NPSPEC_ERR_NO_CONVERGENCE 13
#define NPSPEC_ERR_INTERNAL 99

typedef struct npspec_map npspec_map;
typedef struct npspec_spectrum npspec_spectrum;
typedef struct npspec_field npspec_field;

/* ------------------------------------------------------------------ */
/* Library info and error reporting                                    */

const char* npspec_version(void);
/* Message for the last failing call on this thread ("" if none). */
const char* npspec_last_error(void);
/* Stable lowercase name of an error code, e.g. "invalid_map". */
const char* npspec_error_name(int code);
/* Free a string returned by the library. Tolerates NULL. */
void npspec_string_free(char* s);
/* Cap the worker-thread count of the linear-algebra backend. Returns the
 * requested count when the backend honors it, 0 when it has no such knob. */
int npspec_set_threads(int n);

/* ------------------------------------------------------------------ */
/* Exterior Laurent maps  Psi(w) = w + a0 + sum_{j=1..n} a_j w^-j      */

/* a_re/a_im hold a_1..a_n (may be NULL when n == 0). gamma > 0 is the
 * conformal radius. Cheap invariants are checked here; full geometric
 * validation is npspec_map_validate. */
int npspec_map_create(double gamma, double a0_re, double a0_im,
                      const double* a_re, const double* a_im, int n,
                      npspec_map** out);
void npspec_map_free(npspec_map* m);

/* Jordan-domain checks (coefficient bound, positive area, non-self-
 * intersecting Q-point boundary sample, no collapsed tangent). */
int npspec_map_validate(const npspec_map* m, int Q);

/* Named generators, one string spec per shape family:
 *   "disk:r"                  circle of radius r
 *   "ellipse:a,b"             semi-axes a >= b > 0
 *   "algebraic:m,cre[,cim]"   w + c w^-m (univalent iff m|c| < 1)
 *   "ngon:n[,area[,orient]]"  regular n-gon
 *   "rect"                    fixed rectangle-like reference map
 *   "blob"                    fixed six-coefficient reference map
 *   "sweep_a:j"               4-coefficient sweep family, 1 <= j <= 42
 *   "sweep_b:j"               3-coefficient sweep family, 1 <= j <= 119
 *   "crossing:j"              2-coefficient crossing family, 1 <= j <= 6 */
int npspec_map_generate(const char* spec, npspec_map** out);

int npspec_map_ellipse(double a, double b, npspec_map** out);
int npspec_map_algebraic(int m, double c_re, double c_im, npspec_map** out);
int npspec_map_ngon(int n, double area, double orientation, npspec_map** out);

/* JSON: {"gamma": g, "a0": [re, im], "a": [[re, im], ...]} */
int npspec_map_from_json(const char* text, npspec_map** out);
int npspec_map_from_json_file(const char* path, npspec_map** out);
/* *out is malloc'd; release with npspec_string_free. */
int npspec_map_to_json(const npspec_map* m, char** out);
int npspec_map_to_json_file(const npspec_map* m, const char* path);

int npspec_map_gamma(const npspec_map* m, double* out);
int npspec_map_order(const npspec_map* m, int* out);
int npspec_map_a0(const npspec_map* m, double* re, double* im);
/* a_j; zero beyond the truncation order. j >= 1. */
int npspec_map_coeff(const npspec_map* m, int j, double* re, double* im);
int npspec_map_area(const npspec_map* m, double* out);
/* Max pairwise distance of a Q-point boundary sample (Q >= 256). */
int npspec_map_diameter(const npspec_map* m, int Q, double* out);
/* Psi(w); requires |w| > gamma. */
int npspec_map_eval(const npspec_map* m, double w_re, double w_im,
                    double* z_re, double* z_im);
/* Q boundary points Psi(gamma e^{2 pi i q / Q}) as x0,y0,x1,y1,... */
int npspec_map_boundary(const npspec_map* m, int Q, double* xy);
/* z -> scale * e^{i rot} * Psi-image + shift, as a new map. scale > 0. */
int npspec_map_transformed(const npspec_map* m, double scale, double rot,
                           double shift_re, double shift_im, npspec_map** out);
/* Capacity-1 rescaling (spectrum-invariant). */
int npspec_map_normalized(const npspec_map* m, npspec_map** out);

/* ------------------------------------------------------------------ */
/* Faber polynomials, Grunsky coefficients, mu matrix                  */

/* Packed size of the first M Faber polynomials: sum of (m+1), m = 1..M. */
size_t npspec_faber_size(int M);
/* Coefficients of F_1..F_M, ascending powers, concatenated; F_m
 * contributes m+1 entries. Buffers hold npspec_faber_size(M) values. */
int npspec_faber(const npspec_map* m, int M, double* re, double* im);

/* Grunsky coefficients c_{m,k}, row-major M x K: out[(m-1)*K + (k-1)].
 * Exact finite recurrence; rows vanish for k > m * order. */
int npspec_grunsky(const npspec_map* m, int M, int K, double* re, double* im);

/* mu_{m,k} = sqrt(k/m) c_{m,k} gamma^-(m+k), row-major M x M. Computed on
 * the capacity-normalized map, so the result is scale-safe. */
int npspec_mu(const npspec_map* m, int M, double* re, double* im);

/* ------------------------------------------------------------------ */
/* Spectra of finite sections                                          */

/* All 2n eigenvalues of the order-n section, ascending. The section acts
 * on the 2n-dim space spanned by the basis indices -n..-1, 1..n (index 0,
 * the capacity eigenfunction with eigenvalue 1/2, is excluded). */
int npspec_section_eigenvalues(const npspec_map* m, int n, double* out);
/* Positive half-spectrum (n values, descending). */
int npspec_positive_spectrum(const npspec_map* m, int n, double* out);

typedef struct npspec_spectrum_options {
  int kmax;         /* tracked eigenvalue count (default 30) */
  double threshold; /* relative-change stopping threshold (default 1e-5) */
  int max_step;     /* hard cap on growth steps (default 16) */
  int window;       /* consecutive passing steps required (default 5) */
  int step_size;    /* section order per step: n = step_size * step (default 100) */
  double floor;     /* round-off floor for tiny unconverged values */
} npspec_spectrum_options;

void npspec_spectrum_options_default(npspec_spectrum_options* opt);

/* Grow sections n = step_size * step until the kmax leading positive
 * eigenvalues are each relatively stable for `window` consecutive steps,
 * capped at max_step (per-eigenvalue acceptance over the final window). */
int npspec_spectrum_run(const npspec_map* m, const npspec_spectrum_options* opt,
                        npspec_spectrum** out);
void npspec_spectrum_free(npspec_spectrum* s);

/* steps = growth steps used; stopped_early = 1 if the global criterion was
 * met before max_step. Either output nullable. */
int npspec_spectrum_steps(const npspec_spectrum* s, int* steps,
                          int* stopped_early);
/* Accepted values lambda_1..lambda_kmax (descending). converged[k-1] and
 * floor_flagged[k-1] are 0/1 flags (nullable). */
int npspec_spectrum_values(const npspec_spectrum* s, double* lambda,
                           int* converged, int* floor_flagged);
/* Per-step history: lambda (kmax values) and relative changes rel (NaN at
 * step 1; nullable). step is 1-based and at most the steps used. */
int npspec_spectrum_history(const npspec_spectrum* s, int step, double* lambda,
                            double* rel);

/* Size of the predicted leading +/- eigenvalue multiset of the
 * one-coefficient map w + delta w^-m: 2m (multiplicity included). */
int npspec_cluster_count(int m);
/* The multiset +/- sqrt(j(m+1-j)) delta/2, j = 1..m, sorted descending
 * (m positives, then m negatives). One more group member appears at the
 * delta^2 scale and is not predicted here. */
int npspec_cluster_asymptotics(int m, double delta, double* out);

/* ------------------------------------------------------------------ */
/* Polarization tensors                                                */

/* Extreme contrast, sign = +1 (k = inf) or -1 (k = 0):
 * M = 2 pi [[s g^2 + Re a1, Im a1], [Im a1, s g^2 - Re a1]].
 * tau1 >= tau2 are the eigenvalues (nullable). */
int npspec_pt_extreme(const npspec_map* m, int sign, double out_m[4],
                      double* tau1, double* tau2);
/* tr(M^-1) at extreme contrast, closed form. */
int npspec_pt_trace_inverse_extreme(const npspec_map* m, int sign, double* out);

/* Finite contrast k in [0, inf], k != 1, through the order-n section with a
 * Q-point boundary quadrature (n >= 2 * map order, Q >= 8n). */
int npspec_pt(const npspec_map* m, double k, int n, int Q, double out_m[4],
              double* tau1, double* tau2);
/* Same, parameterized by lambda = (k+1)/(2(k-1)), |lambda| >= 1/2. */
int npspec_pt_lambda(const npspec_map* m, double lambda, int n, int Q,
                     double out_m[4], double* tau1, double* tau2);

/* Two-sided trace bounds for a tensor at contrast k and inclusion area |O|.
 * Finite k != 1: slack_trace = (1 + 1/k)|O| - tr(M)/(k-1) and
 * slack_inverse = (1 + k)/|O| - (k-1) tr(M^-1); both nonnegative when the
 * bounds hold. Extreme k (0 or inf): slack_trace is NaN and slack_inverse =
 * 1/|O| - |tr(M^-1)|. ok = 1 when the applicable slacks are nonnegative. */
int npspec_hs_check(const double m[4], double k, double area,
                    double* slack_trace, double* slack_inverse, int* ok);

/* |tr M| at extreme contrast (= 4 pi gamma^2) against the squared diameter:
 * slack_low = |tr M| - (pi/4) diam^2, slack_high = 4 pi diam^2 - |tr M|. */
int npspec_trace_diam_check(const npspec_map* m, int Q, double* trace_abs,
                            double* diam, double* slack_low, double* slack_high);

/* Dilate to capacity r (same Laurent tail): area, |O_r| |tr M(O_r)^-1| -> 1,
 * and the r-independent eigenvalue gap tau1 - tau2 = 4 pi |a1|. */
int npspec_dilation(const npspec_map* m, double r, double* area,
                    double* product, double* tau_gap);

/* Exterior map from an interior expansion Phi(zeta) = b1 zeta + ... + bn
 * zeta^n (b1 > 0, imaginary part of b1 negligible): gamma = 1/b1 and the
 * exterior tail to the given order via the series reciprocal. */
int npspec_riemann_to_exterior(const double* b_re, const double* b_im, int nb,
                               int order, npspec_map** out);

/* E(b, +/-) = gamma^2 +/- Re a1 of the induced exterior map, their slacks
 * against area/(2 pi), and (if nc > 0) the monotonicity differences against
 * a second expansion c. out6 = [e_plus, e_minus, slack_plus, slack_minus,
 * mono_plus, mono_minus]; the mono entries are NaN when nc == 0. */
int npspec_riemann_check(const double* b_re, const double* b_im, int nb,
                         double area, const double* c_re, const double* c_im,
                         int nc, double out6[6]);

/* ------------------------------------------------------------------ */
/* Dilute effective conductivity                                       */

/* sigma* = I + rho^2 order2 + rho^4 order4 for the periodic composite with
 * inclusion rho * Omega per unit cell at extreme contrast `sign`; order2 is
 * the extreme polarization tensor and order4 = order2^2 / 2. order2/order4
 * nullable. Requires rho^2 |Omega| < 1. */
int npspec_effective(const npspec_map* m, int sign, double rho, double sigma[4],
                     double order2[4], double order4[4]);

/* Functionals of A = sigma* - I: trace, determinant, tr(A^-1) = tr/det. */
int npspec_a_functionals(const npspec_map* m, int sign, double rho,
                         double* trace, double* det, double* trace_inverse);

/* X = pi (gamma^2 - |a1|^2 / gamma^2) >= area, equality iff ellipse. */
int npspec_x_functional(const npspec_map* m, double* out);
/* Sharp shape-independent bound on |tr(A^-1)| obtained by substituting the
 * area for X; the true value exceeds it except for ellipses. */
int npspec_a_trace_inverse_bound(const npspec_map* m, int sign, double rho,
                                 double* out);

/* Conformal radius of the regular n-gon scaled to the given area. */
int npspec_ngon_radius(int n, double area, double* out);
/* Closed-form expansion for the unit-area regular n-gon (isotropic). */
int npspec_ngon_effective(int n, int sign, double rho, double sigma[4],
                          double order2[4], double order4[4]);

/* ------------------------------------------------------------------ */
/* Transmission fields                                                 */

/* Solve the transmission problem at contrast k for the background field
 * H = Re P, P a polynomial with complex coefficients p[0..np-1] (ascending
 * powers), through the order-n section. */
int npspec_field_solve(const npspec_map* m, double k, const double* p_re,
                       const double* p_im, int np, int n, npspec_field** out);
void npspec_field_free(npspec_field* f);

int npspec_field_order(const npspec_field* f, int* n);
/* Density coefficients in the basis index order -n..-1, 1..n (2n values). */
int npspec_field_density(const npspec_field* f, double* re, double* im);
/* Total field u = H + (single layer of the density) at (x, y). Fails with
 * NPSPEC_ERR_DOMAIN inside the ill-conditioned boundary collar. */
int npspec_field_value(const npspec_field* f, double x, double y, double* u);
int npspec_field_background(const npspec_field* f, double x, double y,
                            double* h);
/* Row-major ny x nx samples on the uniform grid over the rectangle; collar
 * points get u = NaN. region (nullable): 0 inside, 1 outside, 2 collar. */
int npspec_field_grid(const npspec_field* f, double xmin, double xmax,
                      double ymin, double ymax, int nx, int ny, double* u,
                      int* region);

/* ------------------------------------------------------------------ */
/* Periodic-cell finite-difference cross-check                         */

/* Effective conductivity of the periodic composite by a cell-centered
 * finite-volume solve on a gridN x gridN mesh (harmonic face averaging,
 * CG on the mean-zero subspace). Extreme contrasts k = 0 / inf are proxied
 * by 1e-8 / 1e8. mask_fraction, residual[2], iters[2] nullable. */
int npspec_fdm(const npspec_map* m, double rho, double k, int gridN,
               double sigma[4], double* mask_fraction, double* residual,
               int* iters);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NPSPEC_H */
