// C surface of the library: opaque handles over the core types, error codes
// instead of exceptions, split re/im arrays instead of std::complex.

#include "npspec.h"

#include <dlfcn.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "cell.hpp"
#include "effective.hpp"
#include "errors.hpp"
#include "faber.hpp"
#include "laurent.hpp"
#include "polarization.hpp"
#include "potentials.hpp"
#include "shapes.hpp"
#include "spectrum.hpp"

using npspec::cplx;
using npspec::Error;
using npspec::ErrorCode;

struct npspec_map {
  npspec::LaurentMap m;
};

struct npspec_spectrum {
  npspec::SpectrumResult r;
};

struct npspec_field {
  npspec::TransmissionSolution sol;
};

namespace {

thread_local std::string g_last_error;

int set_error(int code, const char* msg) {
  g_last_error = msg ? msg : "";
  return code;
}

// Run f, translating exceptions into error codes + thread-local message.
template <class F>
int guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return NPSPEC_OK;
  } catch (const Error& e) {
    return set_error(static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(NPSPEC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(NPSPEC_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(NPSPEC_ERR_INTERNAL, "unknown error");
  }
}

int need(bool ok, const char* what) {
  if (!ok) npspec::fail(ErrorCode::invalid_argument, what);
  return 0;
}

std::vector<cplx> join(const double* re, const double* im, int n) {
  std::vector<cplx> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = {re[i], im[i]};
  return v;
}

void write_mat2(const Eigen::Matrix2d& m, double out[4]) {
  out[0] = m(0, 0);
  out[1] = m(0, 1);
  out[2] = m(1, 0);
  out[3] = m(1, 1);
}

npspec::MaterialParam material_of(double k) {
  return npspec::material_from_k(k);
}

} // namespace

extern "C" {

const char* npspec_version(void) { return "1.0.0"; }

const char* npspec_last_error(void) { return g_last_error.c_str(); }

const char* npspec_error_name(int code) {
  switch (code) {
    case NPSPEC_OK: return "ok";
    case NPSPEC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case NPSPEC_ERR_INVALID_MAP: return "invalid_map";
    case NPSPEC_ERR_DEGENERATE_BOUNDARY: return "degenerate_boundary";
    case NPSPEC_ERR_DOMAIN: return "domain_error";
    case NPSPEC_ERR_SIZE: return "size_error";
    case NPSPEC_ERR_RESONANCE: return "resonance";
    case NPSPEC_ERR_SINGULAR_TENSOR: return "singular_tensor";
    case NPSPEC_ERR_DILUTE: return "dilute_violation";
    case NPSPEC_ERR_GEOMETRY: return "geometry_error";
    case NPSPEC_ERR_SOLVER: return "solver_error";
    case NPSPEC_ERR_CONSISTENCY: return "consistency_error";
    case NPSPEC_ERR_IO: return "io_error";
    case NPSPEC_ERR_NO_CONVERGENCE: return "no_convergence";
    case NPSPEC_ERR_INTERNAL: return "internal_error";
    default: return "unknown";
  }
}

void npspec_string_free(char* s) { std::free(s); }

int npspec_set_threads(int n) {
  if (n < 1) return 0;
  using setter = void (*)(int);
  // The BLAS/LAPACK backend is an implementation detail; probe for the
  // OpenBLAS knob at runtime instead of linking it by name.
  if (auto* f = reinterpret_cast<setter>(dlsym(RTLD_DEFAULT, "openblas_set_num_threads"))) {
    f(n);
    return n;
  }
  return 0;
}

/* ---------------- maps ---------------- */

int npspec_map_create(double gamma, double a0_re, double a0_im,
                      const double* a_re, const double* a_im, int n,
                      npspec_map** out) {
  return guarded([&] {
    need(out != nullptr, "out must not be NULL");
    need(n >= 0, "coefficient count must be nonnegative");
    need(n == 0 || (a_re != nullptr && a_im != nullptr),
         "coefficient arrays must not be NULL");
    npspec::LaurentMap m(gamma, {a0_re, a0_im}, join(a_re, a_im, n));
    *out = new npspec_map{std::move(m)};
  });
}

void npspec_map_free(npspec_map* m) { delete m; }

int npspec_map_validate(const npspec_map* m, int Q) {
  return guarded([&] {
    need(m != nullptr, "map must not be NULL");
    m->m.validate(Q);
  });
}

int npspec_map_generate(const char* spec, npspec_map** out) {
  return guarded([&] {
    need(spec != nullptr && out != nullptr, "spec/out must not be NULL");
    std::string s(spec);
    std::string name = s;
    std::vector<double> args;
    if (auto colon = s.find(':'); colon != std::string::npos) {
      name = s.substr(0, colon);
      std::string rest = s.substr(colon + 1);
      size_t pos = 0;
      while (pos <= rest.size()) {
        size_t comma = rest.find(',', pos);
        std::string tok = rest.substr(pos, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - pos);
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
          npspec::fail(ErrorCode::invalid_argument,
                       "shape spec: bad numeric argument '" + tok + "'");
        args.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
    auto count = [&](size_t lo, size_t hi) {
      if (args.size() < lo || args.size() > hi)
        npspec::fail(ErrorCode::invalid_argument,
                     "shape spec '" + name + "': wrong argument count");
    };
    auto as_int = [&](size_t i) {
      double v = args[i];
      int k = static_cast<int>(std::lround(v));
      if (!(std::abs(v - k) < 1e-9))
        npspec::fail(ErrorCode::invalid_argument,
                     "shape spec '" + name + "': integer argument expected");
      return k;
    };
    npspec::LaurentMap* m = nullptr;
    if (name == "disk") {
      count(0, 1);
      double r = args.empty() ? 1.0 : args[0];
      m = new npspec::LaurentMap(r, 0.0, {});
    } else if (name == "ellipse") {
      count(2, 2);
      m = new npspec::LaurentMap(npspec::ellipse(args[0], args[1]));
    } else if (name == "algebraic") {
      count(2, 3);
      cplx c{args[1], args.size() > 2 ? args[2] : 0.0};
      m = new npspec::LaurentMap(npspec::algebraic(as_int(0), c));
    } else if (name == "ngon") {
      count(1, 3);
      double area = args.size() > 1 ? args[1] : 1.0;
      double orient = args.size() > 2 ? args[2] : 0.0;
      m = new npspec::LaurentMap(npspec::regular_ngon(as_int(0), area, orient));
    } else if (name == "rect") {
      count(0, 0);
      m = new npspec::LaurentMap(npspec::rectangle_fixture());
    } else if (name == "blob") {
      count(0, 0);
      m = new npspec::LaurentMap(npspec::sample_blob());
    } else if (name == "sweep_a") {
      count(1, 1);
      m = new npspec::LaurentMap(npspec::coeff_sweep_a(as_int(0)));
    } else if (name == "sweep_b") {
      count(1, 1);
      m = new npspec::LaurentMap(npspec::coeff_sweep_b(as_int(0)));
    } else if (name == "crossing") {
      count(1, 1);
      m = new npspec::LaurentMap(npspec::crossing_pair(as_int(0)));
    } else {
      npspec::fail(ErrorCode::invalid_argument, "unknown shape spec '" + name + "'");
    }
    *out = new npspec_map{std::move(*m)};
    delete m;
  });
}

int npspec_map_ellipse(double a, double b, npspec_map** out) {
  return guarded([&] {
    need(out != nullptr, "out must not be NULL");
    *out = new npspec_map{npspec::ellipse(a, b)};
  });
}

int npspec_map_algebraic(int m, double c_re, double c_im, npspec_map** out) {
  return guarded([&] {
    need(out != nullptr, "out must not be NULL");
    *out = new npspec_map{npspec::algebraic(m, {c_re, c_im})};
  });
}

int npspec_map_ngon(int n, double area, double orientation, npspec_map** out) {
  return guarded([&] {
    need(out != nullptr, "out must not be NULL");
    *out = new npspec_map{npspec::regular_ngon(n, area, orientation)};
  });
}

int npspec_map_from_json(const char* text, npspec_map** out) {
  return guarded([&] {
    need(text != nullptr && out != nullptr, "text/out must not be NULL");
    *out = new npspec_map{npspec::map_from_json(text)};
  });
}

int npspec_map_from_json_file(const char* path, npspec_map** out) {
  return guarded([&] {
    need(path != nullptr && out != nullptr, "path/out must not be NULL");
    *out = new npspec_map{npspec::map_from_json_file(path)};
  });
}

int npspec_map_to_json(const npspec_map* m, char** out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    std::string s = npspec::map_to_json(m->m);
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
  });
}

int npspec_map_to_json_file(const npspec_map* m, const char* path) {
  return guarded([&] {
    need(m != nullptr && path != nullptr, "map/path must not be NULL");
    npspec::map_to_json_file(m->m, path);
  });
}

int npspec_map_gamma(const npspec_map* m, double* out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    *out = m->m.gamma();
  });
}

int npspec_map_order(const npspec_map* m, int* out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    *out = m->m.order();
  });
}

int npspec_map_a0(const npspec_map* m, double* re, double* im) {
  return guarded([&] {
    need(m != nullptr && re != nullptr && im != nullptr,
         "map/re/im must not be NULL");
    *re = m->m.a0().real();
    *im = m->m.a0().imag();
  });
}

int npspec_map_coeff(const npspec_map* m, int j, double* re, double* im) {
  return guarded([&] {
    need(m != nullptr && re != nullptr && im != nullptr,
         "map/re/im must not be NULL");
    need(j >= 1, "coefficient index must be >= 1");
    cplx a = m->m.coeff(j);
    *re = a.real();
    *im = a.imag();
  });
}

int npspec_map_area(const npspec_map* m, double* out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    *out = m->m.area();
  });
}

int npspec_map_diameter(const npspec_map* m, int Q, double* out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    *out = npspec::diameter(m->m, Q);
  });
}

int npspec_map_eval(const npspec_map* m, double w_re, double w_im,
                    double* z_re, double* z_im) {
  return guarded([&] {
    need(m != nullptr && z_re != nullptr && z_im != nullptr,
         "map/z_re/z_im must not be NULL");
    cplx z = m->m.eval({w_re, w_im});
    *z_re = z.real();
    *z_im = z.imag();
  });
}

int npspec_map_boundary(const npspec_map* m, int Q, double* xy) {
  return guarded([&] {
    need(m != nullptr && xy != nullptr, "map/xy must not be NULL");
    npspec::BoundarySample s = npspec::boundary_sample(m->m, Q);
    for (int q = 0; q < Q; ++q) {
      xy[2 * q] = s.point[static_cast<size_t>(q)].real();
      xy[2 * q + 1] = s.point[static_cast<size_t>(q)].imag();
    }
  });
}

int npspec_map_transformed(const npspec_map* m, double scale, double rot,
                           double shift_re, double shift_im, npspec_map** out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    *out = new npspec_map{m->m.transformed(scale, rot, {shift_re, shift_im})};
  });
}

int npspec_map_normalized(const npspec_map* m, npspec_map** out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    *out = new npspec_map{m->m.normalized()};
  });
}

/* ---------------- Faber / Grunsky / mu ---------------- */

size_t npspec_faber_size(int M) {
  if (M < 1) return 0;
  return static_cast<size_t>(M) * (static_cast<size_t>(M) + 3) / 2;
}

int npspec_faber(const npspec_map* m, int M, double* re, double* im) {
  return guarded([&] {
    need(m != nullptr && re != nullptr && im != nullptr,
         "map/re/im must not be NULL");
    npspec::FaberSet fs = npspec::faber_polynomials(m->m, M);
    size_t at = 0;
    for (int deg = 1; deg <= M; ++deg) {
      const auto& p = fs.poly[static_cast<size_t>(deg)];
      for (int j = 0; j <= deg; ++j, ++at) {
        re[at] = p[static_cast<size_t>(j)].real();
        im[at] = p[static_cast<size_t>(j)].imag();
      }
    }
  });
}

int npspec_grunsky(const npspec_map* m, int M, int K, double* re, double* im) {
  return guarded([&] {
    need(m != nullptr && re != nullptr && im != nullptr,
         "map/re/im must not be NULL");
    npspec::GrunskyMatrix g = npspec::grunsky_coefficients(m->m, M, K);
    for (int r = 0; r < M; ++r)
      for (int c = 0; c < K; ++c) {
        re[static_cast<size_t>(r) * K + c] = g.c(r, c).real();
        im[static_cast<size_t>(r) * K + c] = g.c(r, c).imag();
      }
  });
}

int npspec_mu(const npspec_map* m, int M, double* re, double* im) {
  return guarded([&] {
    need(m != nullptr && re != nullptr && im != nullptr,
         "map/re/im must not be NULL");
    npspec::MuMatrix mu = npspec::mu_of(m->m, M);
    for (int r = 0; r < M; ++r)
      for (int c = 0; c < M; ++c) {
        re[static_cast<size_t>(r) * M + c] = mu.mu(r, c).real();
        im[static_cast<size_t>(r) * M + c] = mu.mu(r, c).imag();
      }
  });
}

/* ---------------- spectra ---------------- */

int npspec_section_eigenvalues(const npspec_map* m, int n, double* out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    npspec::FiniteSection sec =
        npspec::assemble_section(npspec::mu_of(m->m, n), n);
    std::vector<double> ev = npspec::section_eigenvalues(sec);
    std::memcpy(out, ev.data(), ev.size() * sizeof(double));
  });
}

int npspec_positive_spectrum(const npspec_map* m, int n, double* out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    std::vector<double> ev = npspec::positive_spectrum(m->m, n);
    std::memcpy(out, ev.data(), ev.size() * sizeof(double));
  });
}

void npspec_spectrum_options_default(npspec_spectrum_options* opt) {
  if (!opt) return;
  npspec::SpectrumOptions d;
  opt->kmax = d.kmax;
  opt->threshold = d.threshold;
  opt->max_step = d.max_step;
  opt->window = d.window;
  opt->step_size = d.step_size;
  opt->floor = d.floor;
}

int npspec_spectrum_run(const npspec_map* m, const npspec_spectrum_options* opt,
                        npspec_spectrum** out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    npspec::SpectrumOptions o;
    if (opt) {
      o.kmax = opt->kmax;
      o.threshold = opt->threshold;
      o.max_step = opt->max_step;
      o.window = opt->window;
      o.step_size = opt->step_size;
      o.floor = opt->floor;
    }
    *out = new npspec_spectrum{npspec::adaptive_spectrum(m->m, o)};
  });
}

void npspec_spectrum_free(npspec_spectrum* s) { delete s; }

int npspec_spectrum_steps(const npspec_spectrum* s, int* steps,
                          int* stopped_early) {
  return guarded([&] {
    need(s != nullptr, "spectrum must not be NULL");
    if (steps) *steps = s->r.steps_used;
    if (stopped_early) *stopped_early = s->r.stopped_early ? 1 : 0;
  });
}

int npspec_spectrum_values(const npspec_spectrum* s, double* lambda,
                           int* converged, int* floor_flagged) {
  return guarded([&] {
    need(s != nullptr && lambda != nullptr, "spectrum/lambda must not be NULL");
    int kmax = s->r.opt.kmax;
    for (int k = 0; k < kmax; ++k) {
      lambda[k] = s->r.lambda[static_cast<size_t>(k)];
      if (converged) converged[k] = s->r.converged[static_cast<size_t>(k)] ? 1 : 0;
      if (floor_flagged)
        floor_flagged[k] = s->r.floor_flagged[static_cast<size_t>(k)] ? 1 : 0;
    }
  });
}

int npspec_spectrum_history(const npspec_spectrum* s, int step, double* lambda,
                            double* rel) {
  return guarded([&] {
    need(s != nullptr && lambda != nullptr, "spectrum/lambda must not be NULL");
    need(step >= 1 && step <= s->r.steps_used, "step out of range");
    int kmax = s->r.opt.kmax;
    const auto& h = s->r.history[static_cast<size_t>(step - 1)];
    const auto& rr = s->r.rel[static_cast<size_t>(step - 1)];
    for (int k = 0; k < kmax; ++k) {
      lambda[k] = h[static_cast<size_t>(k)];
      if (rel) rel[k] = rr[static_cast<size_t>(k)];
    }
  });
}

int npspec_cluster_count(int m) { return m >= 1 ? 2 * m : 0; }

int npspec_cluster_asymptotics(int m, double delta, double* out) {
  return guarded([&] {
    need(out != nullptr, "out must not be NULL");
    std::vector<double> v = npspec::cluster_asymptotics(m, delta);
    std::memcpy(out, v.data(), v.size() * sizeof(double));
  });
}

/* ---------------- polarization ---------------- */

int npspec_pt_extreme(const npspec_map* m, int sign, double out_m[4],
                      double* tau1, double* tau2) {
  return guarded([&] {
    need(m != nullptr && out_m != nullptr, "map/out must not be NULL");
    npspec::PolarizationTensor pt = npspec::pt_extreme(m->m, sign);
    write_mat2(pt.M, out_m);
    if (tau1) *tau1 = pt.tau1;
    if (tau2) *tau2 = pt.tau2;
  });
}

int npspec_pt_trace_inverse_extreme(const npspec_map* m, int sign, double* out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    *out = npspec::pt_trace_inverse(m->m, sign);
  });
}

int npspec_pt(const npspec_map* m, double k, int n, int Q, double out_m[4],
              double* tau1, double* tau2) {
  return guarded([&] {
    need(m != nullptr && out_m != nullptr, "map/out must not be NULL");
    npspec::PolarizationTensor pt =
        npspec::pt_general(m->m, material_of(k), n, Q);
    write_mat2(pt.M, out_m);
    if (tau1) *tau1 = pt.tau1;
    if (tau2) *tau2 = pt.tau2;
  });
}

int npspec_pt_lambda(const npspec_map* m, double lambda, int n, int Q,
                     double out_m[4], double* tau1, double* tau2) {
  return guarded([&] {
    need(m != nullptr && out_m != nullptr, "map/out must not be NULL");
    npspec::PolarizationTensor pt =
        npspec::pt_general(m->m, npspec::material_from_lambda(lambda), n, Q);
    write_mat2(pt.M, out_m);
    if (tau1) *tau1 = pt.tau1;
    if (tau2) *tau2 = pt.tau2;
  });
}

int npspec_hs_check(const double m[4], double k, double area,
                    double* slack_trace, double* slack_inverse, int* ok) {
  return guarded([&] {
    need(m != nullptr, "m must not be NULL");
    npspec::PolarizationTensor pt;
    pt.M << m[0], m[1], m[2], m[3];
    npspec::HsReport rep = npspec::hs_check(pt, k, area);
    if (slack_trace) *slack_trace = rep.slack_trace;
    if (slack_inverse) *slack_inverse = rep.slack_inverse;
    if (ok) *ok = rep.ok ? 1 : 0;
  });
}

int npspec_trace_diam_check(const npspec_map* m, int Q, double* trace_abs,
                            double* diam, double* slack_low, double* slack_high) {
  return guarded([&] {
    need(m != nullptr, "map must not be NULL");
    npspec::TraceDiamReport rep = npspec::trace_diam_check(m->m, Q);
    if (trace_abs) *trace_abs = rep.trace_abs;
    if (diam) *diam = rep.diam;
    if (slack_low) *slack_low = rep.slack_low;
    if (slack_high) *slack_high = rep.slack_high;
  });
}

int npspec_dilation(const npspec_map* m, double r, double* area,
                    double* product, double* tau_gap) {
  return guarded([&] {
    need(m != nullptr, "map must not be NULL");
    npspec::DilationReport rep = npspec::dilation_family(m->m, r);
    if (area) *area = rep.area;
    if (product) *product = rep.product;
    if (tau_gap) *tau_gap = rep.tau_gap;
  });
}

int npspec_riemann_to_exterior(const double* b_re, const double* b_im, int nb,
                               int order, npspec_map** out) {
  return guarded([&] {
    need(b_re != nullptr && b_im != nullptr && out != nullptr,
         "b_re/b_im/out must not be NULL");
    need(nb >= 1, "need at least b1");
    *out = new npspec_map{
        npspec::riemann_to_exterior(join(b_re, b_im, nb), order)};
  });
}

int npspec_riemann_check(const double* b_re, const double* b_im, int nb,
                         double area, const double* c_re, const double* c_im,
                         int nc, double out6[6]) {
  return guarded([&] {
    need(b_re != nullptr && b_im != nullptr && out6 != nullptr,
         "b_re/b_im/out6 must not be NULL");
    need(nb >= 1, "need at least b1");
    std::optional<std::vector<cplx>> c;
    if (nc > 0) {
      need(c_re != nullptr && c_im != nullptr,
           "c_re/c_im must not be NULL when nc > 0");
      c = join(c_re, c_im, nc);
    }
    npspec::RiemannCheck rep =
        npspec::riemann_inequality_check(join(b_re, b_im, nb), area, c);
    out6[0] = rep.e_plus;
    out6[1] = rep.e_minus;
    out6[2] = rep.slack_plus;
    out6[3] = rep.slack_minus;
    out6[4] = rep.mono_plus;
    out6[5] = rep.mono_minus;
  });
}

/* ---------------- effective conductivity ---------------- */

int npspec_effective(const npspec_map* m, int sign, double rho, double sigma[4],
                     double order2[4], double order4[4]) {
  return guarded([&] {
    need(m != nullptr && sigma != nullptr, "map/sigma must not be NULL");
    npspec::EffectiveExpansion e = npspec::effective_expansion(m->m, sign, rho);
    write_mat2(e.sigma(), sigma);
    if (order2) write_mat2(e.order2, order2);
    if (order4) write_mat2(e.order4, order4);
  });
}

int npspec_a_functionals(const npspec_map* m, int sign, double rho,
                         double* trace, double* det, double* trace_inverse) {
  return guarded([&] {
    need(m != nullptr, "map must not be NULL");
    npspec::AFunctionals f = npspec::A_functionals(m->m, sign, rho);
    if (trace) *trace = f.trace;
    if (det) *det = f.det;
    if (trace_inverse) *trace_inverse = f.trace_inverse;
  });
}

int npspec_x_functional(const npspec_map* m, double* out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    *out = npspec::x_functional(m->m);
  });
}

int npspec_a_trace_inverse_bound(const npspec_map* m, int sign, double rho,
                                 double* out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    *out = npspec::a_trace_inverse_bound(m->m, sign, rho);
  });
}

int npspec_ngon_radius(int n, double area, double* out) {
  return guarded([&] {
    need(out != nullptr, "out must not be NULL");
    *out = npspec::ngon_radius(n, area);
  });
}

int npspec_ngon_effective(int n, int sign, double rho, double sigma[4],
                          double order2[4], double order4[4]) {
  return guarded([&] {
    need(sigma != nullptr, "sigma must not be NULL");
    npspec::EffectiveExpansion e = npspec::ngon_effective(n, sign, rho);
    write_mat2(e.sigma(), sigma);
    if (order2) write_mat2(e.order2, order2);
    if (order4) write_mat2(e.order4, order4);
  });
}

/* ---------------- transmission field ---------------- */

int npspec_field_solve(const npspec_map* m, double k, const double* p_re,
                       const double* p_im, int np, int n, npspec_field** out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "map/out must not be NULL");
    need(np >= 1 && p_re != nullptr && p_im != nullptr,
         "polynomial must have at least one coefficient");
    *out = new npspec_field{npspec::transmission_solve(
        m->m, material_of(k), join(p_re, p_im, np), n)};
  });
}

void npspec_field_free(npspec_field* f) { delete f; }

int npspec_field_order(const npspec_field* f, int* n) {
  return guarded([&] {
    need(f != nullptr && n != nullptr, "field/n must not be NULL");
    *n = f->sol.n;
  });
}

int npspec_field_density(const npspec_field* f, double* re, double* im) {
  return guarded([&] {
    need(f != nullptr && re != nullptr && im != nullptr,
         "field/re/im must not be NULL");
    for (int i = 0; i < 2 * f->sol.n; ++i) {
      re[i] = f->sol.phi(i).real();
      im[i] = f->sol.phi(i).imag();
    }
  });
}

int npspec_field_value(const npspec_field* f, double x, double y, double* u) {
  return guarded([&] {
    need(f != nullptr && u != nullptr, "field/u must not be NULL");
    *u = f->sol.value({x, y});
  });
}

int npspec_field_background(const npspec_field* f, double x, double y,
                            double* h) {
  return guarded([&] {
    need(f != nullptr && h != nullptr, "field/h must not be NULL");
    *h = f->sol.background({x, y});
  });
}

int npspec_field_grid(const npspec_field* f, double xmin, double xmax,
                      double ymin, double ymax, int nx, int ny, double* u,
                      int* region) {
  return guarded([&] {
    need(f != nullptr && u != nullptr, "field/u must not be NULL");
    npspec::FieldGrid g =
        npspec::transmission_field(f->sol, xmin, xmax, ymin, ymax, nx, ny);
    std::memcpy(u, g.u.data(), g.u.size() * sizeof(double));
    if (region)
      std::memcpy(region, g.region.data(), g.region.size() * sizeof(int));
  });
}

/* ---------------- periodic-cell FDM ---------------- */

int npspec_fdm(const npspec_map* m, double rho, double k, int gridN,
               double sigma[4], double* mask_fraction, double* residual,
               int* iters) {
  return guarded([&] {
    need(m != nullptr && sigma != nullptr, "map/sigma must not be NULL");
    npspec::FdmResult r = npspec::effective_fdm(m->m, rho, k, gridN);
    write_mat2(r.sigma_star, sigma);
    if (mask_fraction) *mask_fraction = r.mask_fraction;
    if (residual) {
      residual[0] = r.residual[0];
      residual[1] = r.residual[1];
    }
    if (iters) {
      iters[0] = r.iters[0];
      iters[1] = r.iters[1];
    }
  });
}

} // extern "C"
