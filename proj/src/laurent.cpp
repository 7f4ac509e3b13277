#include "laurent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace npspec {

LaurentMap::LaurentMap(double gamma, cplx a0, std::vector<cplx> a)
    : gamma_(gamma), a0_(a0), a_(std::move(a)) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    fail(ErrorCode::invalid_argument, "conformal radius must be positive and finite");
  if (!std::isfinite(a0_.real()) || !std::isfinite(a0_.imag()))
    fail(ErrorCode::invalid_argument, "a0 must be finite");
  for (const cplx& c : a_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      fail(ErrorCode::invalid_argument, "coefficients must be finite");
  while (!a_.empty() && a_.back() == cplx(0.0, 0.0)) a_.pop_back();
}

cplx LaurentMap::coeff(int n) const {
  if (n < 1) fail(ErrorCode::invalid_argument, "coefficient index must be >= 1");
  return n <= order() ? a_[n - 1] : cplx(0.0, 0.0);
}

cplx LaurentMap::eval(cplx w) const {
  if (!(std::abs(w) > gamma_))
    fail(ErrorCode::domain_error, "evaluation point must satisfy |w| > gamma");
  cplx inv = 1.0 / w;
  // Horner in 1/w for the tail, highest index first.
  cplx tail(0.0, 0.0);
  for (int n = order(); n >= 1; --n) tail = (tail + a_[n - 1]) * inv;
  return w + a0_ + tail;
}

cplx LaurentMap::boundary_point(double theta) const {
  cplx w = std::polar(gamma_, theta);
  cplx inv = 1.0 / w;
  cplx tail(0.0, 0.0);
  for (int n = order(); n >= 1; --n) tail = (tail + a_[n - 1]) * inv;
  return w + a0_ + tail;
}

cplx LaurentMap::w_dpsi(cplx w) const {
  cplx inv = 1.0 / w;
  cplx tail(0.0, 0.0);
  for (int n = order(); n >= 1; --n) tail = (tail + double(n) * a_[n - 1]) * inv;
  return w - tail;
}

double LaurentMap::area() const {
  double s = 0.0;
  double g2 = gamma_ * gamma_;
  double pw = 1.0;
  for (int n = 1; n <= order(); ++n) {
    pw /= g2;
    s += double(n) * std::norm(a_[n - 1]) * pw;
  }
  double val = M_PI * (g2 - s);
  if (!(val > 0.0))
    fail(ErrorCode::invalid_map, "nonpositive enclosed area: coefficients do not describe a Jordan domain");
  return val;
}

LaurentMap LaurentMap::transformed(double scale, double rot, cplx shift) const {
  if (!(scale > 0.0) || !std::isfinite(scale))
    fail(ErrorCode::invalid_argument, "scale must be positive and finite");
  // Image transform T(z) = sigma z + shift, sigma = scale e^{i rot}, turns the
  // series with coefficients a_n into one with sigma^{n+1} a_n.
  cplx sigma = scale * std::polar(1.0, rot);
  std::vector<cplx> a(a_.size());
  cplx f = sigma;
  for (size_t n = 0; n < a_.size(); ++n) {
    f *= sigma;
    a[n] = f * a_[n];
  }
  return LaurentMap(scale * gamma_, sigma * a0_ + shift, std::move(a));
}

LaurentMap LaurentMap::normalized() const {
  return transformed(1.0 / gamma_, 0.0, -a0_ / gamma_);
}

BoundarySample boundary_sample(const LaurentMap& map, int Q) {
  if (Q < 8) fail(ErrorCode::invalid_argument, "boundary sample needs Q >= 8");
  BoundarySample bs;
  bs.theta.resize(Q);
  bs.point.resize(Q);
  bs.h.resize(Q);
  bs.normal.resize(Q);
  for (int i = 0; i < Q; ++i) {
    double th = 2.0 * M_PI * i / Q;
    cplx w = std::polar(map.gamma(), th);
    bs.theta[i] = th;
    bs.point[i] = map.boundary_point(th);
    cplx t = map.w_dpsi(w);
    double h = std::abs(t);
    if (h < 1e-12 * map.gamma())
      fail(ErrorCode::degenerate_boundary, "tangent vector collapses on the boundary sample");
    bs.h[i] = h;
    bs.normal[i] = t / h;
  }
  return bs;
}

void LaurentMap::validate(int Q) const {
  double g2 = gamma_ * gamma_;
  if (order() >= 1 && std::abs(a_[0]) > g2 * (1.0 + 1e-12))
    fail(ErrorCode::invalid_map, "|a_1| exceeds gamma^2: not univalent");
  area(); // throws on nonpositive series area
  BoundarySample bs = boundary_sample(*this, Q);
  double diam = 0.0;
  for (int i = 0; i < Q; ++i)
    for (int j = i + 1; j < Q; ++j)
      diam = std::max(diam, std::norm(bs.point[i] - bs.point[j]));
  diam = std::sqrt(diam);
  // Non-adjacent sample points must stay separated or the curve self-touches.
  double tol2 = 1e-9 * diam;
  tol2 *= tol2;
  for (int i = 0; i < Q; ++i)
    for (int j = i + 2; j < Q; ++j) {
      if (i == 0 && j == Q - 1) continue; // circularly adjacent
      if (std::norm(bs.point[i] - bs.point[j]) < tol2)
        fail(ErrorCode::invalid_map, "boundary sample self-intersects");
    }
}

double diameter(const LaurentMap& map, int Q) {
  if (Q < 256) fail(ErrorCode::invalid_argument, "diameter sampling needs Q >= 256");
  std::vector<cplx> pts(Q);
  for (int i = 0; i < Q; ++i) pts[i] = map.boundary_point(2.0 * M_PI * i / Q);
  double best = 0.0;
  for (int i = 0; i < Q; ++i)
    for (int j = i + 1; j < Q; ++j) best = std::max(best, std::norm(pts[i] - pts[j]));
  return std::sqrt(best);
}

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double get_num(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) fail(ErrorCode::io_error, std::string("shape file: ") + what + " must be a number");
  return j.get<double>();
}

cplx get_pair(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    fail(ErrorCode::io_error, std::string("shape file: ") + what + " must be [re, im]");
  return cplx(get_num(j[0], what), get_num(j[1], what));
}

} // namespace

LaurentMap map_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::io_error, "shape file: invalid JSON");
  if (!j.is_object() || !j.contains("gamma") || !j.contains("a0") || !j.contains("a"))
    fail(ErrorCode::io_error, "shape file: expected keys gamma, a0, a");
  double gamma = get_num(j["gamma"], "gamma");
  cplx a0 = get_pair(j["a0"], "a0");
  if (!j["a"].is_array()) fail(ErrorCode::io_error, "shape file: a must be an array");
  std::vector<cplx> a;
  a.reserve(j["a"].size());
  for (const auto& e : j["a"]) a.push_back(get_pair(e, "a[n]"));
  try {
    LaurentMap map(gamma, a0, std::move(a));
    map.validate();
    return map;
  } catch (const Error&) {
    throw;
  }
}

LaurentMap map_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open shape file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return map_from_json(ss.str());
}

std::string map_to_json(const LaurentMap& map) {
  std::string s = "{\n  \"gamma\": " + fmt17(map.gamma()) + ",\n  \"a0\": [" +
                  fmt17(map.a0().real()) + ", " + fmt17(map.a0().imag()) + "],\n  \"a\": [";
  for (int n = 1; n <= map.order(); ++n) {
    if (n > 1) s += ", ";
    cplx c = map.coeff(n);
    s += "[" + fmt17(c.real()) + ", " + fmt17(c.imag()) + "]";
  }
  s += "]\n}\n";
  return s;
}

void map_to_json_file(const LaurentMap& map, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot write shape file: " + path);
  out << map_to_json(map);
  if (!out) fail(ErrorCode::io_error, "write failed: " + path);
}

} // namespace npspec
