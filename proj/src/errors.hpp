#pragma once

#include <stdexcept>
#include <string>

namespace npspec {

// Failure kinds surfaced through the C API as status codes. Keep in sync with
// the NPSPEC_ERR_* constants in include/npspec.h.
enum class ErrorCode {
  ok = 0,
  invalid_argument = 1,   // bad parameter value (gamma <= 0, k = 1, bad range)
  invalid_map = 2,        // coefficients do not describe a Jordan domain
  degenerate_boundary = 3,// |Psi'| collapses on the boundary sample
  domain_error = 4,       // evaluation point outside the map's domain
  size_error = 5,         // matrix/section dimensions inconsistent or too small
  resonance = 6,          // lambda*I - K* numerically singular
  singular_tensor = 7,    // tensor inverse does not exist (|a1| = gamma^2)
  dilute_violation = 8,   // rho out of the dilute regime
  geometry_error = 9,     // inclusion does not fit the cell
  solver_error = 10,      // iterative solver failed to reach tolerance
  consistency_error = 11, // internal cross-check failed (symmetry, Hermiticity)
  io_error = 12,          // file read/write/parse failure
  no_convergence = 13,    // iteration cap hit (inverse map, protocol misuse)
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace npspec
