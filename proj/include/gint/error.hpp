#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gint {

enum class ErrorCode {
  domain,         // argument outside the supported domain
  pole,           // argument hits a pole of a meromorphic function
  precision,      // requested accuracy not reachable (step underflow, series cap)
  overflow,       // result not representable in double
  convergence,    // quadrature or extrapolation failed to converge
  inconsistency,  // declared expansion does not match the integrand
  ill_conditioned,
  redirect,       // caller should use a different entry point
  singularity,    // coincident points of a Green function
  resonance,      // gamma + Sigma vanishes
  unsupported,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a module-qualified code, e.g. "specfun.pole".
class NumericError : public std::runtime_error {
 public:
  NumericError(std::string module, ErrorCode code, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)), code_(code) {}

  const std::string& module() const noexcept { return module_; }
  ErrorCode code() const noexcept { return code_; }
  std::string qualified_code() const {
    return module_ + "." + std::string(to_string(code_));
  }

 private:
  std::string module_;
  ErrorCode code_;
};

}  // namespace gint
