#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bihydro {

/// Machine-readable failure categories shared by every module and the CLI.
enum class ErrorCode {
  Domain,
  NonConvergence,
  NonFinite,
  Range,
  NoRoot,
  NoSolution,
  Bracketing,
  NoBoundState,
  SingularJacobian,
  MissingParameters,
  Io,
  Check,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "domain_error";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::NonFinite: return "non_finite";
    case ErrorCode::Range: return "range_error";
    case ErrorCode::NoRoot: return "no_root";
    case ErrorCode::NoSolution: return "no_solution";
    case ErrorCode::Bracketing: return "bracketing_failure";
    case ErrorCode::NoBoundState: return "no_bound_state";
    case ErrorCode::SingularJacobian: return "singular_jacobian";
    case ErrorCode::MissingParameters: return "missing_parameters";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::Check: return "check_failed";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bihydro
