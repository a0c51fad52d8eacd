#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphon_lab {

enum class ErrorCode {
  Domain,            // argument outside the mathematical domain of a function
  InvalidInput,      // malformed graphon, pattern, window, ...
  CostGuard,         // request refused because it is too expensive
  Infeasible,        // (e, t~) outside the achievable region
  SingularPoint,     // ansatz at zeta == 0
  InfeasibleAnsatz,  // ansatz values leave [0,1]
  Nonexistent,       // symmetric family does not exist at this t~
  SingularJacobian,
  MaxIterations,
  NoConvergedStart,
  DegeneratePoint,
  Divergence,        // power series outside its radius
  BracketFailure,
  NoSeedGraph,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code so
/// the CLI can report it as JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace graphon_lab
