#include "graphon_lab/errors.hpp"

namespace graphon_lab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::CostGuard: return "CostGuard";
    case ErrorCode::Infeasible: return "InfeasibleTarget";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::InfeasibleAnsatz: return "InfeasibleAnsatz";
    case ErrorCode::Nonexistent: return "Nonexistent";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::NoConvergedStart: return "NoConvergedStart";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::Divergence: return "Divergence";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::NoSeedGraph: return "NoSeedGraph";
  }
  return "Unknown";
}

}  // namespace graphon_lab
