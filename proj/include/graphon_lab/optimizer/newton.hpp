#pragma once

#include <string>

#include "graphon_lab/optimizer/bipodal.hpp"
#include "graphon_lab/optimizer/report.hpp"

namespace graphon_lab::opt {

struct NewtonOptions {
  int max_iterations = 100;
  double tolerance = 1e-10;  // on the sup-norm of the KKT residual
  int max_backtracks = 40;
  double backtrack_factor = 0.5;
};

enum class NewtonStatus { Converged, MaxIterations, SingularJacobian, Stalled };

struct NewtonResult {
  NewtonStatus status = NewtonStatus::Stalled;
  core::BipodalParams params;  // raw, not canonicalised
  stationarity::LagrangeState lagrange;
  double residual = 0.0;
  int iterations = 0;
};

/// Newton iteration on the six KKT equations
///   grad S = alpha grad e + beta grad t,  e = e0,  t = t0
/// in the unknowns (logit a, logit b, logit c, logit d, alpha, beta).
/// Never throws for numerical failure; the status says what happened.
NewtonResult newton_bipodal(double e, double t_tilde, const core::BipodalParams& init,
                            const NewtonOptions& opts = {});

/// Throwing wrapper producing a full report (stationarity certificate, tangent
/// spectrum, classification). Errors: Infeasible, MaxIterations, SingularJacobian.
OptimumReport solve_bipodal(double e, double t_tilde, const core::BipodalParams& init,
                            const NewtonOptions& opts = {});

/// Fills the derived report fields for a converged Newton result.
OptimumReport make_report(double e, double t_tilde, const NewtonResult& r);

}  // namespace graphon_lab::opt
