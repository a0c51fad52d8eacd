#pragma once

#include <vector>

#include "graphon_lab/core/step_graphon.hpp"

namespace graphon_lab::opt {

struct TangentSpectrum {
  /// Eigenvalues (ascending) of the Lagrangian Hessian restricted to the
  /// tangent space of the constraint fiber.
  std::vector<double> eigenvalues;
  /// Tangent directions along which the graphon itself does not change
  /// (the pode size of a constant graphon); removed before diagonalising.
  int gauge_directions = 0;
  /// Multipliers used in the Lagrangian (entropy normalisation); the d1, d2
  /// multipliers when degree_constraints is set.
  double alpha = 0.0;
  double beta = 0.0;
  /// True when the fiber was described by d1 = d2 = e because grad e and
  /// grad t are parallel (t~ = 0).
  bool degree_constraints = false;

  double max() const;
};

/// Second-order test on the space of bipodal graphons with fixed (e, t~).
/// Builds the 4x4 Hessian of S - alpha e - beta t, projects it onto an
/// orthonormal basis of the null space of [grad e; grad t] and diagonalises.
/// Throws InvalidInput if p misses (e, t~) by more than 1e-8, DegeneratePoint
/// if the constraint Jacobian is rank deficient away from t~ = 0.
TangentSpectrum constrained_hessian(const core::BipodalParams& p, double e, double t_tilde);

}  // namespace graphon_lab::opt
