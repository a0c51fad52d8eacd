#pragma once

#include <cstdint>

#include "graphon_lab/optimizer/multipodal.hpp"
#include "graphon_lab/optimizer/newton.hpp"
#include "graphon_lab/optimizer/report.hpp"

namespace graphon_lab::opt {

struct MaximizeConfig {
  /// Largest pode count tried by the multipodal probe; 2 disables it.
  int max_podes = 4;
  /// Random bipodal seeds on top of the four structured ones.
  int random_seeds = 16;
  std::uint64_t seed = 20140101;
  /// Multipodal runs per pode count (one split of the bipodal winner, the
  /// rest random).
  int multipodal_runs_per_size = 2;
  /// Canonical parameter distance above which two optima are distinct.
  double cluster_distance = 1e-4;
  /// Optima within this entropy of the best count as tied.
  double entropy_tie = 1e-9;
  NewtonOptions newton;
  MultipodalOptions multipodal;
};

/// Structured seeds: small-zeta ansatz, clique-like and anti-clique-like
/// families, and the symmetric shape (e + 2 mu, e - 2 mu, 1/2, e).
/// Seeds that cannot be formed at (e, t~) are skipped.
std::vector<core::BipodalParams> structured_seeds(double e, double t_tilde);

/// Multistart constrained maximisation of S at fixed (e, t~).
/// Boundary points return the extremal graphon directly (boundary = true).
/// Errors: Infeasible; NoConvergedStart when no start converges.
OptimumReport maximize_entropy(double e, double t_tilde, const MaximizeConfig& config = {});

}  // namespace graphon_lab::opt
