#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphon_lab/core/step_graphon.hpp"
#include "graphon_lab/stationarity.hpp"

namespace graphon_lab::opt {

enum class PhaseLabel { CliqueLike, AntiCliqueLike, Symmetric, Other };
const char* to_string(PhaseLabel p);

struct Phase {
  PhaseLabel label = PhaseLabel::Other;
  /// L1 distance of the decreasing rearrangement of the degree function to
  /// the clique profile (sqrt(e) on mass sqrt(e), 0 elsewhere).
  double clique_distance = 0.0;
  /// Same against the anti-clique profile (1 - sqrt(1-e) on mass sqrt(1-e), 1 elsewhere).
  double anticlique_distance = 0.0;
  /// L1 graphon distance to the symmetric e = 1/2 bipodal graphon with mu = sqrt(t~)
  /// after sorting podes by degree; +inf when that graphon does not exist.
  double symmetric_distance = 0.0;
};

struct OptimumReport {
  core::DensityPoint target;
  core::StepGraphon graphon = core::StepGraphon::constant(0.0);
  std::optional<core::BipodalParams> params;  // canonical, when bipodal
  std::optional<stationarity::LagrangeState> lagrange;
  double entropy = 0.0;
  core::DensityPoint densities;
  Phase classification;
  stationarity::StationarityResidual residuals;
  double kkt_residual = 0.0;
  bool converged = false;
  bool boundary = false;  // extremal graphon returned directly
  int iterations = 0;
  std::vector<double> tangent_eigenvalues;
  bool local_max = false;

  // Multistart diagnostics.
  int starts_tried = 0;
  int starts_converged = 0;
  int local_maxima = 0;
  int multistart_cluster_count = 0;
  std::vector<core::BipodalParams> cluster_representatives;

  // Multipodal probe.
  int multipodal_runs = 0;
  int multipodal_collapsed = 0;
  /// Best multipodal entropy minus the reported entropy (<= 0 when bipodal wins).
  double multipodal_gap = 0.0;
};

}  // namespace graphon_lab::opt
