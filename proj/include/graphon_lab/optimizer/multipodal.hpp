#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "graphon_lab/core/step_graphon.hpp"

namespace graphon_lab::opt {

/// A step graphon held as free pode masses and a symmetric value matrix.
struct MultipodalState {
  std::vector<double> masses;
  Eigen::MatrixXd values;

  std::size_t size() const { return masses.size(); }
  core::StepGraphon to_graphon() const;
};

struct MultipodalOptions {
  int max_iterations = 4000;
  double constraint_tolerance = 1e-10;
  /// Podes whose rows differ by at most this (sup norm) are merged.
  double merge_tolerance = 0.02;
  /// Podes lighter than this are dropped.
  double min_mass = 1e-3;
};

struct MultipodalResult {
  MultipodalState state;
  double entropy = 0.0;
  /// max(|e - e0|, |t - t0|) after the final constraint restoration.
  double constraint_residual = 0.0;
  /// Least-squares multipliers of grad S = alpha grad e + beta grad t over the values.
  double alpha = 0.0;
  double beta = 0.0;
  MultipodalState collapsed;
  /// The collapsed state as bipodal parameters when it has at most two podes.
  std::optional<core::BipodalParams> bipodal;
};

/// Feasible projected-gradient ascent of S over m-podal graphons with e = e0,
/// t~ = t~0 and masses on the simplex. Every step moves along the tangent
/// space and is pulled back onto the constraints by Gauss-Newton on the
/// values; the final state is collapsed over equal and empty podes.
MultipodalResult multipodal_ascent(double e, double t_tilde, const MultipodalState& init,
                                   const MultipodalOptions& opts = {});

/// Drops light podes and merges podes with matching rows. Merging averages
/// blocks with mass weights, so e is preserved exactly.
MultipodalState collapse(const MultipodalState& s, double merge_tolerance, double min_mass);

}  // namespace graphon_lab::opt
