#pragma once

#include <vector>

#include "graphon_lab/core/step_graphon.hpp"

namespace graphon_lab::stationarity {

/// Lagrange multipliers of the constrained problem, normalised so that
/// dS = alpha de + beta dt along every admissible variation.
struct LagrangeState {
  double alpha = 0.0;
  double beta = 0.0;

  /// Coefficients (A, B) of the equivalent logistic form
  /// g = 1 / (1 + exp(-(A + B (d(x) + d(y))))). Because H carries a factor
  /// 1/2, A = -2 alpha and B = -2 beta. The ratio alpha / beta is shared.
  double logistic_alpha() const { return -2.0 * alpha; }
  double logistic_beta() const { return -2.0 * beta; }
  double ratio() const { return alpha / beta; }
};

/// Arguments beyond this magnitude saturate the logistic to exactly 0 or 1.
inline constexpr double kSaturation = 700.0;

/// 1 / (1 + exp(-x)) with saturation.
double logistic(double x);

/// Solution of the pointwise Euler-Lagrange equation
/// H'(g(x,y)) = alpha + beta (d(x) + d(y)) on the partition of d.
core::StepGraphon lagrange_graphon(const core::StepFunction& d, const LagrangeState& ls);

/// k(z) = sum_j pi_j g(z, d_j): the degree a point of degree z would have
/// under the Euler-Lagrange graphon built from d.
double consistency_map(double z, const core::StepFunction& d, const LagrangeState& ls);

struct FixedPointOptions {
  int grid_points = 2001;
  double tolerance = 1e-12;
  double dedup = 1e-9;
};

/// All roots of k(z) - z in [0,1], by sign-change scan plus bisection.
std::vector<double> fixed_points(const core::StepFunction& d, const LagrangeState& ls,
                                 const FixedPointOptions& opts = {});

struct StationarityResidual {
  double graphon = 0.0;  // sup |g - lagrange_graphon(d(g), ls)|
  double degree = 0.0;   // sup |d - k(d)|
  double max() const { return graphon > degree ? graphon : degree; }
};

StationarityResidual stationarity_residual(const core::StepGraphon& g, const LagrangeState& ls);

}  // namespace graphon_lab::stationarity
