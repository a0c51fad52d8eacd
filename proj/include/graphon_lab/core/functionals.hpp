#pragma once

#include <vector>

#include "graphon_lab/core/step_graphon.hpp"

namespace graphon_lab::core {

/// S(g) = sum_ij pi_i pi_j H(g_ij).
double entropy_S(const StepGraphon& g);

/// d_i = sum_j pi_j g_ij on the graphon's own partition.
StepFunction degree_function(const StepGraphon& g);

double edge_density(const StepGraphon& g);

/// e, t = int d(x)^2 dx and t~ = int (d(x) - e)^2 dx. The reduced density
/// is accumulated directly as a variance so it is never negative.
DensityPoint twostar_density(const StepGraphon& g);

/// Largest pattern accepted by subgraph_density.
inline constexpr int kMaxPatternVertices = 10;

/// Homomorphism density of the pattern: exact sum over all assignments of
/// pattern vertices to podes. Throws CostGuard above kMaxPatternVertices.
double subgraph_density(const StepGraphon& g, const SubgraphPattern& pattern);

/// The graphon 1 - g.
StepGraphon complement(const StepGraphon& g);

struct Moments {
  std::vector<double> nu;  // nu[k-1] = int (d(x) - 1/2)^k,          k = 1..kmax
  std::vector<double> mu;  // mu[k-1] = iint (g - 1/2)^(2k),          k = 1..kmax
};

Moments moments(const StepGraphon& g, int kmax);

/// Minimum distance of every graphon value from {0,1} required by the series.
inline constexpr double kSeriesMargin = 1e-3;

/// Entropy from the even-moment expansion of H around 1/2, truncated after
/// the mu_(2 kmax) term. Throws Divergence when a value is within
/// kSeriesMargin of 0 or 1.
double entropy_via_series(const StepGraphon& g, int kmax);

Decomposition decompose(const StepGraphon& g);

}  // namespace graphon_lab::core
