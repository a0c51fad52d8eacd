#pragma once

#include "graphon_lab/core/step_graphon.hpp"

namespace graphon_lab::region {

/// Distance to the boundary below which a point counts as on the boundary.
inline constexpr double kBoundaryTolerance = 1e-12;

/// Largest achievable 2-star density at edge density e: e^(3/2) for e >= 1/2
/// (clique), (1-e)^(3/2) + 2e - 1 below (anti-clique).
double t_max(double e);
double t_tilde_max(double e);

enum class Verdict { Interior, Boundary, Infeasible };
const char* to_string(Verdict v);

struct RegionQuery {
  double e = 0.0;
  double t_tilde = 0.0;
  Verdict verdict = Verdict::Infeasible;
  /// min(t~, t~_max(e) - t~); negative outside the region.
  double margin = 0.0;
};

RegionQuery classify_point(double e, double t_tilde);

/// 1 on [0, sqrt(e)]^2 and 0 elsewhere.
core::StepGraphon clique_graphon(double e);
/// complement(clique_graphon(1 - e)).
core::StepGraphon anticlique_graphon(double e);
core::StepGraphon er_graphon(double p);

/// Small-zeta bipodal ansatz with degrees exactly 1/2 -/+ zeta,
/// zeta = sqrt(t~ + (e - 1/2)^2). Swapped so that c <= 1/2 when c > 1/2;
/// a c within kBoundaryTolerance of {0,1} collapses to the constant graphon,
/// returned as (e, e, 0, e).
core::BipodalParams ansatz_graphon(double e, double t_tilde);

/// Symmetric e = 1/2 family: a = 1/2 + 2 mu, b = 1/2 - 2 mu, c = d = 1/2, mu = sqrt(t~).
/// Exists only for t~ <= 1/16.
core::BipodalParams symmetric_graphon(double t_tilde);

inline constexpr double kSymmetricFamilyMax = 0.0625;

}  // namespace graphon_lab::region
