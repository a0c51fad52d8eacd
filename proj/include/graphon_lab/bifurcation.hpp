#pragma once

#include <vector>

#include "graphon_lab/core/step_graphon.hpp"

namespace graphon_lab::bifurcation {

/// Perturbation of the symmetric e = 1/2 bipodal graphon: pode size
/// c = 1/2 + delta and g = 1/2 + mu (v(x) + v(y)) + nu delta v(x) v(y), where
/// v = sqrt((1-c)/c) on [0,c) and -sqrt(c/(1-c)) on [c,1].
struct SymmetricFamilyPoint {
  double mu = 0.0;
  double delta = 0.0;
  double nu = 0.0;
};

/// Exact parameters of the family member. Throws InfeasibleAnsatz when a
/// value leaves [0,1] or |delta| >= 1/2.
core::BipodalParams family_params(const SymmetricFamilyPoint& pt);

/// Entropy-optimal nu, 4 mu (H''(1/2 + 2mu) - H''(1/2)) / (H''(1/2 + 2mu) + H''(1/2)).
/// Falls back to the simplified form for 1/4 <= |mu|. Domain error at 8 mu^2 >= 1.
double nu_opt(double mu);
/// 32 mu^3 / (1 - 8 mu^2).
double nu_opt_simplified(double mu);

/// Largest mu accepted by delta_s_ratio.
inline constexpr double kMuLimit = 0.2499;

/// Leading coefficient of S(delta) - S(0) in delta^2 at nu = nu_opt(mu):
///   mu ln(1+4mu) - mu ln(1-4mu) - 1/2 ln(1-16mu^2) - 16mu^2/(1-8mu^2).
/// Domain error outside [0, kMuLimit].
double delta_s_ratio(double mu);

struct CriticalPoint {
  double mu_star = 0.0;
  double t_tilde_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;  // |delta_s_ratio(mu_star)|
  int iterations = 0;
};

/// Root of delta_s_ratio on (0.1, 0.24), bracketed to width <= tolerance.
/// InvalidInput for tolerance < 1e-14, BracketFailure if the ends agree in sign.
CriticalPoint find_critical(double tolerance = 1e-12);

/// [S(mu, delta) + S(mu, -delta) - 2 S(mu, 0)] / (2 delta^2) with the exact
/// entropy, nu = nu_opt(mu).
double second_variation_numeric(double mu, double delta);

enum class StabilityVerdict { LocalMax, NotLocalMax, Nonexistent };
const char* to_string(StabilityVerdict v);

struct StabilityReport {
  double t_tilde = 0.0;
  double mu = 0.0;
  StabilityVerdict verdict = StabilityVerdict::Nonexistent;
  std::vector<double> eigenvalues;  // tangent spectrum, empty if undefined
  int gauge_directions = 0;
  double delta_s_ratio = 0.0;       // 0 when mu is outside its domain
};

/// Second-order status of symmetric_graphon(t~) among bipodal graphons with
/// the same (e, t~). Decided by the largest tangent eigenvalue; when that is
/// within 1e-10 of 0 the sign of delta_s_ratio decides. Nonexistent above 1/16.
StabilityReport stability(double t_tilde);

}  // namespace graphon_lab::bifurcation
