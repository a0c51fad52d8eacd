#include "graphon_lab/bifurcation.hpp"

#include <cmath>
#include <cstdint>

#include <boost/math/tools/toms748_solve.hpp>

#include "graphon_lab/core/entropy.hpp"
#include "graphon_lab/core/functionals.hpp"
#include "graphon_lab/errors.hpp"
#include "graphon_lab/feasible_region.hpp"
#include "graphon_lab/optimizer/hessian.hpp"

namespace graphon_lab::bifurcation {

core::BipodalParams family_params(const SymmetricFamilyPoint& pt) {
  if (!(std::abs(pt.delta) < 0.5))
    throw Error(ErrorCode::InfeasibleAnsatz, "family_params: |delta| must be below 1/2");
  const double c = 0.5 + pt.delta;
  const double r = (1.0 - c) / c;  // v on the first pode is sqrt(r), on the second -1/sqrt(r)
  const double sr = std::sqrt(r);
  const core::BipodalParams p{0.5 + 2.0 * pt.mu * sr + pt.nu * pt.delta * r,
                              0.5 - 2.0 * pt.mu / sr + pt.nu * pt.delta / r, c,
                              0.5 + pt.mu * (sr - 1.0 / sr) - pt.nu * pt.delta};
  for (double v : {p.a, p.b, p.d})
    if (!(v >= 0.0 && v <= 1.0))
      throw Error(ErrorCode::InfeasibleAnsatz, "family_params: perturbed value leaves [0,1]");
  return p;
}

double nu_opt_simplified(double mu) {
  if (!(8.0 * mu * mu < 1.0)) throw Error(ErrorCode::Domain, "nu_opt: requires 8 mu^2 < 1");
  return 32.0 * mu * mu * mu / (1.0 - 8.0 * mu * mu);
}

double nu_opt(double mu) {
  if (!(8.0 * mu * mu < 1.0)) throw Error(ErrorCode::Domain, "nu_opt: requires 8 mu^2 < 1");
  if (std::abs(mu) >= 0.25) return nu_opt_simplified(mu);
  const double h_mu = core::entropy_H_second(0.5 + 2.0 * mu);
  const double h_half = core::entropy_H_second(0.5);
  return 4.0 * mu * (h_mu - h_half) / (h_mu + h_half);
}

double delta_s_ratio(double mu) {
  if (!(mu >= 0.0 && mu <= kMuLimit))
    throw Error(ErrorCode::Domain, "delta_s_ratio: mu must lie in [0, 0.2499]");
  const double m2 = mu * mu;
  return mu * (std::log1p(4.0 * mu) - std::log1p(-4.0 * mu)) - 0.5 * std::log1p(-16.0 * m2) -
         16.0 * m2 / (1.0 - 8.0 * m2);
}

CriticalPoint find_critical(double tolerance) {
  if (!(tolerance >= 1e-14)) throw Error(ErrorCode::InvalidInput, "find_critical: tolerance must be >= 1e-14");
  constexpr double lo = 0.1, hi = 0.24;
  const double f_lo = delta_s_ratio(lo), f_hi = delta_s_ratio(hi);
  if (!(f_lo < 0.0 && f_hi > 0.0))
    throw Error(ErrorCode::BracketFailure, "find_critical: delta_s_ratio does not change sign on (0.1, 0.24)");
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      delta_s_ratio, lo, hi, f_lo, f_hi, [tolerance](double x, double y) { return std::abs(y - x) <= tolerance; },
      iters);
  CriticalPoint cp;
  cp.bracket_lo = a;
  cp.bracket_hi = b;
  cp.mu_star = 0.5 * (a + b);
  cp.t_tilde_star = cp.mu_star * cp.mu_star;
  cp.residual = std::abs(delta_s_ratio(cp.mu_star));
  cp.iterations = static_cast<int>(iters);
  return cp;
}

double second_variation_numeric(double mu, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidInput, "second_variation_numeric: delta must be positive");
  const double nu = nu_opt(mu);
  auto S = [&](double dl) { return core::entropy_S(family_params({mu, dl, nu}).to_graphon()); };
  return (S(delta) + S(-delta) - 2.0 * S(0.0)) / (2.0 * delta * delta);
}

const char* to_string(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::LocalMax: return "LocalMax";
    case StabilityVerdict::NotLocalMax: return "NotLocalMax";
    case StabilityVerdict::Nonexistent: return "Nonexistent";
  }
  return "Nonexistent";
}

StabilityReport stability(double t_tilde) {
  if (!(t_tilde >= 0.0)) throw Error(ErrorCode::Domain, "stability: t~ must be nonnegative");
  StabilityReport rep;
  rep.t_tilde = t_tilde;
  rep.mu = std::sqrt(t_tilde);
  if (t_tilde > region::kSymmetricFamilyMax) return rep;
  if (rep.mu <= kMuLimit) rep.delta_s_ratio = delta_s_ratio(rep.mu);

  const core::BipodalParams p = region::symmetric_graphon(t_tilde);
  try {
    const opt::TangentSpectrum ts = opt::constrained_hessian(p, 0.5, t_tilde);
    rep.eigenvalues = ts.eigenvalues;
    rep.gauge_directions = ts.gauge_directions;
  } catch (const Error& err) {
    // a = 1, b = 0 at t~ = 1/16: H'' is infinite and so is the entropy loss.
    if (err.code() != ErrorCode::DegeneratePoint) throw;
    rep.verdict = StabilityVerdict::NotLocalMax;
    return rep;
  }
  const double top = rep.eigenvalues.empty() ? 0.0 : rep.eigenvalues.back();
  const double decider = std::abs(top) > 1e-10 ? top : rep.delta_s_ratio;
  rep.verdict = decider > 0.0 ? StabilityVerdict::NotLocalMax : StabilityVerdict::LocalMax;
  return rep;
}

}  // namespace graphon_lab::bifurcation
