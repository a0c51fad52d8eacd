#include "graphon_lab/feasible_region.hpp"

#include <cmath>
#include <string>

#include "graphon_lab/core/functionals.hpp"
#include "graphon_lab/errors.hpp"

namespace graphon_lab::region {

namespace {

void require_density(double e, const char* what) {
  if (!(e >= 0.0 && e <= 1.0))
    throw Error(ErrorCode::Domain, std::string(what) + ": edge density " + std::to_string(e) +
                                       " outside [0,1]");
}

}  // namespace

double t_max(double e) {
  require_density(e, "t_max");
  if (e >= 0.5) return e * std::sqrt(e);
  const double f = 1.0 - e;
  return f * std::sqrt(f) + 2.0 * e - 1.0;
}

double t_tilde_max(double e) { return t_max(e) - e * e; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Interior: return "Interior";
    case Verdict::Boundary: return "Boundary";
    case Verdict::Infeasible: return "Infeasible";
  }
  return "Infeasible";
}

RegionQuery classify_point(double e, double t_tilde) {
  RegionQuery q{e, t_tilde, Verdict::Infeasible, -1.0};
  if (!(e >= 0.0 && e <= 1.0) || !std::isfinite(t_tilde)) return q;
  const double top = t_tilde_max(e);
  q.margin = std::min(t_tilde, top - t_tilde);
  if (std::abs(t_tilde) <= kBoundaryTolerance || std::abs(t_tilde - top) <= kBoundaryTolerance)
    q.verdict = Verdict::Boundary;
  else if (t_tilde > 0.0 && t_tilde < top)
    q.verdict = Verdict::Interior;
  return q;
}

core::StepGraphon clique_graphon(double e) {
  if (!(e > 0.0 && e <= 1.0)) throw Error(ErrorCode::Domain, "clique_graphon: e must be in (0,1]");
  Eigen::Matrix2d v;
  v << 1.0, 0.0, 0.0, 0.0;
  return core::StepGraphon::create({std::sqrt(e)}, v);
}

core::StepGraphon anticlique_graphon(double e) {
  if (!(e >= 0.0 && e < 1.0)) throw Error(ErrorCode::Domain, "anticlique_graphon: e must be in [0,1)");
  return core::complement(clique_graphon(1.0 - e));
}

core::StepGraphon er_graphon(double p) {
  require_density(p, "er_graphon");
  return core::StepGraphon::constant(p);
}

core::BipodalParams ansatz_graphon(double e, double t_tilde) {
  require_density(e, "ansatz_graphon");
  if (t_tilde < 0.0 || t_tilde > t_tilde_max(e) + kBoundaryTolerance)
    throw Error(ErrorCode::Infeasible, "ansatz_graphon: (e, t~) outside the feasible region");
  const double zeta = std::sqrt(t_tilde + (e - 0.5) * (e - 0.5));
  if (zeta == 0.0) throw Error(ErrorCode::SingularPoint, "ansatz is singular at (1/2, 0)");
  core::BipodalParams p{1.0 - e - 2.0 * zeta, 1.0 - e + 2.0 * zeta, 0.5 * (1.0 - (e - 0.5) / zeta),
                        1.0 - e};
  if (p.c <= kBoundaryTolerance || p.c >= 1.0 - kBoundaryTolerance) {
    if (p.c < -kBoundaryTolerance || p.c > 1.0 + kBoundaryTolerance)
      throw Error(ErrorCode::InfeasibleAnsatz, "ansatz pode size outside [0,1]");
    return {e, e, 0.0, e};
  }
  if (p.a < 0.0 || p.a > 1.0 || p.b < 0.0 || p.b > 1.0)
    throw Error(ErrorCode::InfeasibleAnsatz,
                "ansatz values leave [0,1]; the ansatz only exists for small zeta");
  return p.c > 0.5 ? p.swapped() : p;
}

core::BipodalParams symmetric_graphon(double t_tilde) {
  if (!(t_tilde >= 0.0)) throw Error(ErrorCode::Domain, "symmetric_graphon: t~ must be >= 0");
  if (t_tilde > kSymmetricFamilyMax)
    throw Error(ErrorCode::Nonexistent, "symmetric bipodal graphon does not exist for t~ > 1/16");
  const double mu = std::sqrt(t_tilde);
  return {std::min(1.0, 0.5 + 2.0 * mu), std::max(0.0, 0.5 - 2.0 * mu), 0.5, 0.5};
}

}  // namespace graphon_lab::region
