#include "graphon_lab/optimizer/newton.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphon_lab/core/functionals.hpp"
#include "graphon_lab/errors.hpp"
#include "graphon_lab/feasible_region.hpp"
#include "graphon_lab/optimizer/hessian.hpp"
#include "graphon_lab/optimizer/phase.hpp"
#include "graphon_lab/stationarity.hpp"

namespace graphon_lab::opt {

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// logistic(35) = 1 - 6e-16 is still distinguishable from 1.
constexpr double kLogitClamp = 35.0;

double logit(double p) {
  p = std::clamp(p, 1e-15, 1.0 - 1e-15);
  return std::log(p) - std::log1p(-p);
}

core::BipodalParams params_of(const Vec6& x) {
  const auto sig = [](double v) { return stationarity::logistic(std::clamp(v, -kLogitClamp, kLogitClamp)); };
  return {sig(x(0)), sig(x(1)), sig(x(2)), sig(x(3))};
}

struct System {
  double e0;
  double t0;

  Vec6 residual(const Vec6& x) const {
    const core::BipodalParams p = params_of(x);
    const BipodalFunctionals f = bipodal_functionals(p);
    Vec6 r;
    r.head<4>() = f.grad_S - x(4) * f.grad_e - x(5) * f.grad_t;
    r(4) = f.e - e0;
    r(5) = f.t - t0;
    return r;
  }

  Mat6 jacobian(const Vec6& x) const {
    const core::BipodalParams p = params_of(x);
    const BipodalFunctionals f = bipodal_functionals(p);
    const BipodalHessians h = bipodal_hessians(p);
    const Vec4 v = to_vec(p);
    const Vec4 dp = v.array() * (1.0 - v.array());
    Mat6 J = Mat6::Zero();
    const Mat4 hl = h.S - x(4) * h.e - x(5) * h.t;
    J.topLeftCorner<4, 4>() = hl * dp.asDiagonal();
    J.block<4, 1>(0, 4) = -f.grad_e;
    J.block<4, 1>(0, 5) = -f.grad_t;
    J.block<1, 4>(4, 0) = (f.grad_e.array() * dp.array()).matrix().transpose();
    J.block<1, 4>(5, 0) = (f.grad_t.array() * dp.array()).matrix().transpose();
    return J;
  }
};

double sup_norm(const Vec6& r) { return r.allFinite() ? r.cwiseAbs().maxCoeff() : HUGE_VAL; }

}  // namespace

NewtonResult newton_bipodal(double e, double t_tilde, const core::BipodalParams& init,
                            const NewtonOptions& opts) {
  const System sys{e, t_tilde + e * e};
  Vec6 x;
  x << logit(init.a), logit(init.b), logit(init.c), logit(init.d), 0.0, 0.0;
  {
    // Least-squares multipliers at the starting point.
    const BipodalFunctionals f = bipodal_functionals(params_of(x));
    Eigen::Matrix<double, 4, 2> G;
    G.col(0) = f.grad_e;
    G.col(1) = f.grad_t;
    const Eigen::Vector2d lam = G.colPivHouseholderQr().solve(f.grad_S);
    if (lam.allFinite()) x.tail<2>() = lam;
  }

  NewtonResult out;
  Vec6 r = sys.residual(x);
  double norm = r.norm();
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (sup_norm(r) <= opts.tolerance) break;
    const Mat6 J = sys.jacobian(x);
    if (!J.allFinite()) {
      out.status = NewtonStatus::SingularJacobian;
      break;
    }
    Eigen::FullPivLU<Mat6> lu(J);
    if (!lu.isInvertible() || std::abs(lu.rcond()) < 1e-16) {
      out.status = NewtonStatus::SingularJacobian;
      break;
    }
    const Vec6 step = lu.solve(-r);
    double s = 1.0;
    bool accepted = false;
    for (int k = 0; k <= opts.max_backtracks; ++k) {
      const Vec6 trial = x + s * step;
      const Vec6 rt = sys.residual(trial);
      const double nt = rt.allFinite() ? rt.norm() : HUGE_VAL;
      if (nt < (1.0 - 1e-4 * s) * norm) {
        x = trial;
        r = rt;
        norm = nt;
        accepted = true;
        break;
      }
      s *= opts.backtrack_factor;
    }
    if (!accepted) {
      out.status = NewtonStatus::Stalled;
      break;
    }
  }
  out.iterations = it;
  out.params = params_of(x);
  out.lagrange = {x(4), x(5)};
  out.residual = sup_norm(r);
  if (out.residual <= opts.tolerance)
    out.status = NewtonStatus::Converged;
  else if (it == opts.max_iterations)
    out.status = NewtonStatus::MaxIterations;
  return out;
}

OptimumReport make_report(double e, double t_tilde, const NewtonResult& r) {
  OptimumReport rep;
  rep.target = core::DensityPoint::from_e_ttilde(e, t_tilde);
  rep.params = r.params.canonical();
  rep.graphon = r.params.to_graphon();
  rep.lagrange = r.lagrange;
  rep.entropy = core::entropy_S(rep.graphon);
  rep.densities = core::twostar_density(rep.graphon);
  rep.residuals = stationarity::stationarity_residual(rep.graphon, r.lagrange);
  rep.kkt_residual = r.residual;
  rep.converged = r.status == NewtonStatus::Converged;
  rep.iterations = r.iterations;
  rep.classification = classify(rep.graphon);
  try {
    const TangentSpectrum ts = constrained_hessian(r.params, rep.densities.e, rep.densities.t_tilde);
    rep.tangent_eigenvalues = ts.eigenvalues;
    rep.local_max = ts.max() <= 1e-9;
  } catch (const Error&) {
    rep.local_max = false;
  }
  return rep;
}

OptimumReport solve_bipodal(double e, double t_tilde, const core::BipodalParams& init,
                            const NewtonOptions& opts) {
  if (region::classify_point(e, t_tilde).verdict != region::Verdict::Interior)
    throw Error(ErrorCode::Infeasible, "solve_bipodal: (e, t~) is not an interior point of the region");
  init.validate();
  const NewtonResult r = newton_bipodal(e, t_tilde, init, opts);
  switch (r.status) {
    case NewtonStatus::Converged: break;
    case NewtonStatus::SingularJacobian:
      throw Error(ErrorCode::SingularJacobian,
                  "KKT Jacobian singular after " + std::to_string(r.iterations) +
                      " iterations, residual " + std::to_string(r.residual));
    case NewtonStatus::MaxIterations:
    case NewtonStatus::Stalled:
      throw Error(ErrorCode::MaxIterations,
                  "Newton did not converge after " + std::to_string(r.iterations) +
                      " iterations, residual " + std::to_string(r.residual));
  }
  OptimumReport rep = make_report(e, t_tilde, r);
  rep.starts_tried = rep.starts_converged = 1;
  rep.local_maxima = rep.local_max ? 1 : 0;
  rep.multistart_cluster_count = 1;
  rep.cluster_representatives = {*rep.params};
  return rep;
}

}  // namespace graphon_lab::opt
