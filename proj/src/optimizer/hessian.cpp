#include "graphon_lab/optimizer/hessian.hpp"

#include <algorithm>
#include <cmath>

#include "graphon_lab/errors.hpp"
#include "graphon_lab/optimizer/bipodal.hpp"

namespace graphon_lab::opt {

double TangentSpectrum::max() const {
  return eigenvalues.empty() ? 0.0 : *std::max_element(eigenvalues.begin(), eigenvalues.end());
}

namespace {

constexpr double kRankTolerance = 1e-10;
constexpr double kFiberTolerance = 1e-8;

using Mat24 = Eigen::Matrix<double, 2, 4>;

double rank_ratio(const Mat24& J) {
  Eigen::JacobiSVD<Mat24> svd(J);
  const auto& s = svd.singularValues();
  return s(0) > 0.0 ? s(1) / s(0) : 0.0;
}

}  // namespace

TangentSpectrum constrained_hessian(const core::BipodalParams& p, double e, double t_tilde) {
  p.validate();
  const BipodalFunctionals f = bipodal_functionals(p);
  if (std::abs(f.e - e) > kFiberTolerance || std::abs(f.t_tilde() - t_tilde) > kFiberTolerance)
    throw Error(ErrorCode::InvalidInput, "constrained_hessian: parameters do not satisfy the constraints");
  const BipodalHessians h = bipodal_hessians(p);

  TangentSpectrum out;
  Mat24 J;
  J.row(0) = f.grad_e.transpose();
  J.row(1) = f.grad_t.transpose();
  Mat4 lagrangian;
  if (rank_ratio(J) > kRankTolerance) {
    const Eigen::Vector2d lam = J.transpose().colPivHouseholderQr().solve(f.grad_S);
    out.alpha = lam(0);
    out.beta = lam(1);
    lagrangian = h.S - out.alpha * h.e - out.beta * h.t;
  } else if (f.t_tilde() <= 1e-12) {
    // grad t = 2e grad e on the ER curve; the fiber is {d1 = d2 = e}.
    const DegreeGradients g = bipodal_degree_gradients(p);
    J.row(0) = g.d1.transpose();
    J.row(1) = g.d2.transpose();
    if (rank_ratio(J) <= kRankTolerance)
      throw Error(ErrorCode::DegeneratePoint, "degree constraints are degenerate at this point");
    const Eigen::Vector2d lam = J.transpose().colPivHouseholderQr().solve(f.grad_S);
    lagrangian = h.S - lam(0) * g.d1_hess - lam(1) * g.d2_hess;
    out.degree_constraints = true;
    out.alpha = lam(0);
    out.beta = lam(1);
  } else {
    throw Error(ErrorCode::DegeneratePoint, "constraint Jacobian [grad e; grad t] is rank deficient");
  }
  if (!lagrangian.allFinite())
    throw Error(ErrorCode::DegeneratePoint, "Hessian is not finite (graphon values at 0 or 1)");

  Eigen::JacobiSVD<Mat24> svd(J, Eigen::ComputeFullV);
  Eigen::Matrix<double, 4, Eigen::Dynamic> Z = svd.matrixV().rightCols<2>();

  // Constant graphon: moving the cut changes nothing.
  if (std::abs(p.a - p.d) <= 1e-12 && std::abs(p.b - p.d) <= 1e-12) {
    const Eigen::Vector2d u = Z.transpose() * Vec4(0.0, 0.0, 1.0, 0.0);
    if (u.norm() > 1e-8) {
      const Eigen::Vector2d w(-u(1), u(0));
      Z = Z * (w / w.norm());
      out.gauge_directions = 1;
    }
  }
  const Eigen::MatrixXd reduced = Z.transpose() * lagrangian * Z;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (reduced + reduced.transpose()));
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) out.eigenvalues.push_back(eig.eigenvalues()(i));
  return out;
}

}  // namespace graphon_lab::opt
