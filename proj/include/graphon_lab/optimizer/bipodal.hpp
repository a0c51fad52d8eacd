#pragma once

#include <Eigen/Dense>

#include "graphon_lab/core/step_graphon.hpp"

namespace graphon_lab::opt {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Closed-form densities, entropy and their derivatives with respect to
/// (a, b, c, d) for a bipodal graphon.
struct BipodalFunctionals {
  double e = 0.0;
  double t = 0.0;
  double S = 0.0;
  double d1 = 0.0;  // degree on [0, c)
  double d2 = 0.0;  // degree on [c, 1]
  Vec4 grad_e = Vec4::Zero();
  Vec4 grad_t = Vec4::Zero();
  Vec4 grad_S = Vec4::Zero();

  double t_tilde() const { return t - e * e; }
};

BipodalFunctionals bipodal_functionals(const core::BipodalParams& p);

struct BipodalHessians {
  Mat4 e = Mat4::Zero();
  Mat4 t = Mat4::Zero();
  Mat4 S = Mat4::Zero();
};

/// Second derivatives. Requires a, b, d strictly inside (0,1) for the entropy.
BipodalHessians bipodal_hessians(const core::BipodalParams& p);

/// Gradients of the two pode degrees d1, d2.
struct DegreeGradients {
  Vec4 d1 = Vec4::Zero();
  Vec4 d2 = Vec4::Zero();
  Mat4 d1_hess = Mat4::Zero();
  Mat4 d2_hess = Mat4::Zero();
};
DegreeGradients bipodal_degree_gradients(const core::BipodalParams& p);

inline Vec4 to_vec(const core::BipodalParams& p) { return {p.a, p.b, p.c, p.d}; }
inline core::BipodalParams from_vec(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }

}  // namespace graphon_lab::opt
