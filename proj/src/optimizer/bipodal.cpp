#include "graphon_lab/optimizer/bipodal.hpp"

#include "graphon_lab/core/entropy.hpp"

namespace graphon_lab::opt {

namespace {
constexpr int A = 0, B = 1, C = 2, D = 3;
}

DegreeGradients bipodal_degree_gradients(const core::BipodalParams& p) {
  const double cb = 1.0 - p.c;
  DegreeGradients g;
  g.d1 << p.c, 0.0, p.a - p.d, cb;
  g.d2 << 0.0, cb, p.d - p.b, p.c;
  g.d1_hess(A, C) = g.d1_hess(C, A) = 1.0;
  g.d1_hess(D, C) = g.d1_hess(C, D) = -1.0;
  g.d2_hess(B, C) = g.d2_hess(C, B) = -1.0;
  g.d2_hess(D, C) = g.d2_hess(C, D) = 1.0;
  return g;
}

BipodalFunctionals bipodal_functionals(const core::BipodalParams& p) {
  using core::entropy_H;
  using core::entropy_H_prime;
  const double c = p.c;
  const double cb = 1.0 - c;
  BipodalFunctionals f;
  f.e = c * c * p.a + cb * cb * p.b + 2.0 * c * cb * p.d;
  f.d1 = c * p.a + cb * p.d;
  f.d2 = c * p.d + cb * p.b;
  f.t = c * f.d1 * f.d1 + cb * f.d2 * f.d2;
  const double Ha = entropy_H(p.a), Hb = entropy_H(p.b), Hd = entropy_H(p.d);
  f.S = c * c * Ha + cb * cb * Hb + 2.0 * c * cb * Hd;

  f.grad_e << c * c, cb * cb, 2.0 * c * p.a - 2.0 * cb * p.b + 2.0 * (1.0 - 2.0 * c) * p.d, 2.0 * c * cb;
  f.grad_S << c * c * entropy_H_prime(p.a), cb * cb * entropy_H_prime(p.b),
      2.0 * c * Ha - 2.0 * cb * Hb + 2.0 * (1.0 - 2.0 * c) * Hd, 2.0 * c * cb * entropy_H_prime(p.d);

  const DegreeGradients g = bipodal_degree_gradients(p);
  f.grad_t = 2.0 * c * f.d1 * g.d1 + 2.0 * cb * f.d2 * g.d2;
  f.grad_t(C) += f.d1 * f.d1 - f.d2 * f.d2;
  return f;
}

BipodalHessians bipodal_hessians(const core::BipodalParams& p) {
  using core::entropy_H;
  using core::entropy_H_prime;
  using core::entropy_H_second;
  const double c = p.c;
  const double cb = 1.0 - c;
  BipodalHessians h;

  h.e(A, C) = h.e(C, A) = 2.0 * c;
  h.e(B, C) = h.e(C, B) = -2.0 * cb;
  h.e(D, C) = h.e(C, D) = 2.0 * (1.0 - 2.0 * c);
  h.e(C, C) = 2.0 * p.a + 2.0 * p.b - 4.0 * p.d;

  h.S(A, A) = c * c * entropy_H_second(p.a);
  h.S(B, B) = cb * cb * entropy_H_second(p.b);
  h.S(D, D) = 2.0 * c * cb * entropy_H_second(p.d);
  h.S(A, C) = h.S(C, A) = 2.0 * c * entropy_H_prime(p.a);
  h.S(B, C) = h.S(C, B) = -2.0 * cb * entropy_H_prime(p.b);
  h.S(D, C) = h.S(C, D) = 2.0 * (1.0 - 2.0 * c) * entropy_H_prime(p.d);
  h.S(C, C) = 2.0 * entropy_H(p.a) + 2.0 * entropy_H(p.b) - 4.0 * entropy_H(p.d);

  const DegreeGradients g = bipodal_degree_gradients(p);
  const double d1 = c * p.a + cb * p.d;
  const double d2 = c * p.d + cb * p.b;
  const Vec4 cross = 2.0 * d1 * g.d1 - 2.0 * d2 * g.d2;
  Vec4 ec = Vec4::Zero();
  ec(C) = 1.0;
  h.t = ec * cross.transpose() + cross * ec.transpose() + 2.0 * c * g.d1 * g.d1.transpose() +
        2.0 * cb * g.d2 * g.d2.transpose() + 2.0 * c * d1 * g.d1_hess + 2.0 * cb * d2 * g.d2_hess;
  return h;
}

}  // namespace graphon_lab::opt
