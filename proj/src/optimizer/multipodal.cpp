#include "graphon_lab/optimizer/multipodal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphon_lab/core/entropy.hpp"
#include "graphon_lab/errors.hpp"

namespace graphon_lab::opt {

core::StepGraphon MultipodalState::to_graphon() const {
  return core::StepGraphon::from_measures(masses, values);
}

namespace {

using Eigen::Index;
constexpr double kValueFloor = 1e-9;
constexpr double kMassFloor = 1e-9;

void normalise(std::vector<double>& m) {
  const double total = std::accumulate(m.begin(), m.end(), 0.0);
  for (double& x : m) x /= total;
}

struct Eval {
  double e = 0.0, t = 0.0, S = 0.0;
  Eigen::VectorXd deg;
  // Gradients with respect to the masses and to each value g_ij (i <= j,
  // counted once, so the off-diagonal weight is 2 pi_i pi_j).
  Eigen::VectorXd de_dm, dt_dm, dS_dm;
  Eigen::MatrixXd de_dg, dt_dg, dS_dg;
};

Eval evaluate(const std::vector<double>& m, const Eigen::MatrixXd& g) {
  const auto n = static_cast<Index>(m.size());
  const Eigen::Map<const Eigen::VectorXd> pi(m.data(), n);
  Eval r;
  r.deg = g * pi;
  r.e = pi.dot(r.deg);
  r.t = pi.dot(r.deg.cwiseAbs2());
  Eigen::MatrixXd h(n, n), hp(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      h(i, j) = core::entropy_H(g(i, j));
      hp(i, j) = core::entropy_H_prime(g(i, j));
    }
  r.S = pi.dot(h * pi);
  r.de_dm = 2.0 * r.deg;
  r.dt_dm = r.deg.cwiseAbs2() + 2.0 * g * (pi.array() * r.deg.array()).matrix();
  r.dS_dm = 2.0 * h * pi;
  r.de_dg.setZero(n, n);
  r.dt_dg.setZero(n, n);
  r.dS_dg.setZero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      const double w = (i == j ? 1.0 : 2.0) * pi(i) * pi(j);
      r.de_dg(i, j) = w;
      r.dt_dg(i, j) = w * (r.deg(i) + r.deg(j));
      r.dS_dg(i, j) = w * hp(i, j);
    }
  return r;
}

// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double acc = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    acc += u[k];
    const double cand = (acc - 1.0) / static_cast<double>(k + 1);
    if (u[k] - cand > 0.0) theta = cand;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
}

void symmetrise_upper(Eigen::MatrixXd& g) {
  for (Index i = 0; i < g.rows(); ++i)
    for (Index j = 0; j < i; ++j) g(i, j) = g(j, i);
}

// Damped Gauss-Newton over values and masses with box and simplex bounds.
// Coordinates on a bound whose steepest-descent direction points outward are
// frozen for the step.
double restore(MultipodalState& s, double e0, double t0) {
  const auto n = static_cast<Index>(s.size());
  const Index p = n * (n + 1) / 2;
  auto residual = [&](const MultipodalState& x) {
    const Eval ev = evaluate(x.masses, x.values);
    return Eigen::Vector2d(ev.e - e0, ev.t - t0);
  };
  Eigen::Vector2d c = residual(s);
  for (int it = 0; it < 100 && c.cwiseAbs().maxCoeff() > 1e-14; ++it) {
    const Eval ev = evaluate(s.masses, s.values);
    Eigen::MatrixXd J(2, p + n);
    Index k = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j, ++k) {
        J(0, k) = ev.de_dg(i, j);
        J(1, k) = ev.dt_dg(i, j);
      }
    // Mass moves are kept on the hyperplane sum = 1.
    for (Index r = 0; r < 2; ++r) {
      const Eigen::VectorXd row = r == 0 ? ev.de_dm : ev.dt_dm;
      J.block(r, p, 1, n) = (row.array() - row.mean()).matrix().transpose();
    }
    const Eigen::VectorXd descent = -J.transpose() * c;
    k = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j, ++k) {
        const double g = s.values(i, j);
        if ((g <= kValueFloor && descent(k) < 0.0) || (g >= 1.0 - kValueFloor && descent(k) > 0.0)) J.col(k).setZero();
      }
    for (Index i = 0; i < n; ++i, ++k)
      if (s.masses[std::size_t(i)] <= kMassFloor && descent(k) < 0.0) J.col(k).setZero();
    const Eigen::VectorXd dx = J.completeOrthogonalDecomposition().solve(Eigen::Vector2d(-c));
    bool improved = false;
    for (double tau = 1.0; tau > 1e-8; tau *= 0.5) {
      MultipodalState x = s;
      k = 0;
      for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j, ++k)
          x.values(i, j) = std::clamp(s.values(i, j) + tau * dx(k), kValueFloor, 1.0 - kValueFloor);
      symmetrise_upper(x.values);
      for (Index i = 0; i < n; ++i, ++k)
        x.masses[std::size_t(i)] = std::max(s.masses[std::size_t(i)] + tau * dx(k), kMassFloor);
      normalise(x.masses);
      const Eigen::Vector2d cn = residual(x);
      if (cn.norm() < (1.0 - 1e-4 * tau) * c.norm()) {
        s = std::move(x);
        c = cn;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return c.cwiseAbs().maxCoeff();
}

}  // namespace

MultipodalState collapse(const MultipodalState& s, double merge_tolerance, double min_mass) {
  const std::size_t n = s.size();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (s.masses[i] >= min_mass) keep.push_back(i);
  if (keep.empty()) throw Error(ErrorCode::InvalidInput, "collapse: every pode is below the mass floor");

  // Union-find over the kept podes, comparing full rows.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = a + 1; b < keep.size(); ++b) {
      const auto i = static_cast<Index>(keep[a]), j = static_cast<Index>(keep[b]);
      double diff = 0.0;
      for (std::size_t c : keep) diff = std::max(diff, std::abs(s.values(i, Index(c)) - s.values(j, Index(c))));
      if (diff <= merge_tolerance) parent[root(keep[b])] = root(keep[a]);
    }

  std::vector<std::size_t> group_of(n, n), reps;
  for (std::size_t i : keep) {
    const std::size_t r = root(i);
    auto it = std::find(reps.begin(), reps.end(), r);
    group_of[i] = static_cast<std::size_t>(it - reps.begin());
    if (it == reps.end()) reps.push_back(r);
  }
  const std::size_t m = reps.size();
  double kept_mass = 0.0;
  for (std::size_t i : keep) kept_mass += s.masses[i];

  MultipodalState out;
  out.masses.assign(m, 0.0);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(Index(m), Index(m));
  for (std::size_t i : keep) {
    out.masses[group_of[i]] += s.masses[i];
    for (std::size_t j : keep)
      sum(Index(group_of[i]), Index(group_of[j])) += s.masses[i] * s.masses[j] * s.values(Index(i), Index(j));
  }
  out.values.resize(Index(m), Index(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      out.values(Index(a), Index(b)) = sum(Index(a), Index(b)) / (out.masses[a] * out.masses[b]);
  for (double& x : out.masses) x /= kept_mass;
  return out;
}

MultipodalResult multipodal_ascent(double e, double t_tilde, const MultipodalState& init,
                                   const MultipodalOptions& opts) {
  const auto n = static_cast<Index>(init.size());
  if (n < 1 || init.values.rows() != n || init.values.cols() != n)
    throw Error(ErrorCode::InvalidInput, "multipodal_ascent: masses and values disagree in size");

  MultipodalState s = init;
  project_simplex(s.masses);
  for (double& x : s.masses) x = std::max(x, kMassFloor);
  normalise(s.masses);
  s.values = s.values.cwiseMax(kValueFloor).cwiseMin(1.0 - kValueFloor);
  symmetrise_upper(s.values);

  const double t0 = t_tilde + e * e;
  double residual = restore(s, e, t0);
  if (residual > opts.constraint_tolerance) {
    // Walk the target in from the start's own densities.
    MultipodalState walk = init;
    project_simplex(walk.masses);
    for (double& x : walk.masses) x = std::max(x, kMassFloor);
    normalise(walk.masses);
    walk.values = walk.values.cwiseMax(kValueFloor).cwiseMin(1.0 - kValueFloor);
    symmetrise_upper(walk.values);
    const Eval start = evaluate(walk.masses, walk.values);
    constexpr int kStages = 32;
    for (int k = 1; k <= kStages; ++k) {
      const double f = static_cast<double>(k) / kStages;
      restore(walk, start.e + f * (e - start.e), start.t + f * (t0 - start.t));
    }
    const double walked = restore(walk, e, t0);
    if (walked < residual) {
      s = std::move(walk);
      residual = walked;
    }
  }
  double step = 0.05;
  const Index p = n * (n + 1) / 2;
  for (int it = 0; it < opts.max_iterations && residual <= opts.constraint_tolerance; ++it) {
    const Eval ev = evaluate(s.masses, s.values);
    // Gradient in the metric that weights g_ij by its block mass, so the value
    // part of grad S is H'(g). Projected onto the tangent space of e, t and
    // sum(masses) = 1.
    const Index dim = p + n;
    Eigen::VectorXd grad(dim), metric(dim);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(3, dim);
    Index k = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j, ++k) {
        const bool free = s.values(i, j) > kValueFloor && s.values(i, j) < 1.0 - kValueFloor;
        metric(k) = free ? 1.0 / ev.de_dg(i, j) : 0.0;
        grad(k) = ev.dS_dg(i, j);
        J(0, k) = ev.de_dg(i, j);
        J(1, k) = ev.dt_dg(i, j);
      }
    for (Index i = 0; i < n; ++i, ++k) {
      metric(k) = s.masses[std::size_t(i)] > kMassFloor ? 1.0 : 0.0;
      grad(k) = ev.dS_dm(i);
      J(0, k) = ev.de_dm(i);
      J(1, k) = ev.dt_dm(i);
      J(2, k) = 1.0;
    }
    const Eigen::MatrixXd JM = J * metric.asDiagonal();
    const Eigen::Vector3d lam = (JM * J.transpose()).completeOrthogonalDecomposition().solve(JM * grad);
    const Eigen::VectorXd dir = metric.asDiagonal() * (grad - J.transpose() * lam);
    const double slope = grad.dot(dir);
    if (!(slope > 1e-14)) break;
    const double scale = dir.cwiseAbs().maxCoeff();

    bool moved = false;
    double trial = std::min(2.0 * step, 0.1);
    for (int h = 0; h < 40; ++h, trial *= 0.5) {
      const double tau = trial / scale;
      MultipodalState next = s;
      k = 0;
      for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j, ++k)
          next.values(i, j) = std::clamp(s.values(i, j) + tau * dir(k), kValueFloor, 1.0 - kValueFloor);
      symmetrise_upper(next.values);
      for (Index i = 0; i < n; ++i, ++k)
        next.masses[std::size_t(i)] = std::max(s.masses[std::size_t(i)] + tau * dir(k), kMassFloor);
      normalise(next.masses);
      if (restore(next, e, t0) > opts.constraint_tolerance) continue;
      if (evaluate(next.masses, next.values).S >= ev.S + 1e-4 * tau * slope) {
        s = std::move(next);
        step = trial;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  MultipodalResult out;
  out.constraint_residual = restore(s, e, t0);
  out.state = s;
  const Eval ev = evaluate(s.masses, s.values);
  out.entropy = ev.S;
  {
    const Index p = n * (n + 1) / 2;
    Eigen::MatrixXd G(p, 2);
    Eigen::VectorXd rhs(p);
    Index k = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j, ++k) {
        G(k, 0) = ev.de_dg(i, j);
        G(k, 1) = ev.dt_dg(i, j);
        rhs(k) = ev.dS_dg(i, j);
      }
    const Eigen::Vector2d lam = G.colPivHouseholderQr().solve(rhs);
    out.alpha = lam(0);
    out.beta = lam(1);
  }
  out.collapsed = collapse(s, opts.merge_tolerance, opts.min_mass);
  if (out.collapsed.size() == 1) {
    const double v = out.collapsed.values(0, 0);
    out.bipodal = core::BipodalParams{v, v, 0.5, v};
  } else if (out.collapsed.size() == 2) {
    const auto& v = out.collapsed.values;
    out.bipodal = core::BipodalParams{v(0, 0), v(1, 1), out.collapsed.masses[0], v(0, 1)};
  }
  return out;
}

}  // namespace graphon_lab::opt
