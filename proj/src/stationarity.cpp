#include "graphon_lab/stationarity.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "graphon_lab/core/functionals.hpp"
#include "graphon_lab/errors.hpp"

namespace graphon_lab::stationarity {

double logistic(double x) {
  if (x > kSaturation) return 1.0;
  if (x < -kSaturation) return 0.0;
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

namespace {

// g solving H'(g) = alpha + beta s, i.e. ln((1-g)/g) = 2 (alpha + beta s).
double el_value(double s, const LagrangeState& ls) { return logistic(-2.0 * (ls.alpha + ls.beta * s)); }

}  // namespace

core::StepGraphon lagrange_graphon(const core::StepFunction& d, const LagrangeState& ls) {
  const auto m = static_cast<Eigen::Index>(d.values.size());
  Eigen::MatrixXd v(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      v(i, j) = v(j, i) =
          el_value(d.values[static_cast<std::size_t>(i)] + d.values[static_cast<std::size_t>(j)], ls);
  return core::StepGraphon::create(d.partition.cuts(), v);
}

double consistency_map(double z, const core::StepFunction& d, const LagrangeState& ls) {
  double k = 0.0;
  for (std::size_t j = 0; j < d.values.size(); ++j) k += d.partition.measure(j) * el_value(z + d.values[j], ls);
  return k;
}

std::vector<double> fixed_points(const core::StepFunction& d, const LagrangeState& ls,
                                 const FixedPointOptions& opts) {
  const auto f = [&](double z) { return consistency_map(z, d, ls) - z; };
  const auto tol = [&](double lo, double hi) { return hi - lo <= opts.tolerance; };
  std::vector<double> roots;
  const auto add = [&](double r) {
    if (roots.empty() || r - roots.back() > opts.dedup) roots.push_back(r);
  };
  const int n = std::max(opts.grid_points, 2);
  double z0 = 0.0;
  double f0 = f(z0);
  if (f0 == 0.0) add(z0);
  for (int i = 1; i < n; ++i) {
    const double z1 = static_cast<double>(i) / (n - 1);
    const double f1 = f(z1);
    if (f1 == 0.0) {
      add(z1);
    } else if (f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
      const auto [lo, hi] = boost::math::tools::bisect(f, z0, z1, tol);
      add(0.5 * (lo + hi));
    }
    z0 = z1;
    f0 = f1;
  }
  // k maps into [0,1], so k(0) >= 0 and k(1) <= 1 and a root always exists.
  if (roots.empty()) throw Error(ErrorCode::BracketFailure, "k(z) = z has no root in [0,1]");
  return roots;
}

StationarityResidual stationarity_residual(const core::StepGraphon& g, const LagrangeState& ls) {
  const core::StepFunction d = core::degree_function(g);
  const core::StepGraphon el = lagrange_graphon(d, ls);
  StationarityResidual r;
  r.graphon = (g.values() - el.values()).cwiseAbs().maxCoeff();
  for (double di : d.values) r.degree = std::max(r.degree, std::abs(di - consistency_map(di, d, ls)));
  return r;
}

}  // namespace graphon_lab::stationarity
