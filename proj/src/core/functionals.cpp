#include "graphon_lab/core/functionals.hpp"

#include <cmath>
#include <string>

#include "graphon_lab/core/entropy.hpp"
#include "graphon_lab/errors.hpp"

namespace graphon_lab::core {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

}  // namespace

double entropy_S(const StepGraphon& g) {
  const auto pi = g.measures();
  double s = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i)
    for (std::size_t j = 0; j < pi.size(); ++j) s += pi[i] * pi[j] * entropy_H(g.value(i, j));
  return s;
}

StepFunction degree_function(const StepGraphon& g) {
  const auto pi = g.measures();
  StepFunction d{g.partition(), std::vector<double>(pi.size(), 0.0)};
  for (std::size_t i = 0; i < pi.size(); ++i)
    for (std::size_t j = 0; j < pi.size(); ++j) d.values[i] += pi[j] * g.value(i, j);
  return d;
}

double edge_density(const StepGraphon& g) { return degree_function(g).mean(); }

DensityPoint twostar_density(const StepGraphon& g) {
  const StepFunction d = degree_function(g);
  const double e = d.mean();
  double t = 0.0;
  double tt = 0.0;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    const double pi = d.partition.measure(i);
    t += pi * d.values[i] * d.values[i];
    tt += pi * (d.values[i] - e) * (d.values[i] - e);
  }
  return {e, t, tt};
}

double subgraph_density(const StepGraphon& g, const SubgraphPattern& pattern) {
  const int m = pattern.vertices();
  if (m > kMaxPatternVertices)
    throw Error(ErrorCode::CostGuard, "pattern has " + std::to_string(m) + " vertices; limit is " +
                                          std::to_string(kMaxPatternVertices));
  const auto pi = g.measures();
  const std::size_t p = pi.size();
  std::vector<std::size_t> phi(static_cast<std::size_t>(m), 0);
  double total = 0.0;
  // Odometer over all p^m assignments of pattern vertices to podes.
  while (true) {
    double term = 1.0;
    for (std::size_t v : phi) term *= pi[v];
    for (auto [s, f] : pattern.edges())
      term *= g.value(phi[static_cast<std::size_t>(s - 1)], phi[static_cast<std::size_t>(f - 1)]);
    total += term;
    std::size_t k = 0;
    while (k < phi.size() && ++phi[k] == p) phi[k++] = 0;
    if (k == phi.size()) break;
  }
  return total;
}

StepGraphon complement(const StepGraphon& g) {
  Eigen::MatrixXd v = (1.0 - g.values().array()).matrix();
  return StepGraphon::create(g.cuts(), v);
}

Moments moments(const StepGraphon& g, int kmax) {
  if (kmax < 1) throw Error(ErrorCode::Domain, "moments: kmax must be >= 1");
  const auto pi = g.measures();
  const StepFunction d = degree_function(g);
  Moments out{std::vector<double>(static_cast<std::size_t>(kmax), 0.0),
              std::vector<double>(static_cast<std::size_t>(kmax), 0.0)};
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const double x = d.values[i] - 0.5;
    double p = 1.0;
    for (int k = 0; k < kmax; ++k) {
      p *= x;
      out.nu[static_cast<std::size_t>(k)] += pi[i] * p;
    }
    for (std::size_t j = 0; j < pi.size(); ++j) {
      const double y2 = (g.value(i, j) - 0.5) * (g.value(i, j) - 0.5);
      double q = 1.0;
      for (int k = 0; k < kmax; ++k) {
        q *= y2;
        out.mu[static_cast<std::size_t>(k)] += pi[i] * pi[j] * q;
      }
    }
  }
  return out;
}

double entropy_via_series(const StepGraphon& g, int kmax) {
  if (kmax < 0) throw Error(ErrorCode::Domain, "entropy_via_series: kmax must be >= 0");
  for (Index i = 0; i < g.values().rows(); ++i)
    for (Index j = 0; j < g.values().cols(); ++j) {
      const double u = g.values()(i, j);
      if (u < kSeriesMargin || u > 1.0 - kSeriesMargin)
        throw Error(ErrorCode::Divergence,
                    "entropy series needs values inside [margin, 1-margin]; got " + std::to_string(u));
    }
  const auto pi = g.measures();
  // term_k = H^(2k)(1/2)/(2k)! * mu_2k = -iint (2g-1)^(2k) / (4k(2k-1)).
  double s = entropy_series_coefficient(0);
  for (std::size_t i = 0; i < pi.size(); ++i)
    for (std::size_t j = 0; j < pi.size(); ++j) {
      const double w = pi[i] * pi[j];
      const double x2 = (2.0 * g.value(i, j) - 1.0) * (2.0 * g.value(i, j) - 1.0);
      double power = 1.0;
      double acc = 0.0;
      for (int k = 1; k <= kmax; ++k) {
        power *= x2;
        acc += power / (4.0 * k * (2.0 * k - 1.0));
      }
      s -= w * acc;
    }
  return s;
}

Decomposition decompose(const StepGraphon& g) {
  StepFunction d = degree_function(g);
  const double e = d.mean();
  const std::size_t m = g.size();
  StepKernel residual{g.partition(), Eigen::MatrixXd(idx(m), idx(m))};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      residual.values(idx(i), idx(j)) = g.value(i, j) - d.values[i] - d.values[j] + e;
  return {std::move(d), std::move(residual), e};
}

}  // namespace graphon_lab::core
