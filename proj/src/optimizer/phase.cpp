#include "graphon_lab/optimizer/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "graphon_lab/core/functionals.hpp"
#include "graphon_lab/feasible_region.hpp"

namespace graphon_lab::opt {

const char* to_string(PhaseLabel p) {
  switch (p) {
    case PhaseLabel::CliqueLike: return "CliqueLike";
    case PhaseLabel::AntiCliqueLike: return "AntiCliqueLike";
    case PhaseLabel::Symmetric: return "Symmetric";
    case PhaseLabel::Other: return "Other";
  }
  return "Other";
}

namespace {

struct Piece {
  double value;
  double mass;
};

std::vector<Piece> sorted_pieces(std::span<const double> values, std::span<const double> masses) {
  std::vector<Piece> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (masses[i] > 0.0) out.push_back({values[i], masses[i]});
  std::stable_sort(out.begin(), out.end(), [](const Piece& x, const Piece& y) { return x.value > y.value; });
  return out;
}

}  // namespace

double rearrangement_l1(std::span<const double> values1, std::span<const double> masses1,
                        std::span<const double> values2, std::span<const double> masses2) {
  const auto p = sorted_pieces(values1, masses1);
  const auto q = sorted_pieces(values2, masses2);
  double total = 0.0;
  std::size_t i = 0, j = 0;
  double left_p = p.empty() ? 0.0 : p[0].mass;
  double left_q = q.empty() ? 0.0 : q[0].mass;
  while (i < p.size() && j < q.size()) {
    const double step = std::min(left_p, left_q);
    total += step * std::abs(p[i].value - q[j].value);
    left_p -= step;
    left_q -= step;
    if (left_p <= 1e-15 && ++i < p.size()) left_p = p[i].mass;
    if (left_q <= 1e-15 && ++j < q.size()) left_q = q[j].mass;
  }
  return total;
}

core::StepGraphon sort_by_degree(const core::StepGraphon& g) {
  const core::StepFunction d = core::degree_function(g);
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d.values[x] > d.values[y]; });
  std::vector<double> masses(g.size());
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd v(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    masses[static_cast<std::size_t>(i)] = g.measure(order[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j)
      v(i, j) = g.value(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  return core::StepGraphon::from_measures(masses, v);
}

Phase classify(const core::StepGraphon& g, double threshold) {
  const core::StepFunction d = core::degree_function(g);
  const core::DensityPoint dp = core::twostar_density(g);
  const double e = std::clamp(dp.e, 0.0, 1.0);
  const auto masses = d.partition.measures();
  Phase ph;

  const double s = std::sqrt(e);
  const double clique_vals[] = {s, 0.0};
  const double clique_mass[] = {s, 1.0 - s};
  ph.clique_distance = rearrangement_l1(d.values, masses, clique_vals, clique_mass);

  const double r = std::sqrt(1.0 - e);
  const double anti_vals[] = {1.0, 1.0 - r};
  const double anti_mass[] = {1.0 - r, r};
  ph.anticlique_distance = rearrangement_l1(d.values, masses, anti_vals, anti_mass);

  if (dp.t_tilde <= region::kSymmetricFamilyMax) {
    const core::StepGraphon sym = region::symmetric_graphon(std::max(dp.t_tilde, 0.0)).to_graphon();
    const auto [x, y] = core::refine_common(sort_by_degree(g), sym);
    core::StepKernel diff{x.partition(), x.values() - y.values()};
    ph.symmetric_distance = diff.l1_norm();
  } else {
    ph.symmetric_distance = std::numeric_limits<double>::infinity();
  }

  const double best = std::min({ph.clique_distance, ph.anticlique_distance, ph.symmetric_distance});
  if (best > threshold)
    ph.label = PhaseLabel::Other;
  else if (best == ph.symmetric_distance)
    ph.label = PhaseLabel::Symmetric;
  else if (best == ph.clique_distance)
    ph.label = PhaseLabel::CliqueLike;
  else
    ph.label = PhaseLabel::AntiCliqueLike;
  return ph;
}

}  // namespace graphon_lab::opt
