#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "graphon_lab/core/functionals.hpp"
#include "graphon_lab/ensemble.hpp"
#include "graphon_lab/errors.hpp"

namespace graphon_lab::ensemble {

namespace {

using Eigen::Index;

// Same as cut_norm but on raw weights B_ij = pi_i pi_j k_ij.
double cut_norm_weights(const Eigen::MatrixXd& B) {
  const Index m = B.rows();
  if (m == 0) return 0.0;
  Eigen::VectorXd col = Eigen::VectorXd::Zero(m);
  std::uint64_t rows = 0;  // current row set as a bitmask
  double best = 0.0;
  const std::uint64_t patterns = std::uint64_t{1} << m;
  for (std::uint64_t k = 0; k < patterns; ++k) {
    if (k > 0) {
      // Gray code: exactly one row enters or leaves.
      const int i = std::countr_zero(k);
      const std::uint64_t mask = std::uint64_t{1} << i;
      rows ^= mask;
      if ((k & 1023) == 0) {
        col.setZero();
        for (Index r = 0; r < m; ++r)
          if (rows >> r & 1U) col += B.row(r).transpose();
      } else if (rows & mask) {
        col += B.row(i).transpose();
      } else {
        col -= B.row(i).transpose();
      }
    }
    double pos = 0.0, neg = 0.0;
    for (Index j = 0; j < m; ++j) (col(j) > 0.0 ? pos : neg) += col(j);
    best = std::max({best, pos, -neg});
  }
  return best;
}


}  // namespace

double cut_norm(const core::StepKernel& k) {
  if (k.partition.size() > kMaxCutNormParts)
    throw Error(ErrorCode::CostGuard, "cut_norm: more than 24 parts; use the L1 bound");
  const auto ms = k.partition.measures();
  const Eigen::Map<const Eigen::VectorXd> pi(ms.data(), static_cast<Index>(ms.size()));
  return cut_norm_weights(pi.asDiagonal() * k.values * pi.asDiagonal());
}

CutNorm cut_norm_or_bound(const core::StepKernel& k) {
  if (k.partition.size() <= kMaxCutNormParts) return {cut_norm(k), true};
  return {k.l1_norm(), false};
}

namespace {

// Common refinement of the n position intervals and the target partition.
struct Refinement {
  std::vector<double> measures;
  std::vector<int> position;     // position interval containing part q
  std::vector<std::size_t> pode;  // target pode containing part q
};

Refinement refine(int n, const core::StepGraphon& target) {
  std::vector<double> cuts;
  for (int p = 1; p < n; ++p) cuts.push_back(static_cast<double>(p) / n);
  for (double c : target.cuts()) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> merged;
  for (double c : cuts)
    if (merged.empty() || c - merged.back() > core::kCutTolerance) merged.push_back(c);
  Refinement r;
  double left = 0.0;
  for (std::size_t q = 0; q <= merged.size(); ++q) {
    const double right = q < merged.size() ? merged[q] : 1.0;
    if (right - left <= core::kCutTolerance) continue;
    const double mid = 0.5 * (left + right);
    r.measures.push_back(right - left);
    r.position.push_back(std::min(static_cast<int>(mid * n), n - 1));
    r.pode.push_back(target.partition().locate(mid));
    left = right;
  }
  return r;
}

double relabeled_norm(const std::vector<std::vector<char>>& adj, const std::vector<int>& vertex_at,
                      const Refinement& r, const core::StepGraphon& target, bool exact_only) {
  const auto m = static_cast<Index>(r.measures.size());
  Eigen::MatrixXd B(m, m);
  for (Index q = 0; q < m; ++q)
    for (Index s = 0; s < m; ++s) {
      const int pq = r.position[std::size_t(q)], ps = r.position[std::size_t(s)];
      const double edge = pq != ps && adj[std::size_t(vertex_at[std::size_t(pq)])][std::size_t(vertex_at[std::size_t(ps)])] ? 1.0 : 0.0;
      const double k = edge - target.value(r.pode[std::size_t(q)], r.pode[std::size_t(s)]);
      B(q, s) = r.measures[std::size_t(q)] * r.measures[std::size_t(s)] * k;
    }
  if (static_cast<std::size_t>(m) <= kMaxCutNormParts) return cut_norm_weights(B);
  if (exact_only) throw Error(ErrorCode::CostGuard, "cut_distance: refinement exceeds 24 parts");
  return B.cwiseAbs().sum();
}

}  // namespace

CutDistance cut_distance(const AdjacencyGraph& g, const core::StepGraphon& target, DistanceMode mode) {
  const int n = g.n();
  if (n == 0) throw Error(ErrorCode::InvalidInput, "cut_distance: graph has no vertices");
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<char>> adj(un, std::vector<char>(un, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) adj[std::size_t(i)][std::size_t(j)] = g.has_edge(i, j) ? 1 : 0;
  const Refinement r = refine(n, target);

  if (mode == DistanceMode::DegreeSort) {
    // Target degree averaged over each position interval.
    const core::StepFunction td = core::degree_function(target);
    std::vector<double> pos_deg(un, 0.0);
    for (std::size_t q = 0; q < r.measures.size(); ++q)
      pos_deg[std::size_t(r.position[q])] += r.measures[q] * td.values[r.pode[q]];
    std::vector<int> positions(un), vertices(un);
    std::iota(positions.begin(), positions.end(), 0);
    std::iota(vertices.begin(), vertices.end(), 0);
    std::stable_sort(positions.begin(), positions.end(),
                     [&](int x, int y) { return pos_deg[std::size_t(x)] > pos_deg[std::size_t(y)]; });
    const std::vector<int> deg = g.degrees();
    std::stable_sort(vertices.begin(), vertices.end(),
                     [&](int x, int y) { return deg[std::size_t(x)] > deg[std::size_t(y)]; });
    std::vector<int> vertex_at(un);
    for (std::size_t k = 0; k < un; ++k) vertex_at[std::size_t(positions[k])] = vertices[k];
    return {relabeled_norm(adj, vertex_at, r, target, false), true};
  }

  if (n > kMaxExactDistanceN)
    throw Error(ErrorCode::CostGuard, "cut_distance: exact mode is limited to n <= 8");
  // Positions lying inside a single target pode are interchangeable; only the
  // assignment of vertices to these classes matters.
  const std::size_t pcount = target.size();
  std::vector<std::size_t> cls(un, pcount);
  for (std::size_t q = 0; q < r.measures.size(); ++q) {
    auto& c = cls[std::size_t(r.position[q])];
    if (c == pcount)
      c = r.pode[q];
    else if (c != r.pode[q])
      c = pcount + 1 + std::size_t(r.position[q]);
  }
  std::vector<std::vector<int>> slots(pcount + 1 + un);
  for (int p = 0; p < n; ++p) slots[cls[std::size_t(p)]].push_back(p);
  std::vector<std::size_t> assign = cls;  // class of vertex v
  std::sort(assign.begin(), assign.end());
  double best = HUGE_VAL;
  std::vector<int> vertex_at(un);
  std::vector<std::size_t> used(slots.size());
  do {
    std::fill(used.begin(), used.end(), 0);
    for (int v = 0; v < n; ++v) {
      const std::size_t c = assign[std::size_t(v)];
      vertex_at[std::size_t(slots[c][used[c]++])] = v;
    }
    best = std::min(best, relabeled_norm(adj, vertex_at, r, target, true));
  } while (best > 0.0 && std::next_permutation(assign.begin(), assign.end()));
  return {best, false};
}

}  // namespace graphon_lab::ensemble
