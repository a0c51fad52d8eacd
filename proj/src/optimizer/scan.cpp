#include "graphon_lab/optimizer/scan.hpp"

#include <cmath>
#include <limits>

#include "graphon_lab/errors.hpp"
#include "graphon_lab/parallel.hpp"

namespace graphon_lab::opt {

double Axis::at(int i) const {
  if (steps <= 1) return min;
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::vector<PhaseDiagramRow> scan(const Axis& e_axis, const Axis& t_axis, const MaximizeConfig& config) {
  if (e_axis.steps < 1 || t_axis.steps < 1)
    throw Error(ErrorCode::InvalidInput, "scan: grid needs at least one step per axis");
  const std::size_t ne = static_cast<std::size_t>(e_axis.steps);
  const std::size_t cells = ne * static_cast<std::size_t>(t_axis.steps);
  std::vector<PhaseDiagramRow> rows(cells);
  parallel_for(cells, [&](std::size_t k) {
    PhaseDiagramRow& row = rows[k];
    row.t_index = static_cast<int>(k / ne);
    row.e_index = static_cast<int>(k % ne);
    row.e = e_axis.at(row.e_index);
    row.t_tilde = t_axis.at(row.t_index);
    row.verdict = region::classify_point(row.e, row.t_tilde).verdict;
    if (row.verdict == region::Verdict::Infeasible) {
      row.error = std::string(to_string(ErrorCode::Infeasible));
      return;
    }
    MaximizeConfig cell = config;
    cell.seed = mix_seed(config.seed, k);
    try {
      const OptimumReport rep = maximize_entropy(row.e, row.t_tilde, cell);
      row.solved = true;
      row.entropy = rep.entropy;
      row.phase = rep.classification.label;
      row.params = rep.params;
      row.clusters = rep.multistart_cluster_count;
    } catch (const Error& err) {
      row.error = std::string(to_string(err.code()));
    }
  });

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < cells; ++k) {
    PhaseDiagramRow& row = rows[k];
    row.param_change = nan;
    if (row.e_index == 0) continue;
    const PhaseDiagramRow& prev = rows[k - 1];
    if (!row.params || !prev.params) continue;
    row.param_change = std::min(row.params->distance(*prev.params), row.params->distance(prev.params->swapped()));
    row.jump = std::abs(row.params->d - prev.params->d) > kJumpThreshold;
  }
  return rows;
}

}  // namespace graphon_lab::opt
