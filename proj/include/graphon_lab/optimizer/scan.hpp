#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphon_lab/feasible_region.hpp"
#include "graphon_lab/optimizer/maximize.hpp"

namespace graphon_lab::opt {

/// Inclusive linear grid; a single step yields just `min`.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
  double at(int i) const;
};

struct PhaseDiagramRow {
  int t_index = 0;
  int e_index = 0;
  double e = 0.0;
  double t_tilde = 0.0;
  region::Verdict verdict = region::Verdict::Infeasible;
  bool solved = false;
  std::string error;  // ErrorCode name when the cell failed
  double entropy = 0.0;
  PhaseLabel phase = PhaseLabel::Other;
  std::optional<core::BipodalParams> params;
  int clusters = 0;
  /// Set on a cell whose d parameter differs from the previous e-cell of the
  /// same row by more than the jump threshold.
  bool jump = false;
  /// Parameter distance to the previous solved e-cell, minimised over the
  /// pode swap; NaN when either side has no bipodal parameters.
  double param_change = 0.0;
};

inline constexpr double kJumpThreshold = 0.1;

/// Rows are ordered t-major: all e for the first t, then the next t.
/// Cell k uses the master seed mixed with k. Errors are recorded per row.
std::vector<PhaseDiagramRow> scan(const Axis& e_axis, const Axis& t_axis, const MaximizeConfig& config = {});

}  // namespace graphon_lab::opt
