#pragma once

#include <span>

#include "graphon_lab/core/step_graphon.hpp"
#include "graphon_lab/optimizer/report.hpp"

namespace graphon_lab::opt {

inline constexpr double kPhaseThreshold = 0.1;

/// Nearest of the three reference shapes if its distance is within the
/// threshold, else Other.
Phase classify(const core::StepGraphon& g, double threshold = kPhaseThreshold);

/// L1 distance between the decreasing rearrangements of two step functions
/// given as (value, mass) lists.
double rearrangement_l1(std::span<const double> values1, std::span<const double> masses1,
                        std::span<const double> values2, std::span<const double> masses2);

/// Podes reordered by decreasing degree (stable).
core::StepGraphon sort_by_degree(const core::StepGraphon& g);

}  // namespace graphon_lab::opt
