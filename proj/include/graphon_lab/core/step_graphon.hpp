#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace graphon_lab::core {

/// Breakpoints closer than this are fused when partitions are built or merged.
inline constexpr double kCutTolerance = 1e-14;

/// Ordered partition of [0,1] into podes, stored as interior breakpoints.
/// Pode measures are derived from the cuts so they always sum to one.
class Partition {
 public:
  Partition() = default;  // single pode [0,1]

  /// Cuts must be nondecreasing and inside [0,1]; throws InvalidInput otherwise.
  /// Zero-measure podes are not allowed here; use StepGraphon::create to drop them.
  explicit Partition(std::vector<double> cuts);

  std::size_t size() const { return cuts_.size() + 1; }
  const std::vector<double>& cuts() const { return cuts_; }
  double left(std::size_t i) const { return i == 0 ? 0.0 : cuts_[i - 1]; }
  double right(std::size_t i) const { return i == cuts_.size() ? 1.0 : cuts_[i]; }
  double measure(std::size_t i) const { return right(i) - left(i); }
  std::vector<double> measures() const;

  /// Index of the pode containing x (right-continuous at cuts).
  std::size_t locate(double x) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<double> cuts_;
};

/// Step function on [0,1], constant on each pode.
struct StepFunction {
  Partition partition;
  std::vector<double> values;

  double mean() const;
  double evaluate(double x) const { return values[partition.locate(x)]; }
};

/// Symmetric step kernel with arbitrary real values (differences of graphons,
/// the residual of the degree decomposition).
struct StepKernel {
  Partition partition;
  Eigen::MatrixXd values;

  std::size_t size() const { return partition.size(); }
  /// Weighted row sums sum_j pi_j k_ij.
  Eigen::VectorXd marginals() const;
  double l1_norm() const;
  double l2_norm() const;
  double max_abs() const;
};

/// A multipodal graphon: symmetric step function on [0,1]^2 with values in [0,1].
class StepGraphon {
 public:
  /// Builds a graphon from nondecreasing cuts in [0,1] and an m x m symmetric
  /// value matrix, m = cuts.size() + 1. Podes narrower than kCutTolerance are
  /// dropped together with their row and column.
  static StepGraphon create(std::vector<double> cuts, Eigen::MatrixXd values);

  /// Constant graphon p on a single pode.
  static StepGraphon constant(double p);

  /// Builds from pode measures (zero measures dropped) instead of cuts.
  static StepGraphon from_measures(std::span<const double> measures,
                                   const Eigen::MatrixXd& values);

  const Partition& partition() const { return partition_; }
  const std::vector<double>& cuts() const { return partition_.cuts(); }
  const Eigen::MatrixXd& values() const { return values_; }
  std::size_t size() const { return partition_.size(); }
  double measure(std::size_t i) const { return partition_.measure(i); }
  std::vector<double> measures() const { return partition_.measures(); }
  double value(std::size_t i, std::size_t j) const { return values_(i, j); }
  double evaluate(double x, double y) const;

  StepKernel as_kernel() const { return {partition_, values_}; }

  friend bool operator==(const StepGraphon& a, const StepGraphon& b) {
    return a.partition_ == b.partition_ && a.values_ == b.values_;
  }

 private:
  StepGraphon(Partition partition, Eigen::MatrixXd values)
      : partition_(std::move(partition)), values_(std::move(values)) {}

  Partition partition_;
  Eigen::MatrixXd values_;
};

/// Bipodal graphon: a on [0,c)^2, b on [c,1]^2, d off the diagonal blocks.
struct BipodalParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  /// Throws InvalidInput unless all four lie in [0,1].
  void validate() const;
  StepGraphon to_graphon() const;

  /// Same graphon with the podes swapped: (b, a, 1-c, d).
  BipodalParams swapped() const { return {b, a, 1.0 - c, d}; }
  /// Canonical representative: c <= 1/2, ties at c == 1/2 broken by a >= b.
  BipodalParams canonical() const;
  /// Parameters of the complement graphon 1 - g.
  BipodalParams complement() const { return {1.0 - a, 1.0 - b, c, 1.0 - d}; }

  double distance(const BipodalParams& other) const;

  friend bool operator==(const BipodalParams&, const BipodalParams&) = default;
};

/// Edge density, 2-star density and the reduced density t - e^2.
struct DensityPoint {
  double e = 0.0;
  double t = 0.0;
  double t_tilde = 0.0;

  static DensityPoint from_e_t(double e, double t) { return {e, t, t - e * e}; }
  static DensityPoint from_e_ttilde(double e, double tt) { return {e, tt + e * e, tt}; }
};

/// Simple undirected pattern graph on vertices 1..m.
class SubgraphPattern {
 public:
  /// Throws InvalidInput on out-of-range endpoints, loops or duplicate edges.
  SubgraphPattern(int vertices, std::vector<std::pair<int, int>> edges);

  static SubgraphPattern edge() { return SubgraphPattern(2, {{1, 2}}); }
  static SubgraphPattern two_star() { return SubgraphPattern(3, {{1, 2}, {1, 3}}); }
  static SubgraphPattern triangle() { return SubgraphPattern(3, {{1, 2}, {2, 3}, {1, 3}}); }

  int vertices() const { return vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int vertices_;
  std::vector<std::pair<int, int>> edges_;
};

/// g(x,y) = d(x) + d(y) - e + residual(x,y) with residual having zero marginals.
struct Decomposition {
  StepFunction degree;
  StepKernel residual;
  double e = 0.0;

  /// L2 norm of the residual (eta).
  double eta() const { return residual.l2_norm(); }
};

/// Merges two partitions; breakpoints within kCutTolerance are fused.
Partition merge_partitions(const Partition& a, const Partition& b);

/// Re-expresses a graphon / kernel / step function on a finer partition.
/// The target partition must refine the source one.
StepGraphon refine_to(const StepGraphon& g, const Partition& target);
StepKernel refine_to(const StepKernel& k, const Partition& target);
StepFunction refine_to(const StepFunction& f, const Partition& target);

/// Both graphons on their merged partition.
std::pair<StepGraphon, StepGraphon> refine_common(const StepGraphon& g1, const StepGraphon& g2);

}  // namespace graphon_lab::core
