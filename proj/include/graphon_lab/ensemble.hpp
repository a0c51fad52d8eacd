#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "graphon_lab/core/step_graphon.hpp"

namespace graphon_lab::ensemble {

/// Simple undirected graph, upper triangle packed row-major into 64-bit words:
/// pair (i, j), i < j, has bit index i n - i (i + 1) / 2 + (j - i - 1).
class AdjacencyGraph {
 public:
  explicit AdjacencyGraph(int n = 0);
  /// Graph whose pair bits are the low C(n,2) bits of code (n <= 11).
  static AdjacencyGraph from_code(int n, std::uint64_t code);
  static AdjacencyGraph complete(int n);

  int n() const { return n_; }
  std::size_t pairs() const { return static_cast<std::size_t>(n_) * (n_ - 1) / 2; }
  bool has_edge(int i, int j) const;
  void set_edge(int i, int j, bool on);
  void flip(int i, int j) { set_edge(i, j, !has_edge(i, j)); }
  std::size_t edge_count() const;
  std::vector<int> degrees() const;
  /// Low word of the packing; requires C(n,2) <= 64.
  std::uint64_t code() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  AdjacencyGraph complement() const;
  /// Vertex v of this graph becomes vertex position[v].
  AdjacencyGraph relabeled(const std::vector<int>& position) const;

  friend bool operator==(const AdjacencyGraph&, const AdjacencyGraph&) = default;

 private:
  std::size_t bit(int i, int j) const;
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// n equal podes; the value on block (i, j) is the adjacency entry, 0 on the diagonal.
core::StepGraphon checkerboard(const AdjacencyGraph& g);

/// Homomorphism densities: e = 2|E| / n^2, t = sum deg^2 / n^3.
core::DensityPoint graph_densities(const AdjacencyGraph& g);

/// Open window |e - e0| < delta, |t - t0| < delta.
struct DensityWindow {
  double e0 = 0.0;
  double t0 = 0.0;
  double delta = 0.0;

  DensityWindow() = default;
  DensityWindow(double e0, double t0, double delta);
  bool contains(double e, double t) const;
  /// Exact test for a graph on n vertices with the given edge count and
  /// degree-square sum, without rounding of 2E/n^2 or S/n^3.
  bool contains_counts(int n, std::uint64_t edges, std::uint64_t degree_square_sum) const;
};

/// Labeled-graph counts on n vertices binned by (edge count, sum of squared degrees).
struct DensityHistogram {
  int n = 0;
  std::uint64_t max_square_sum = 0;
  std::vector<std::uint64_t> counts;  // index edges * (max_square_sum + 1) + square_sum

  std::uint64_t at(std::uint64_t edges, std::uint64_t square_sum) const {
    return counts[edges * (max_square_sum + 1) + square_sum];
  }
  std::uint64_t total() const;
  std::uint64_t count_in(const DensityWindow& w) const;
};

inline constexpr int kMaxExhaustiveN = 7;
inline constexpr int kMaxGatedN = 8;

/// Exhaustive pass over all 2^C(n,2) labeled graphs, split across threads.
/// n = 8 requires allow_n8; larger n is refused with CostGuard.
DensityHistogram density_histogram(int n, bool allow_n8 = false);

enum class Method { Exhaustive, MCMC };
const char* to_string(Method m);

struct GraphCensusRow {
  int n = 0;
  DensityWindow window;
  Method method = Method::Exhaustive;
  /// Exact count Z; absent for sampled rows.
  std::optional<std::uint64_t> count;
  /// ln(Z) / n^2 when Z >= 1.
  std::optional<double> boltzmann;
  std::optional<double> typicality;
  double typicality_eps = 0.0;
  // Sampled rows only.
  std::uint64_t steps = 0;
  std::uint64_t distinct_visited = 0;
  double acceptance_rate = 0.0;
  std::string disclaimer;
};

std::vector<GraphCensusRow> enumerate_census(int n, const std::vector<DensityWindow>& windows,
                                             bool allow_n8 = false);

/// Codes of all labeled graphs in the window, ascending (n <= 8 with the same gating).
std::vector<std::uint64_t> window_members(int n, const DensityWindow& w, bool allow_n8 = false);

struct BoltzmannPoint {
  int n = 0;
  std::uint64_t count = 0;
  std::optional<double> boltzmann;
};

std::vector<BoltzmannPoint> boltzmann_trend(const std::vector<int>& n_list, const DensityWindow& w,
                                            bool allow_n8 = false);

/// Metropolis chain on the graphs inside a window. Each step proposes, with
/// equal probability, a single pair flip or an edge move (a uniform edge is
/// removed and a uniform non-edge added). Both proposals are symmetric, so
/// the chain is uniform on its communicating class; moves leaving the window
/// are rejected.
class WindowChain {
 public:
  /// Seeds from G(n, e0) rejection, then a greedy repair; NoSeedGraph if both fail.
  WindowChain(int n, const DensityWindow& w, std::uint64_t seed);
  WindowChain(const AdjacencyGraph& start, const DensityWindow& w, std::uint64_t seed);

  bool step();
  const AdjacencyGraph& current() const { return g_; }
  std::uint64_t steps() const { return steps_; }
  std::uint64_t accepted() const { return accepted_; }

 private:
  bool inside() const;
  void flip_pair(int i, int j);

  AdjacencyGraph g_;
  DensityWindow w_;
  std::mt19937_64 rng_;
  std::vector<int> deg_;
  std::uint64_t edges_ = 0;
  std::uint64_t square_sum_ = 0;
  std::uint64_t steps_ = 0;
  std::uint64_t accepted_ = 0;
};

/// Runs the chain for `steps` steps and records the state every `thin` steps.
std::vector<AdjacencyGraph> mcmc_window_sampler(int n, const DensityWindow& w, std::uint64_t steps,
                                                std::uint64_t seed, std::uint64_t thin = 1);

/// Sampled census row: Z and B are left empty.
GraphCensusRow mcmc_census(int n, const DensityWindow& w, std::uint64_t steps, std::uint64_t seed);

struct CutNorm {
  double value = 0.0;
  bool exact = true;  // false: L1 upper bound
};

inline constexpr std::size_t kMaxCutNormParts = 24;

/// sup over S, T of |int_{S x T} k|, exact by enumerating the 2^m row
/// indicator patterns with the best column response. CostGuard above kMaxCutNormParts.
double cut_norm(const core::StepKernel& k);
/// Exact for m <= kMaxCutNormParts, else the L1 norm as an upper bound.
CutNorm cut_norm_or_bound(const core::StepKernel& k);

enum class DistanceMode { Exact, DegreeSort };

struct CutDistance {
  double value = 0.0;
  /// True when the value is only an upper bound on the relabeling minimum.
  bool upper_bound = false;
};

inline constexpr int kMaxExactDistanceN = 8;

/// min over vertex relabelings of cut_norm(checkerboard(g) - target) (Exact,
/// n <= 8), or the single relabeling that pairs high-degree vertices with
/// high target-degree positions (DegreeSort, flagged as a bound).
CutDistance cut_distance(const AdjacencyGraph& g, const core::StepGraphon& target, DistanceMode mode);

/// Isomorphism-invariant code: minimum over relabelings compatible with a
/// colour refinement by degrees. Requires C(n,2) <= 64.
std::uint64_t canonical_code(const AdjacencyGraph& g);

struct TypicalityResult {
  double fraction = 0.0;
  std::uint64_t within = 0;
  std::uint64_t total = 0;
  Method method = Method::Exhaustive;
  DistanceMode distance = DistanceMode::Exact;
  std::uint64_t classes = 0;  // distinct isomorphism classes evaluated
};

struct TypicalityOptions {
  Method method = Method::Exhaustive;
  std::uint64_t mcmc_steps = 100000;
  std::uint64_t mcmc_thin = 100;
  std::uint64_t seed = 1;
  bool allow_n8 = false;
};

/// Fraction of window graphs within eps of target in cut distance (Exact for
/// n <= 8, DegreeSort beyond). Empty window: InvalidInput.
TypicalityResult typicality_fraction(int n, const DensityWindow& w, const core::StepGraphon& target, double eps,
                                     const TypicalityOptions& opts = {});

}  // namespace graphon_lab::ensemble
