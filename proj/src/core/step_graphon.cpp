#include "graphon_lab/core/step_graphon.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "graphon_lab/errors.hpp"

namespace graphon_lab::core {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); }

void check_symmetric_unit(const Eigen::MatrixXd& v) {
  if (v.rows() != v.cols()) invalid("graphon value matrix must be square");
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      const double x = v(i, j);
      if (!(x >= 0.0 && x <= 1.0)) invalid("graphon value outside [0,1]: " + std::to_string(x));
      if (x != v(j, i)) invalid("graphon value matrix is not symmetric");
    }
  }
}

}  // namespace

Partition::Partition(std::vector<double> cuts) : cuts_(std::move(cuts)) {
  double prev = 0.0;
  for (double c : cuts_) {
    if (!(c > prev) || !(c < 1.0)) invalid("partition cuts must be strictly increasing inside (0,1)");
    prev = c;
  }
}

std::vector<double> Partition::measures() const {
  std::vector<double> m(size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = measure(i);
  return m;
}

std::size_t Partition::locate(double x) const {
  return static_cast<std::size_t>(std::upper_bound(cuts_.begin(), cuts_.end(), x) - cuts_.begin());
}

double StepFunction::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += partition.measure(i) * values[i];
  return s;
}

Eigen::VectorXd StepKernel::marginals() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::VectorXd pi(n);
  for (Eigen::Index i = 0; i < n; ++i) pi(i) = partition.measure(static_cast<std::size_t>(i));
  return values * pi;
}

double StepKernel::l1_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      s += partition.measure(i) * partition.measure(j) *
           std::abs(values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  return s;
}

double StepKernel::l2_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) {
      const double v = values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      s += partition.measure(i) * partition.measure(j) * v * v;
    }
  return std::sqrt(s);
}

double StepKernel::max_abs() const { return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff(); }

StepGraphon StepGraphon::create(std::vector<double> cuts, Eigen::MatrixXd values) {
  const auto m = static_cast<Eigen::Index>(cuts.size() + 1);
  if (values.rows() != m || values.cols() != m)
    invalid("value matrix must be (cuts+1) x (cuts+1)");
  check_symmetric_unit(values);
  double prev = 0.0;
  for (double c : cuts) {
    if (!(c >= prev) || !(c <= 1.0)) invalid("cuts must be nondecreasing inside [0,1]");
    prev = c;
  }
  // Keep podes with positive measure.
  std::vector<Eigen::Index> keep;
  std::vector<double> kept_cuts;
  double left = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double right = i + 1 < m ? cuts[static_cast<std::size_t>(i)] : 1.0;
    if (right - left > kCutTolerance) {
      if (!keep.empty()) kept_cuts.push_back(left);
      keep.push_back(i);
      left = right;
    }
  }
  if (keep.empty()) invalid("graphon has no pode of positive measure");
  Eigen::MatrixXd v(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values(keep[i], keep[j]);
  return StepGraphon(Partition(std::move(kept_cuts)), std::move(v));
}

StepGraphon StepGraphon::constant(double p) {
  Eigen::MatrixXd v(1, 1);
  v(0, 0) = p;
  return create({}, v);
}

StepGraphon StepGraphon::from_measures(std::span<const double> measures, const Eigen::MatrixXd& values) {
  if (measures.empty()) invalid("at least one pode measure required");
  std::vector<double> cuts;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < measures.size(); ++i) {
    if (!(measures[i] >= 0.0)) invalid("pode measures must be nonnegative");
    acc += measures[i];
    cuts.push_back(std::min(acc, 1.0));
  }
  return create(std::move(cuts), values);
}

double StepGraphon::evaluate(double x, double y) const {
  return values_(static_cast<Eigen::Index>(partition_.locate(x)),
                 static_cast<Eigen::Index>(partition_.locate(y)));
}

void BipodalParams::validate() const {
  for (double v : {a, b, c, d})
    if (!(v >= 0.0 && v <= 1.0)) invalid("bipodal parameters must lie in [0,1]");
}

StepGraphon BipodalParams::to_graphon() const {
  validate();
  Eigen::Matrix2d v;
  v << a, d, d, b;
  return StepGraphon::create({c}, v);
}

BipodalParams BipodalParams::canonical() const {
  if (c > 0.5 || (c == 0.5 && b > a)) return swapped();
  return *this;
}

double BipodalParams::distance(const BipodalParams& o) const {
  return std::sqrt((a - o.a) * (a - o.a) + (b - o.b) * (b - o.b) + (c - o.c) * (c - o.c) +
                   (d - o.d) * (d - o.d));
}

SubgraphPattern::SubgraphPattern(int vertices, std::vector<std::pair<int, int>> edges)
    : vertices_(vertices), edges_(std::move(edges)) {
  if (vertices_ < 1) invalid("pattern needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [s, f] : edges_) {
    if (s < 1 || f < 1 || s > vertices_ || f > vertices_) invalid("pattern edge endpoint out of range");
    if (s == f) invalid("pattern edges may not be loops");
    if (!seen.insert({std::min(s, f), std::max(s, f)}).second) invalid("duplicate pattern edge");
  }
}

Partition merge_partitions(const Partition& a, const Partition& b) {
  std::vector<double> all = a.cuts();
  all.insert(all.end(), b.cuts().begin(), b.cuts().end());
  std::sort(all.begin(), all.end());
  std::vector<double> merged;
  for (double c : all) {
    if (c <= kCutTolerance || c >= 1.0 - kCutTolerance) continue;
    if (!merged.empty() && c - merged.back() <= kCutTolerance) continue;
    merged.push_back(c);
  }
  return Partition(std::move(merged));
}

namespace {

// Source pode index for each target pode, located by the target pode midpoint.
std::vector<std::size_t> refinement_map(const Partition& source, const Partition& target) {
  std::vector<std::size_t> map(target.size());
  for (std::size_t i = 0; i < target.size(); ++i)
    map[i] = source.locate(0.5 * (target.left(i) + target.right(i)));
  return map;
}

Eigen::MatrixXd refine_matrix(const Eigen::MatrixXd& v, const std::vector<std::size_t>& map) {
  const auto n = static_cast<Eigen::Index>(map.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = v(static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)]),
                    static_cast<Eigen::Index>(map[static_cast<std::size_t>(j)]));
  return out;
}

}  // namespace

StepGraphon refine_to(const StepGraphon& g, const Partition& target) {
  return StepGraphon::create(target.cuts(), refine_matrix(g.values(), refinement_map(g.partition(), target)));
}

StepKernel refine_to(const StepKernel& k, const Partition& target) {
  return {target, refine_matrix(k.values, refinement_map(k.partition, target))};
}

StepFunction refine_to(const StepFunction& f, const Partition& target) {
  const auto map = refinement_map(f.partition, target);
  StepFunction out{target, std::vector<double>(map.size())};
  for (std::size_t i = 0; i < map.size(); ++i) out.values[i] = f.values[map[i]];
  return out;
}

std::pair<StepGraphon, StepGraphon> refine_common(const StepGraphon& g1, const StepGraphon& g2) {
  const Partition merged = merge_partitions(g1.partition(), g2.partition());
  return {refine_to(g1, merged), refine_to(g2, merged)};
}

}  // namespace graphon_lab::core
