#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphon_lab/ensemble.hpp"
#include "graphon_lab/errors.hpp"

namespace graphon_lab::ensemble {

AdjacencyGraph::AdjacencyGraph(int n) : n_(n) {
  if (n < 0) throw Error(ErrorCode::InvalidInput, "AdjacencyGraph: negative vertex count");
  words_.assign((pairs() + 63) / 64, 0);
}

AdjacencyGraph AdjacencyGraph::from_code(int n, std::uint64_t code) {
  AdjacencyGraph g(n);
  if (g.pairs() > 64) throw Error(ErrorCode::InvalidInput, "from_code: more than 64 vertex pairs");
  if (!g.words_.empty()) g.words_[0] = g.pairs() == 64 ? code : code & ((std::uint64_t{1} << g.pairs()) - 1);
  return g;
}

AdjacencyGraph AdjacencyGraph::complete(int n) {
  AdjacencyGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge(i, j, true);
  return g;
}

std::size_t AdjacencyGraph::bit(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_ || i == j) throw Error(ErrorCode::InvalidInput, "AdjacencyGraph: invalid vertex pair");
  const auto si = static_cast<std::size_t>(i), sn = static_cast<std::size_t>(n_);
  return si * sn - si * (si + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

bool AdjacencyGraph::has_edge(int i, int j) const {
  if (i == j) return false;
  const std::size_t b = bit(i, j);
  return (words_[b / 64] >> (b % 64)) & 1U;
}

void AdjacencyGraph::set_edge(int i, int j, bool on) {
  const std::size_t b = bit(i, j);
  const std::uint64_t mask = std::uint64_t{1} << (b % 64);
  if (on)
    words_[b / 64] |= mask;
  else
    words_[b / 64] &= ~mask;
}

std::size_t AdjacencyGraph::edge_count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<int> AdjacencyGraph::degrees() const {
  std::vector<int> d(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (has_edge(i, j)) {
        ++d[static_cast<std::size_t>(i)];
        ++d[static_cast<std::size_t>(j)];
      }
  return d;
}

std::uint64_t AdjacencyGraph::code() const {
  if (pairs() > 64) throw Error(ErrorCode::InvalidInput, "code: more than 64 vertex pairs");
  return words_.empty() ? 0 : words_[0];
}

AdjacencyGraph AdjacencyGraph::complement() const {
  AdjacencyGraph g(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) g.set_edge(i, j, !has_edge(i, j));
  return g;
}

AdjacencyGraph AdjacencyGraph::relabeled(const std::vector<int>& position) const {
  if (position.size() != static_cast<std::size_t>(n_))
    throw Error(ErrorCode::InvalidInput, "relabeled: permutation has the wrong length");
  AdjacencyGraph g(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (has_edge(i, j)) g.set_edge(position[std::size_t(i)], position[std::size_t(j)], true);
  return g;
}

core::StepGraphon checkerboard(const AdjacencyGraph& g) {
  const int n = g.n();
  if (n == 0) throw Error(ErrorCode::InvalidInput, "checkerboard: graph has no vertices");
  std::vector<double> cuts;
  for (int i = 1; i < n; ++i) cuts.push_back(static_cast<double>(i) / n);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = g.has_edge(i, j) ? 1.0 : 0.0;
  return core::StepGraphon::create(std::move(cuts), std::move(v));
}

core::DensityPoint graph_densities(const AdjacencyGraph& g) {
  const int n = g.n();
  if (n == 0) return {};
  const double nn = static_cast<double>(n);
  double sq = 0.0;
  for (int d : g.degrees()) sq += static_cast<double>(d) * d;
  const double e = 2.0 * static_cast<double>(g.edge_count()) / (nn * nn);
  const double t = sq / (nn * nn * nn);
  // Variance of the degree function, accumulated directly.
  double tt = 0.0;
  for (int d : g.degrees()) {
    const double x = d / nn - e;
    tt += x * x / nn;
  }
  return {e, t, tt};
}

DensityWindow::DensityWindow(double e0_, double t0_, double delta_) : e0(e0_), t0(t0_), delta(delta_) {
  if (!(delta > 0.0) || !std::isfinite(e0) || !std::isfinite(t0))
    throw Error(ErrorCode::InvalidInput, "DensityWindow: delta must be positive and the centre finite");
}

bool DensityWindow::contains(double e, double t) const {
  return std::abs(e - e0) < delta && std::abs(t - t0) < delta;
}

namespace {

using Rational = boost::multiprecision::cpp_rational;

// |num/den - centre| < delta, exactly.
bool strictly_within(std::uint64_t num, std::uint64_t den, double centre, double delta) {
  const double approx = std::abs(static_cast<double>(num) / static_cast<double>(den) - centre) - delta;
  if (std::abs(approx) > 1e-9) return approx < 0.0;
  Rational diff = Rational(num) / Rational(den) - Rational(centre);
  if (diff < 0) diff = -diff;
  return diff < Rational(delta);
}

}  // namespace

bool DensityWindow::contains_counts(int n, std::uint64_t edges, std::uint64_t degree_square_sum) const {
  if (n <= 0) return false;
  const auto nn = static_cast<std::uint64_t>(n);
  return strictly_within(2 * edges, nn * nn, e0, delta) && strictly_within(degree_square_sum, nn * nn * nn, t0, delta);
}

std::uint64_t canonical_code(const AdjacencyGraph& g) {
  const int n = g.n();
  if (g.pairs() > 64) throw Error(ErrorCode::InvalidInput, "canonical_code: more than 64 vertex pairs");
  if (n <= 1) return 0;
  const auto un = static_cast<std::size_t>(n);

  // Colour refinement starting from degrees.
  std::vector<int> colour = g.degrees();
  std::size_t classes = 0;
  for (;;) {
    std::vector<std::vector<int>> sig(un);
    for (int v = 0; v < n; ++v) {
      sig[std::size_t(v)].push_back(colour[std::size_t(v)]);
      std::vector<int> nb;
      for (int u = 0; u < n; ++u)
        if (g.has_edge(u, v)) nb.push_back(colour[std::size_t(u)]);
      std::sort(nb.begin(), nb.end());
      sig[std::size_t(v)].insert(sig[std::size_t(v)].end(), nb.begin(), nb.end());
    }
    std::map<std::vector<int>, int> rank;
    for (const auto& s : sig) rank.emplace(s, 0);
    int r = 0;
    for (auto& kv : rank) kv.second = r++;
    for (std::size_t v = 0; v < un; ++v) colour[v] = rank[sig[v]];
    if (rank.size() == classes) break;
    classes = rank.size();
  }

  // Vertices grouped by colour; positions are handed out in that order.
  std::vector<std::vector<int>> groups(classes);
  for (int v = 0; v < n; ++v) groups[std::size_t(colour[std::size_t(v)])].push_back(v);
  std::vector<int> position(un);
  std::uint64_t best = ~std::uint64_t{0};
  auto evaluate = [&] {
    int p = 0;
    for (const auto& grp : groups)
      for (int v : grp) position[std::size_t(v)] = p++;
    best = std::min(best, g.relabeled(position).code());
  };
  // Odometer over the permutations of every group.
  for (;;) {
    evaluate();
    std::size_t k = 0;
    for (; k < groups.size(); ++k)
      if (std::next_permutation(groups[k].begin(), groups[k].end())) break;
    if (k == groups.size()) break;
  }
  return best;
}

}  // namespace graphon_lab::ensemble
