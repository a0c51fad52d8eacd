#include <cmath>
#include <string>
#include <unordered_set>

#include "graphon_lab/ensemble.hpp"
#include "graphon_lab/errors.hpp"

namespace graphon_lab::ensemble {

namespace {

constexpr int kRejectionAttempts = 1000;

std::vector<int> degrees_of(const AdjacencyGraph& g) { return g.degrees(); }

}  // namespace

WindowChain::WindowChain(const AdjacencyGraph& start, const DensityWindow& w, std::uint64_t seed)
    : g_(start), w_(w), rng_(seed), deg_(degrees_of(start)), edges_(start.edge_count()) {
  for (int d : deg_) square_sum_ += static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d);
  if (!inside()) throw Error(ErrorCode::NoSeedGraph, "WindowChain: start graph is outside the window");
}

WindowChain::WindowChain(int n, const DensityWindow& w, std::uint64_t seed)
    : g_(n), w_(w), rng_(seed), deg_(static_cast<std::size_t>(n), 0) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "WindowChain: n must be at least 1");
  const double p = std::clamp(w.e0, 0.0, 1.0);
  std::bernoulli_distribution coin(p);
  auto reset = [&] {
    g_ = AdjacencyGraph(n);
    std::fill(deg_.begin(), deg_.end(), 0);
    edges_ = square_sum_ = 0;
  };
  for (int attempt = 0; attempt < kRejectionAttempts; ++attempt) {
    reset();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng_)) flip_pair(i, j);
    if (inside()) return;
  }
  // Greedy repair of the last sample: best single flip by scaled distance to
  // the window centre until inside or stuck.
  const double nn = n;
  auto dist = [&](std::uint64_t e, std::uint64_t s) {
    const double de = std::abs(2.0 * double(e) / (nn * nn) - w.e0);
    const double dt = std::abs(double(s) / (nn * nn * nn) - w.t0);
    return std::max(de, dt);
  };
  const std::size_t limit = 4 * g_.pairs() + 16;
  for (std::size_t it = 0; it < limit && !inside(); ++it) {
    double best = dist(edges_, square_sum_);
    int bi = -1, bj = -1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const auto di = static_cast<std::uint64_t>(deg_[std::size_t(i)]);
        const auto dj = static_cast<std::uint64_t>(deg_[std::size_t(j)]);
        const bool on = g_.has_edge(i, j);
        const std::uint64_t e = on ? edges_ - 1 : edges_ + 1;
        const std::uint64_t s = on ? square_sum_ - (2 * di - 1) - (2 * dj - 1) : square_sum_ + (2 * di + 1) + (2 * dj + 1);
        const double d = dist(e, s);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    flip_pair(bi, bj);
  }
  if (!inside()) throw Error(ErrorCode::NoSeedGraph, "WindowChain: no graph found inside the window");
}

bool WindowChain::inside() const { return w_.contains_counts(g_.n(), edges_, square_sum_); }

void WindowChain::flip_pair(int i, int j) {
  auto& di = deg_[std::size_t(i)];
  auto& dj = deg_[std::size_t(j)];
  if (g_.has_edge(i, j)) {
    square_sum_ -= static_cast<std::uint64_t>(2 * di - 1 + 2 * dj - 1);
    --di;
    --dj;
    --edges_;
  } else {
    square_sum_ += static_cast<std::uint64_t>(2 * di + 1 + 2 * dj + 1);
    ++di;
    ++dj;
    ++edges_;
  }
  g_.flip(i, j);
}

bool WindowChain::step() {
  ++steps_;
  const int n = g_.n();
  if (n < 2) return false;
  std::uniform_int_distribution<int> first(0, n - 1), second(0, n - 2);
  auto pair = [&] {
    const int i = first(rng_);
    int j = second(rng_);
    if (j >= i) ++j;
    return std::pair{i, j};
  };
  std::bernoulli_distribution kind(0.5);
  if (kind(rng_)) {
    const auto [i, j] = pair();
    flip_pair(i, j);
    if (inside()) return ++accepted_, true;
    flip_pair(i, j);
    return false;
  }
  if (edges_ == 0 || edges_ == g_.pairs()) return false;
  std::pair<int, int> on, off;
  do on = pair();
  while (!g_.has_edge(on.first, on.second));
  do off = pair();
  while (g_.has_edge(off.first, off.second));
  flip_pair(on.first, on.second);
  flip_pair(off.first, off.second);
  if (inside()) return ++accepted_, true;
  flip_pair(off.first, off.second);
  flip_pair(on.first, on.second);
  return false;
}

std::vector<AdjacencyGraph> mcmc_window_sampler(int n, const DensityWindow& w, std::uint64_t steps,
                                                std::uint64_t seed, std::uint64_t thin) {
  if (thin == 0) throw Error(ErrorCode::InvalidInput, "mcmc_window_sampler: thin must be positive");
  WindowChain chain(n, w, seed);
  std::vector<AdjacencyGraph> out;
  out.reserve(static_cast<std::size_t>(steps / thin));
  for (std::uint64_t k = 1; k <= steps; ++k) {
    chain.step();
    if (k % thin == 0) out.push_back(chain.current());
  }
  return out;
}

GraphCensusRow mcmc_census(int n, const DensityWindow& w, std::uint64_t steps, std::uint64_t seed) {
  WindowChain chain(n, w, seed);
  std::unordered_set<std::string> seen;
  auto key = [](const AdjacencyGraph& g) {
    const auto& words = g.words();
    return std::string(reinterpret_cast<const char*>(words.data()), words.size() * sizeof(std::uint64_t));
  };
  seen.insert(key(chain.current()));
  for (std::uint64_t k = 0; k < steps; ++k)
    if (chain.step()) seen.insert(key(chain.current()));
  GraphCensusRow row;
  row.n = n;
  row.window = w;
  row.method = Method::MCMC;
  row.steps = steps;
  row.distinct_visited = seen.size();
  row.acceptance_rate = steps == 0 ? 0.0 : static_cast<double>(chain.accepted()) / static_cast<double>(steps);
  row.disclaimer = "sampled chain: Z and B are not estimated, and connectivity of the window graph set is not proven";
  return row;
}

}  // namespace graphon_lab::ensemble
