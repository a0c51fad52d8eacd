#include <algorithm>
#include <bit>
#include <cmath>

#include "graphon_lab/ensemble.hpp"
#include "graphon_lab/errors.hpp"
#include "graphon_lab/parallel.hpp"

namespace graphon_lab::ensemble {

const char* to_string(Method m) { return m == Method::Exhaustive ? "Exhaustive" : "MCMC"; }

std::uint64_t DensityHistogram::total() const {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

std::uint64_t DensityHistogram::count_in(const DensityWindow& w) const {
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t z = 0;
  for (std::uint64_t e = 0; e <= pairs; ++e)
    for (std::uint64_t s = 0; s <= max_square_sum; ++s)
      if (const auto c = at(e, s); c != 0 && w.contains_counts(n, e, s)) z += c;
  return z;
}

namespace {

void check_size(int n, bool allow_n8) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "census: n must be at least 1");
  if (n > kMaxGatedN || (n == kMaxGatedN && !allow_n8))
    throw Error(ErrorCode::CostGuard, "census: n = " + std::to_string(n) +
                                          " exceeds the exhaustive limit (n = 8 needs the explicit flag)");
}

std::vector<std::uint64_t> incidence_masks(int n) {
  std::vector<std::uint64_t> mask(static_cast<std::size_t>(n), 0);
  std::size_t b = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++b) {
      mask[std::size_t(i)] |= std::uint64_t{1} << b;
      mask[std::size_t(j)] |= std::uint64_t{1} << b;
    }
  return mask;
}

std::uint64_t square_sum(std::uint64_t code, const std::vector<std::uint64_t>& masks) {
  std::uint64_t s = 0;
  for (auto m : masks) {
    const auto d = static_cast<std::uint64_t>(std::popcount(code & m));
    s += d * d;
  }
  return s;
}

// Splits [0, 2^pairs) into contiguous chunks for the workers.
template <class F>
void for_chunks(std::uint64_t total, F&& f) {
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t k) {
    const std::uint64_t lo = total / chunks * k + std::min<std::uint64_t>(k, total % chunks);
    const std::uint64_t hi = lo + total / chunks + (k < total % chunks ? 1 : 0);
    f(k, lo, hi);
  });
}

}  // namespace

DensityHistogram density_histogram(int n, bool allow_n8) {
  check_size(n, allow_n8);
  const auto masks = incidence_masks(n);
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  DensityHistogram h;
  h.n = n;
  h.max_square_sum = static_cast<std::uint64_t>(n) * (n - 1) * (n - 1);
  const std::size_t bins = static_cast<std::size_t>((pairs + 1) * (h.max_square_sum + 1));
  h.counts.assign(bins, 0);
  const std::uint64_t total = std::uint64_t{1} << pairs;
  std::vector<std::vector<std::uint64_t>> partial(std::min<std::uint64_t>(total, 256));
  for_chunks(total, [&](std::size_t k, std::uint64_t lo, std::uint64_t hi) {
    auto& local = partial[k];
    local.assign(bins, 0);
    for (std::uint64_t code = lo; code < hi; ++code)
      ++local[static_cast<std::size_t>(static_cast<std::uint64_t>(std::popcount(code)) * (h.max_square_sum + 1) +
                                       square_sum(code, masks))];
  });
  for (const auto& local : partial)
    for (std::size_t i = 0; i < bins; ++i) h.counts[i] += local[i];
  return h;
}

std::vector<GraphCensusRow> enumerate_census(int n, const std::vector<DensityWindow>& windows, bool allow_n8) {
  const DensityHistogram h = density_histogram(n, allow_n8);
  std::vector<GraphCensusRow> rows;
  for (const auto& w : windows) {
    GraphCensusRow row;
    row.n = n;
    row.window = w;
    row.method = Method::Exhaustive;
    row.count = h.count_in(w);
    if (*row.count >= 1) row.boltzmann = std::log(static_cast<double>(*row.count)) / (double(n) * n);
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::uint64_t> window_members(int n, const DensityWindow& w, bool allow_n8) {
  check_size(n, allow_n8);
  const auto masks = incidence_masks(n);
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t max_sq = static_cast<std::uint64_t>(n) * (n - 1) * (n - 1);
  std::vector<char> member((pairs + 1) * (max_sq + 1));
  for (std::uint64_t e = 0; e <= pairs; ++e)
    for (std::uint64_t s = 0; s <= max_sq; ++s) member[e * (max_sq + 1) + s] = w.contains_counts(n, e, s);
  const std::uint64_t total = std::uint64_t{1} << pairs;
  std::vector<std::vector<std::uint64_t>> partial(std::min<std::uint64_t>(total, 256));
  for_chunks(total, [&](std::size_t k, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t code = lo; code < hi; ++code)
      if (member[static_cast<std::uint64_t>(std::popcount(code)) * (max_sq + 1) + square_sum(code, masks)])
        partial[k].push_back(code);
  });
  std::vector<std::uint64_t> out;
  for (const auto& p : partial) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<BoltzmannPoint> boltzmann_trend(const std::vector<int>& n_list, const DensityWindow& w, bool allow_n8) {
  std::vector<BoltzmannPoint> out;
  for (int n : n_list) {
    const GraphCensusRow row = enumerate_census(n, {w}, allow_n8).front();
    out.push_back({n, *row.count, row.boltzmann});
  }
  return out;
}

}  // namespace graphon_lab::ensemble
