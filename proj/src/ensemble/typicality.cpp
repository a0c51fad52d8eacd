#include <algorithm>
#include <map>

#include "graphon_lab/ensemble.hpp"
#include "graphon_lab/errors.hpp"
#include "graphon_lab/parallel.hpp"

namespace graphon_lab::ensemble {

namespace {

// Distance per isomorphism class: counts how many of `codes` are within eps.
TypicalityResult classify_codes(int n, const std::vector<std::uint64_t>& codes, const core::StepGraphon& target,
                                double eps) {
  std::vector<std::uint64_t> canon(codes.size());
  parallel_for(codes.size(), [&](std::size_t i) { canon[i] = canonical_code(AdjacencyGraph::from_code(n, codes[i])); });
  std::map<std::uint64_t, std::uint64_t> multiplicity;
  for (auto c : canon) ++multiplicity[c];
  std::vector<std::pair<std::uint64_t, std::uint64_t>> classes(multiplicity.begin(), multiplicity.end());
  std::vector<double> dist(classes.size());
  parallel_for(classes.size(), [&](std::size_t k) {
    dist[k] = cut_distance(AdjacencyGraph::from_code(n, classes[k].first), target, DistanceMode::Exact).value;
  });
  TypicalityResult r;
  r.total = codes.size();
  r.classes = classes.size();
  for (std::size_t k = 0; k < classes.size(); ++k)
    if (dist[k] <= eps) r.within += classes[k].second;
  r.fraction = r.total == 0 ? 0.0 : static_cast<double>(r.within) / static_cast<double>(r.total);
  return r;
}

}  // namespace

TypicalityResult typicality_fraction(int n, const DensityWindow& w, const core::StepGraphon& target, double eps,
                                     const TypicalityOptions& opts) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidInput, "typicality_fraction: eps must be nonnegative");
  if (opts.method == Method::Exhaustive) {
    const std::vector<std::uint64_t> members = window_members(n, w, opts.allow_n8);
    if (members.empty()) throw Error(ErrorCode::InvalidInput, "typicality_fraction: the window contains no graph");
    TypicalityResult r = classify_codes(n, members, target, eps);
    r.method = Method::Exhaustive;
    return r;
  }

  const std::vector<AdjacencyGraph> samples = mcmc_window_sampler(n, w, opts.mcmc_steps, opts.seed, opts.mcmc_thin);
  if (samples.empty()) throw Error(ErrorCode::InvalidInput, "typicality_fraction: the chain produced no samples");
  TypicalityResult r;
  if (n <= kMaxExactDistanceN) {
    std::vector<std::uint64_t> codes;
    for (const auto& g : samples) codes.push_back(g.code());
    r = classify_codes(n, codes, target, eps);
  } else {
    std::vector<double> dist(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
      dist[i] = cut_distance(samples[i], target, DistanceMode::DegreeSort).value;
    });
    r.total = samples.size();
    r.within = static_cast<std::uint64_t>(std::count_if(dist.begin(), dist.end(), [&](double d) { return d <= eps; }));
    r.fraction = static_cast<double>(r.within) / static_cast<double>(r.total);
    r.distance = DistanceMode::DegreeSort;
  }
  r.method = Method::MCMC;
  return r;
}

}  // namespace graphon_lab::ensemble
