#include "graphon_lab/optimizer/maximize.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "graphon_lab/core/entropy.hpp"
#include "graphon_lab/core/functionals.hpp"
#include "graphon_lab/errors.hpp"
#include "graphon_lab/feasible_region.hpp"
#include "graphon_lab/optimizer/phase.hpp"
#include "graphon_lab/parallel.hpp"

namespace graphon_lab::opt {

namespace {

constexpr double kSeedClip = 1e-6;
constexpr double kConstraintTolerance = 1e-9;

double clip(double v) { return std::clamp(v, kSeedClip, 1.0 - kSeedClip); }

core::BipodalParams clipped(core::BipodalParams p) { return {clip(p.a), clip(p.b), clip(p.c), clip(p.d)}; }

// a = 1 - delta, b = delta^3, c = sqrt(e) + (3/2 sqrt(e) - 1) delta, d = delta,
// with delta picked on a grid to best match t~.
std::optional<core::BipodalParams> clique_seed(double e, double t_tilde) {
  if (!(e > 0.0 && e < 1.0)) return std::nullopt;
  const double s = std::sqrt(e);
  std::optional<core::BipodalParams> best;
  double best_err = HUGE_VAL;
  for (int k = 1; k <= 400; ++k) {
    const double delta = 0.5 * k / 400.0;
    const core::BipodalParams p{1.0 - delta, delta * delta * delta, s + (1.5 * s - 1.0) * delta, delta};
    if (!(p.c > 0.0 && p.c < 1.0)) continue;
    const BipodalFunctionals f = bipodal_functionals(p);
    const double err = std::abs(f.t_tilde() - t_tilde) + std::abs(f.e - e);
    if (err < best_err) {
      best_err = err;
      best = clipped(p);
    }
  }
  return best;
}

bool meets_target(const OptimumReport& r, double e, double t_tilde) {
  return std::abs(r.densities.e - e) <= kConstraintTolerance &&
         std::abs(r.densities.t_tilde - t_tilde) <= kConstraintTolerance;
}

OptimumReport boundary_report(double e, double t_tilde) {
  OptimumReport rep;
  rep.target = core::DensityPoint::from_e_ttilde(e, t_tilde);
  rep.boundary = true;
  rep.converged = true;
  if (t_tilde <= region::kBoundaryTolerance || e <= 0.0 || e >= 1.0) {
    rep.graphon = region::er_graphon(e);
    rep.params = core::BipodalParams{e, e, 0.5, e};
    if (e > 0.0 && e < 1.0) {
      rep.lagrange = stationarity::LagrangeState{core::entropy_H_prime(e), 0.0};
      rep.residuals = stationarity::stationarity_residual(rep.graphon, *rep.lagrange);
    }
  } else if (e >= 0.5) {
    rep.graphon = region::clique_graphon(e);
    rep.params = core::BipodalParams{1.0, 0.0, std::sqrt(e), 0.0}.canonical();
  } else {
    rep.graphon = region::anticlique_graphon(e);
    rep.params = core::BipodalParams{0.0, 1.0, std::sqrt(1.0 - e), 1.0}.canonical();
  }
  rep.entropy = core::entropy_S(rep.graphon);
  rep.densities = core::twostar_density(rep.graphon);
  rep.classification = classify(rep.graphon);
  rep.local_max = true;
  rep.starts_tried = rep.starts_converged = rep.local_maxima = rep.multistart_cluster_count = 1;
  rep.cluster_representatives = {*rep.params};
  return rep;
}

MultipodalState split_state(const core::BipodalParams& p, int podes, std::mt19937_64& rng) {
  // Pode i of the split state inherits from bipodal pode owner[i].
  std::vector<int> owner;
  for (int i = 0; i < podes; ++i) owner.push_back(i < (podes + 1) / 2 ? 0 : 1);
  const int n0 = static_cast<int>(std::count(owner.begin(), owner.end(), 0));
  const int n1 = podes - n0;
  MultipodalState s;
  const double base[2][2] = {{p.a, p.d}, {p.d, p.b}};
  s.values.resize(podes, podes);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  for (int i = 0; i < podes; ++i) {
    s.masses.push_back(owner[i] == 0 ? p.c / n0 : (1.0 - p.c) / n1);
    for (int j = i; j < podes; ++j)
      s.values(i, j) = s.values(j, i) = clip(base[owner[i]][owner[j]] + jitter(rng));
  }
  return s;
}

MultipodalState random_state(int podes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mass(0.2, 1.0), value(0.1, 0.9);
  MultipodalState s;
  s.values.resize(podes, podes);
  double total = 0.0;
  for (int i = 0; i < podes; ++i) total += s.masses.emplace_back(mass(rng));
  for (double& m : s.masses) m /= total;
  for (int i = 0; i < podes; ++i)
    for (int j = i; j < podes; ++j) s.values(i, j) = s.values(j, i) = value(rng);
  return s;
}

// Deterministic choice among near-tied optima: highest entropy, then the
// lexicographically smallest canonical parameters.
bool better(const OptimumReport& x, const OptimumReport& y, double tie) {
  if (std::abs(x.entropy - y.entropy) > tie) return x.entropy > y.entropy;
  if (!x.params || !y.params) return x.params.has_value() && !y.params.has_value();
  const auto& p = *x.params;
  const auto& q = *y.params;
  return std::tie(p.a, p.b, p.c, p.d) < std::tie(q.a, q.b, q.c, q.d);
}

// Canonical parameters are discontinuous at c = 1/2, so compare against
// both labelings of the podes.
double pode_distance(const core::BipodalParams& p, const core::BipodalParams& q) {
  return std::min(p.distance(q), p.distance(q.swapped()));
}

std::vector<core::BipodalParams> cluster(const std::vector<const OptimumReport*>& members, double radius) {
  std::vector<core::BipodalParams> reps;
  for (const OptimumReport* r : members) {
    if (!r->params) continue;
    const bool seen = std::any_of(reps.begin(), reps.end(),
                                  [&](const core::BipodalParams& q) { return pode_distance(q, *r->params) <= radius; });
    if (!seen) reps.push_back(*r->params);
  }
  return reps;
}

}  // namespace

std::vector<core::BipodalParams> structured_seeds(double e, double t_tilde) {
  std::vector<core::BipodalParams> seeds;
  try {
    const core::BipodalParams p = region::ansatz_graphon(e, t_tilde);
    if (p.c > 0.0) seeds.push_back(clipped(p));
  } catch (const Error&) {
  }
  if (auto p = clique_seed(e, t_tilde)) seeds.push_back(*p);
  if (auto p = clique_seed(1.0 - e, t_tilde)) seeds.push_back(clipped(p->complement()));
  const double mu = std::sqrt(std::max(t_tilde, 0.0));
  seeds.push_back(clipped({e + 2.0 * mu, e - 2.0 * mu, 0.5, e}));
  return seeds;
}

OptimumReport maximize_entropy(double e, double t_tilde, const MaximizeConfig& config) {
  const region::RegionQuery q = region::classify_point(e, t_tilde);
  if (q.verdict == region::Verdict::Infeasible)
    throw Error(ErrorCode::Infeasible, "maximize_entropy: (e, t~) lies outside the feasible region");
  if (q.verdict == region::Verdict::Boundary) return boundary_report(e, t_tilde);

  std::vector<core::BipodalParams> seeds = structured_seeds(e, t_tilde);
  for (int k = 0; k < config.random_seeds; ++k) {
    std::mt19937_64 rng(mix_seed(config.seed, static_cast<std::uint64_t>(k)));
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    seeds.push_back({a, b, c, d});
  }

  std::vector<std::optional<OptimumReport>> results(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    const NewtonResult r = newton_bipodal(e, t_tilde, seeds[i], config.newton);
    if (r.status != NewtonStatus::Converged) return;
    OptimumReport rep = make_report(e, t_tilde, r);
    if (meets_target(rep, e, t_tilde)) results[i] = std::move(rep);
  });

  int tried = static_cast<int>(seeds.size());
  std::vector<OptimumReport> pool;
  for (auto& r : results)
    if (r) pool.push_back(std::move(*r));

  auto pick_best = [&]() -> const OptimumReport* {
    const OptimumReport* best = nullptr;
    for (const auto& r : pool)
      if (!best || (r.local_max && !best->local_max) ||
          (r.local_max == best->local_max && better(r, *best, config.entropy_tie)))
        best = &r;
    return best;
  };
  if (pool.empty())
    throw Error(ErrorCode::NoConvergedStart,
                "maximize_entropy: none of " + std::to_string(tried) + " starts converged");

  // Multipodal probe around and away from the bipodal winner.
  int mp_runs = 0, mp_collapsed = 0;
  double mp_best = -HUGE_VAL;
  std::optional<OptimumReport> multipodal_winner;
  if (config.max_podes >= 3) {
    const core::BipodalParams anchor = *pick_best()->params;
    struct Job {
      int podes;
      int run;
    };
    std::vector<Job> jobs;
    for (int m = 3; m <= config.max_podes; ++m)
      for (int r = 0; r < config.multipodal_runs_per_size; ++r) jobs.push_back({m, r});
    std::vector<std::optional<MultipodalResult>> mp(jobs.size());
    std::vector<std::optional<OptimumReport>> polished(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
      std::mt19937_64 rng(mix_seed(config.seed, 1000 + 100 * std::uint64_t(jobs[i].podes) + std::uint64_t(jobs[i].run)));
      const MultipodalState init =
          jobs[i].run == 0 ? split_state(anchor, jobs[i].podes, rng) : random_state(jobs[i].podes, rng);
      try {
        mp[i] = multipodal_ascent(e, t_tilde, init, config.multipodal);
      } catch (const Error&) {
        return;
      }
      if (!mp[i]->bipodal) return;
      const NewtonResult r = newton_bipodal(e, t_tilde, clipped(*mp[i]->bipodal), config.newton);
      if (r.status != NewtonStatus::Converged) return;
      OptimumReport rep = make_report(e, t_tilde, r);
      if (meets_target(rep, e, t_tilde)) polished[i] = std::move(rep);
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      ++mp_runs;
      if (!mp[i]) continue;
      if (mp[i]->constraint_residual > kConstraintTolerance) continue;
      if (mp[i]->bipodal) ++mp_collapsed;
      mp_best = std::max(mp_best, mp[i]->entropy);
      if (polished[i]) {
        pool.push_back(std::move(*polished[i]));
        ++tried;
      }
      if (!mp[i]->bipodal && (!multipodal_winner || mp[i]->entropy > multipodal_winner->entropy)) {
        OptimumReport rep;
        rep.target = core::DensityPoint::from_e_ttilde(e, t_tilde);
        rep.graphon = mp[i]->state.to_graphon();
        rep.lagrange = stationarity::LagrangeState{mp[i]->alpha, mp[i]->beta};
        rep.entropy = mp[i]->entropy;
        rep.densities = core::twostar_density(rep.graphon);
        rep.residuals = stationarity::stationarity_residual(rep.graphon, *rep.lagrange);
        rep.kkt_residual = rep.residuals.max();
        rep.converged = true;
        rep.classification = classify(rep.graphon);
        multipodal_winner = std::move(rep);
      }
    }
  }

  const OptimumReport* best = pick_best();
  std::vector<const OptimumReport*> maxima, tied;
  for (const auto& r : pool)
    if (r.local_max == best->local_max) {
      maxima.push_back(&r);
      if (std::abs(r.entropy - best->entropy) <= config.entropy_tie) tied.push_back(&r);
    }
  auto order = [&](const OptimumReport* x, const OptimumReport* y) { return better(*x, *y, 0.0); };
  std::stable_sort(maxima.begin(), maxima.end(), order);
  std::stable_sort(tied.begin(), tied.end(), order);

  OptimumReport out = *best;
  if (multipodal_winner && multipodal_winner->entropy > best->entropy + 1e-7) out = *multipodal_winner;
  out.target = core::DensityPoint::from_e_ttilde(e, t_tilde);
  out.starts_tried = tried;
  out.starts_converged = static_cast<int>(pool.size());
  out.local_maxima = best->local_max ? static_cast<int>(cluster(maxima, config.cluster_distance).size()) : 0;
  out.cluster_representatives = cluster(tied, config.cluster_distance);
  out.multistart_cluster_count = static_cast<int>(out.cluster_representatives.size());
  out.multipodal_runs = mp_runs;
  out.multipodal_collapsed = mp_collapsed;
  out.multipodal_gap = mp_best > -HUGE_VAL ? mp_best - out.entropy : 0.0;
  return out;
}

}  // namespace graphon_lab::opt
