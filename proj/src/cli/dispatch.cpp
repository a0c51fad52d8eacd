#include <array>
#include <chrono>
#include <cmath>
#include <ostream>

#include <CLI11.hpp>

#include "graphon_lab/cli.hpp"
#include "graphon_lab/core/json_io.hpp"
#include "graphon_lab/errors.hpp"
#include "graphon_lab/feasible_region.hpp"
#include "graphon_lab/optimizer/maximize.hpp"
#include "graphon_lab/parallel.hpp"

namespace graphon_lab::cli {

using nlohmann::json;

namespace {

struct Options {
  std::string format;
  std::size_t threads = 0;

  // boundary
  double e_min = 0.0, e_max = 1.0;
  int steps = 11;

  // optimize / scan
  double e = 0.5, t_tilde = 0.01;
  int max_podes = 4;
  int seeds = 16;
  std::uint64_t seed = opt::MaximizeConfig{}.seed;
  double t_min = 0.0, t_max = 0.1;
  int e_steps = 11, t_steps = 11;

  // bifurcation / stability
  double tol = 1e-12;
  bool curve = false;
  int mu_steps = 100;

  // ensemble / typicality
  int n = 6;
  double t = 0.26;
  double delta = 0.05;
  bool exhaustive = false;
  bool mcmc = false;
  std::uint64_t mcmc_steps = 100000;
  bool allow_n8 = false;
  double eps = 0.3;
  std::string target = "auto";
  bool compare_clique = false;
};

std::string dump(json j, double elapsed) {
  j["meta"] = {{"program", "graphon-lab"}, {"elapsed_seconds", elapsed}};
  return j.dump(2) + "\n";
}

opt::MaximizeConfig maximize_config(const Options& o) {
  opt::MaximizeConfig c;
  c.max_podes = o.max_podes;
  c.random_seeds = o.seeds;
  c.seed = o.seed;
  return c;
}

std::string run_boundary(const Options& o, double elapsed) {
  if (o.steps < 1) throw Error(ErrorCode::InvalidInput, "boundary: --steps must be at least 1");
  const opt::Axis axis{o.e_min, o.e_max, o.steps};
  std::vector<std::array<double, 3>> rows;
  for (int i = 0; i < o.steps; ++i) {
    const double e = axis.at(i);
    if (!(e >= 0.0 && e <= 1.0)) throw Error(ErrorCode::Domain, "boundary: e must lie in [0,1]");
    rows.push_back({e, region::t_max(e), region::t_tilde_max(e)});
  }
  if (o.format == "json") {
    json a = json::array();
    for (const auto& r : rows) a.push_back({{"e", r[0]}, {"t_max", r[1]}, {"t_tilde_max", r[2]}});
    return dump({{"rows", a}}, elapsed);
  }
  CsvWriter w({"e", "t_max", "t_tilde_max"});
  for (const auto& r : rows) {
    w.cell(r[0]).cell(r[1]).cell(r[2]);
    w.end_row();
  }
  return w.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Entropy-optimal graphons in the edge/2-star model", "graphon-lab"};
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads (overrides GRAPHON_LAB_THREADS)");

  auto* boundary = app.add_subcommand("boundary", "Upper boundary t_max(e) of the feasible region");
  boundary->add_option("--e-min", o.e_min);
  boundary->add_option("--e-max", o.e_max);
  boundary->add_option("--steps", o.steps);

  auto* optimize = app.add_subcommand("optimize", "Maximise the entropy at fixed (e, t~)");
  optimize->add_option("--e", o.e)->required();
  optimize->add_option("--ttilde", o.t_tilde)->required();
  optimize->add_option("--max-podes", o.max_podes);
  optimize->add_option("--seeds", o.seeds, "Random starts in addition to the structured ones");
  optimize->add_option("--seed", o.seed);

  auto* scan = app.add_subcommand("scan", "Phase diagram over an (e, t~) grid");
  scan->add_option("--e-min", o.e_min)->required();
  scan->add_option("--e-max", o.e_max)->required();
  scan->add_option("--e-steps", o.e_steps)->required();
  scan->add_option("--t-min", o.t_min)->required();
  scan->add_option("--t-max", o.t_max)->required();
  scan->add_option("--t-steps", o.t_steps)->required();
  scan->add_option("--max-podes", o.max_podes);
  scan->add_option("--seeds", o.seeds);
  scan->add_option("--seed", o.seed);

  auto* bif = app.add_subcommand("bifurcation", "Critical point of the symmetric bipodal family");
  bif->add_option("--tol", o.tol);
  bif->add_flag("--curve", o.curve, "Also emit the second-variation curve");
  bif->add_option("--mu-steps", o.mu_steps);

  auto* stab = app.add_subcommand("stability", "Local optimality of the symmetric graphon at t~");
  stab->add_option("--ttilde", o.t_tilde)->required();

  auto* ens = app.add_subcommand("ensemble", "Count or sample graphs in a density window");
  ens->add_option("--n", o.n)->required();
  ens->add_option("--e", o.e)->required();
  ens->add_option("--t", o.t)->required();
  ens->add_option("--delta", o.delta)->required();
  auto* ex_flag = ens->add_flag("--exhaustive", o.exhaustive);
  auto* mc_flag = ens->add_flag("--mcmc", o.mcmc);
  ex_flag->excludes(mc_flag);
  ens->add_option("--steps", o.mcmc_steps);
  ens->add_option("--seed", o.seed);
  ens->add_flag("--allow-n8", o.allow_n8, "Permit the 2^28-graph enumeration at n = 8");

  auto* typ = app.add_subcommand("typicality", "Fraction of window graphs near a target graphon");
  typ->add_option("--n", o.n)->required();
  typ->add_option("--e", o.e)->required();
  typ->add_option("--ttilde", o.t_tilde)->required();
  typ->add_option("--delta", o.delta)->required();
  typ->add_option("--eps", o.eps)->required();
  typ->add_option("--target", o.target, "auto, or a graphon JSON file");
  typ->add_flag("--mcmc", o.mcmc);
  typ->add_option("--steps", o.mcmc_steps);
  typ->add_option("--seed", o.seed);
  typ->add_flag("--allow-n8", o.allow_n8);
  typ->add_flag("--compare-clique", o.compare_clique, "Also report the fraction for the clique graphon");

  for (auto* s : {boundary, optimize, scan, bif, stab, ens, typ})
    s->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  if (o.format.empty()) o.format = scan->parsed() || boundary->parsed() ? "csv" : "json";
  if (o.threads > 0) set_thread_cap(o.threads);

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  std::string payload;
  try {
    if (boundary->parsed()) {
      payload = run_boundary(o, elapsed());
    } else if (optimize->parsed()) {
      const opt::OptimumReport r = opt::maximize_entropy(o.e, o.t_tilde, maximize_config(o));
      payload = o.format == "csv" ? optimize_csv(r) : dump(to_json(r), elapsed());
    } else if (scan->parsed()) {
      const auto rows = opt::scan({o.e_min, o.e_max, o.e_steps}, {o.t_min, o.t_max, o.t_steps}, maximize_config(o));
      if (o.format == "csv") {
        payload = scan_csv(rows);
      } else {
        json a = json::array();
        for (const auto& r : rows) a.push_back(to_json(r));
        payload = dump({{"rows", a}}, elapsed());
      }
    } else if (bif->parsed()) {
      const bifurcation::CriticalPoint cp = bifurcation::find_critical(o.tol);
      if (o.curve && o.mu_steps < 2) throw Error(ErrorCode::InvalidInput, "bifurcation: --mu-steps must be >= 2");
      const opt::Axis mu_axis{0.0, bifurcation::kMuLimit, o.mu_steps};
      if (o.format == "csv") {
        if (!o.curve) throw Error(ErrorCode::InvalidInput, "bifurcation: csv output is only available with --curve");
        CsvWriter w({"mu", "t_tilde", "delta_s_ratio"});
        for (int i = 0; i < o.mu_steps; ++i) {
          const double mu = mu_axis.at(i);
          w.cell(mu).cell(mu * mu).cell(bifurcation::delta_s_ratio(mu));
          w.end_row();
        }
        payload = w.str();
      } else {
        json j = to_json(cp);
        if (o.curve) {
          json a = json::array();
          for (int i = 0; i < o.mu_steps; ++i) {
            const double mu = mu_axis.at(i);
            a.push_back({{"mu", mu}, {"delta_s_ratio", bifurcation::delta_s_ratio(mu)}});
          }
          j["curve"] = a;
        }
        payload = dump(j, elapsed());
      }
    } else if (stab->parsed()) {
      const bifurcation::StabilityReport s = bifurcation::stability(o.t_tilde);
      if (o.format == "csv") {
        CsvWriter w({"t_tilde", "mu", "verdict", "max_eigenvalue", "delta_s_ratio"});
        w.cell(s.t_tilde).cell(s.mu).cell(std::string(bifurcation::to_string(s.verdict)));
        if (s.eigenvalues.empty())
          w.empty();
        else
          w.cell(s.eigenvalues.back());
        w.cell(s.delta_s_ratio);
        w.end_row();
        payload = w.str();
      } else {
        payload = dump(to_json(s), elapsed());
      }
    } else if (ens->parsed()) {
      const ensemble::DensityWindow w(o.e, o.t, o.delta);
      const ensemble::GraphCensusRow row = o.mcmc ? ensemble::mcmc_census(o.n, w, o.mcmc_steps, o.seed)
                                                  : ensemble::enumerate_census(o.n, {w}, o.allow_n8).front();
      payload = o.format == "csv" ? census_csv({row}) : dump(to_json(row), elapsed());
    } else if (typ->parsed()) {
      const ensemble::DensityWindow w(o.e, o.t_tilde + o.e * o.e, o.delta);
      json j;
      core::StepGraphon target = core::StepGraphon::constant(0.0);
      if (o.target == "auto") {
        const opt::OptimumReport r = opt::maximize_entropy(o.e, o.t_tilde, maximize_config(o));
        target = r.graphon;
        j["target_entropy"] = r.entropy;
      } else {
        target = core::load_graphon_file(o.target);
      }
      ensemble::TypicalityOptions topt;
      topt.method = o.mcmc ? ensemble::Method::MCMC : ensemble::Method::Exhaustive;
      topt.mcmc_steps = o.mcmc_steps;
      topt.seed = o.seed;
      topt.allow_n8 = o.allow_n8;
      const ensemble::TypicalityResult t = ensemble::typicality_fraction(o.n, w, target, o.eps, topt);
      j["n"] = o.n;
      j["window"] = {{"e0", w.e0}, {"t0", w.t0}, {"delta", w.delta}};
      j["eps"] = o.eps;
      j["target_source"] = o.target;
      j["target"] = core::to_json(target);
      j["typicality"] = to_json(t);
      if (o.compare_clique)
        j["clique"] = to_json(ensemble::typicality_fraction(o.n, w, region::clique_graphon(o.e), o.eps, topt));
      if (o.format == "csv") {
        CsvWriter cw({"n", "e0", "t0", "delta", "eps", "fraction", "within", "total", "method", "distance"});
        cw.cell(static_cast<long long>(o.n)).cell(w.e0).cell(w.t0).cell(w.delta).cell(o.eps);
        cw.cell(t.fraction).cell(static_cast<long long>(t.within)).cell(static_cast<long long>(t.total));
        cw.cell(std::string(ensemble::to_string(t.method)))
            .cell(std::string(t.distance == ensemble::DistanceMode::Exact ? "Exact" : "DegreeSort"));
        cw.end_row();
        payload = cw.str();
      } else {
        payload = dump(j, elapsed());
      }
    }
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  out << payload;
  return 0;
}

}  // namespace graphon_lab::cli
