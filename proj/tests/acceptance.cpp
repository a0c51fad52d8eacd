// One PASS/FAIL line per acceptance criterion. Exit status is 0 when the set
// of failing criteria equals the --expect-fail list (empty by default).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphon_lab/bifurcation.hpp"
#include "graphon_lab/cli.hpp"
#include "graphon_lab/core/functionals.hpp"
#include "graphon_lab/ensemble.hpp"
#include "graphon_lab/feasible_region.hpp"
#include "graphon_lab/optimizer/bipodal.hpp"
#include "graphon_lab/optimizer/maximize.hpp"
#include "graphon_lab/optimizer/scan.hpp"

namespace gl = graphon_lab;
namespace opt = graphon_lab::opt;
namespace region = graphon_lab::region;
namespace bif = graphon_lab::bifurcation;
namespace ens = graphon_lab::ensemble;
using gl::core::BipodalParams;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;   // human-readable summary
  std::string payload;  // deterministic data, compared across reruns
};

std::string fmt(double v) { return gl::cli::format_double(v); }

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += "[failed: " + what + "] ";
  }
}

double swap_distance(const BipodalParams& x, const BipodalParams& y) {
  return std::min(x.distance(y), x.distance(y.swapped()));
}

Outcome bifurcation_constants() {
  Outcome o;
  const auto cp = bif::find_critical(1e-10);
  require(o, std::abs(cp.mu_star - 0.1930708944) <= 1e-8, "mu*");
  require(o, std::abs(cp.t_tilde_star - 0.0372763703) <= 1e-8, "t*");
  o.detail += "mu*=" + fmt(cp.mu_star) + " t*=" + fmt(cp.t_tilde_star);
  o.payload = gl::cli::to_json(cp).dump();
  return o;
}

Outcome trichotomy() {
  Outcome o;
  const auto lo = bif::stability(0.03), hi = bif::stability(0.05), none = bif::stability(0.07);
  require(o, lo.verdict == bif::StabilityVerdict::LocalMax, "0.03 verdict");
  require(o, lo.eigenvalues.size() == 2, "0.03 tangent dimension");
  for (double v : lo.eigenvalues) require(o, v < -1e-6, "0.03 eigenvalue");
  require(o, hi.verdict == bif::StabilityVerdict::NotLocalMax, "0.05 verdict");
  require(o, !hi.eigenvalues.empty() && *std::max_element(hi.eigenvalues.begin(), hi.eigenvalues.end()) > 1e-6,
          "0.05 eigenvalue");
  require(o, none.verdict == bif::StabilityVerdict::Nonexistent, "0.07 verdict");
  o.detail += std::string(bif::to_string(lo.verdict)) + "/" + bif::to_string(hi.verdict) + "/" +
              bif::to_string(none.verdict);
  for (const auto* r : {&lo, &hi, &none}) o.payload += gl::cli::to_json(*r).dump();
  return o;
}

Outcome feasible_golds() {
  Outcome o;
  const double a = region::t_max(0.64), b = region::t_max(0.36), c = region::t_tilde_max(0.5);
  require(o, std::abs(a - 0.512) <= 1e-12, "t_max(0.64)");
  require(o, std::abs(b - 0.232) <= 1e-12, "t_max(0.36)");
  require(o, std::abs(c - (std::sqrt(2.0) - 1) / 4) <= 1e-12, "t~_max(0.5)");
  o.payload = fmt(a) + "," + fmt(b) + "," + fmt(c);
  o.detail = o.payload;
  return o;
}

Outcome ansatz_agreement() {
  Outcome o;
  for (double e : {0.5, 0.52, 0.48}) {
    const auto r = opt::maximize_entropy(e, 0.01);
    const BipodalParams ansatz = region::ansatz_graphon(e, 0.01);
    const std::string at = " at e=" + fmt(e);
    require(o, r.converged && r.params.has_value(), "converged" + at);
    if (!r.params) continue;
    require(o, r.residuals.max() <= 1e-8, "residual" + at);
    const double dist = swap_distance(*r.params, ansatz);
    require(o, dist <= 0.02, "ansatz distance" + at);
    require(o, r.entropy >= gl::core::entropy_S(ansatz.to_graphon()), "entropy" + at);
    require(o, r.multistart_cluster_count == 1, "cluster count" + at);
    o.detail += "e=" + fmt(e) + " dist=" + fmt(dist) + " clusters=" + std::to_string(r.multistart_cluster_count) + "; ";
    o.payload += gl::cli::to_json(r).dump();
  }
  return o;
}

Outcome phase_structure() {
  Outcome o;
  const double t55 = 0.95 * region::t_tilde_max(0.55), t45 = 0.95 * region::t_tilde_max(0.45);
  const auto hi = opt::maximize_entropy(0.55, t55), lo = opt::maximize_entropy(0.45, t45);
  require(o, hi.classification.label == opt::PhaseLabel::CliqueLike, "0.55 clique-like");
  require(o, lo.classification.label == opt::PhaseLabel::AntiCliqueLike, "0.45 anticlique-like");
  require(o, std::abs(hi.entropy - lo.entropy) <= 1e-6, "entropy symmetry");

  const double th = 0.95 * region::t_tilde_max(0.5);
  const auto mid = opt::maximize_entropy(0.5, th);
  const bool two = mid.multistart_cluster_count == 2 && mid.cluster_representatives.size() == 2;
  require(o, two, "two clusters at 0.5");
  if (two) {
    const auto& reps = mid.cluster_representatives;
    require(o, swap_distance(reps[0].complement(), reps[1]) <= 1e-6, "clusters complement-related");
  }

  const auto rows = opt::scan({0.45, 0.55, 21}, {th, th, 1});
  int jumps = 0;
  bool straddles = false;
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (rows[k].jump) {
      ++jumps;
      straddles = rows[k - 1].e <= 0.5 && rows[k].e >= 0.5;
    }
  require(o, jumps == 1 && straddles, "single jump straddling 0.5");
  o.detail += "dS=" + fmt(hi.entropy - lo.entropy) + " clusters@0.5=" + std::to_string(mid.multistart_cluster_count) +
              " jumps=" + std::to_string(jumps);
  for (const auto* r : {&hi, &lo, &mid}) o.payload += gl::cli::to_json(*r).dump();
  o.payload += gl::cli::scan_csv(rows);
  return o;
}

Outcome lagrange_ratio() {
  Outcome o;
  const auto r = opt::maximize_entropy(0.64, 0.99 * region::t_tilde_max(0.64));
  require(o, r.converged && r.lagrange.has_value(), "converged");
  if (r.lagrange) {
    const double ratio = r.lagrange->ratio();
    require(o, std::abs(ratio + 1.2) <= 0.1, "ratio");
    o.detail = "alpha/beta=" + fmt(ratio);
  }
  o.payload = gl::cli::to_json(r).dump();
  return o;
}

Outcome property_suites() {
  Outcome o;
  std::mt19937_64 rng(20140101);
  std::uniform_real_distribution<double> u(0.05, 0.95);

  double grad_err = 0.0;
  const double h = 1e-6;
  auto generic = [](const opt::Vec4& x) {
    const auto g = opt::from_vec(x).to_graphon();
    const auto p = gl::core::twostar_density(g);
    return std::array<double, 3>{p.e, p.t, gl::core::entropy_S(g)};
  };
  for (int k = 0; k < 100; ++k) {
    const BipodalParams p{u(rng), u(rng), u(rng), u(rng)};
    const auto f = opt::bipodal_functionals(p);
    for (int i = 0; i < 4; ++i) {
      opt::Vec4 up = opt::to_vec(p), dn = up;
      up(i) += h;
      dn(i) -= h;
      const auto fu = generic(up), fd = generic(dn);
      grad_err = std::max({grad_err, std::abs(f.grad_e(i) - (fu[0] - fd[0]) / (2 * h)),
                           std::abs(f.grad_t(i) - (fu[1] - fd[1]) / (2 * h)),
                           std::abs(f.grad_S(i) - (fu[2] - fd[2]) / (2 * h))});
    }
  }
  require(o, grad_err <= 1e-6, "gradients");

  auto random_graphon = [&](int m, double lo, double hi) {
    std::uniform_real_distribution<double> mass(0.2, 1.0), value(lo, hi);
    std::vector<double> w(static_cast<std::size_t>(m));
    double total = 0;
    for (double& x : w) total += x = mass(rng);
    for (double& x : w) x /= total;
    Eigen::MatrixXd v(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) v(i, j) = v(j, i) = value(rng);
    return gl::core::StepGraphon::from_measures(w, v);
  };

  double series_err = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto g = random_graphon(1 + k % 5, 0.1, 0.9);
    series_err = std::max(series_err, std::abs(gl::core::entropy_via_series(g, 64) - gl::core::entropy_S(g)));
  }
  require(o, series_err <= 1e-8, "series");

  double moment_err = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto g = random_graphon(1 + k % 5, 0.0, 1.0);
    const auto p = gl::core::twostar_density(g);
    const auto m = gl::core::moments(g, 2);
    const double eta = gl::core::decompose(g).eta(), s = p.e - 0.5;
    moment_err = std::max({moment_err, std::abs(m.nu[0] - s), std::abs(m.nu[1] - (p.t_tilde + s * s)),
                           std::abs(m.mu[0] - (2 * m.nu[1] - s * s + eta * eta))});
  }
  require(o, moment_err <= 1e-10, "moments");

  double richardson_err = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double mu = 0.02 + 0.022 * k;
    const double f1 = bif::second_variation_numeric(mu, 1e-2), f2 = bif::second_variation_numeric(mu, 5e-3),
                 f3 = bif::second_variation_numeric(mu, 2.5e-3);
    const double r12 = (4 * f2 - f1) / 3, r23 = (4 * f3 - f2) / 3;
    richardson_err = std::max(richardson_err, std::abs((16 * r23 - r12) / 15 - bif::delta_s_ratio(mu)));
  }
  require(o, richardson_err <= 1e-6, "richardson");

  o.payload = fmt(grad_err) + "," + fmt(series_err) + "," + fmt(moment_err) + "," + fmt(richardson_err);
  o.detail += "max errors grad/series/moments/richardson=" + o.payload;
  return o;
}

Outcome ensemble_trends() {
  Outcome o;
  const double tt = 0.01, e = 0.5;
  const ens::DensityWindow w(e, tt + e * e, 0.05);
  const auto optimum = opt::maximize_entropy(e, tt);
  const double s_star = optimum.entropy;

  const auto trend = ens::boltzmann_trend({5, 6, 7}, w);
  double prev = -HUGE_VAL;
  for (const auto& p : trend) {
    require(o, p.boltzmann.has_value(), "nonempty window");
    if (!p.boltzmann) continue;
    require(o, *p.boltzmann >= prev, "B nondecreasing");
    require(o, *p.boltzmann <= s_star + 0.5 / p.n, "B bound");
    prev = *p.boltzmann;
    o.detail += "B" + std::to_string(p.n) + "=" + fmt(*p.boltzmann) + " ";
    o.payload += std::to_string(p.n) + ":" + std::to_string(p.count) + ";";
  }
  for (const auto& p : ens::boltzmann_trend({5, 6, 7}, ens::DensityWindow(0.5, 0.5, 1.0)))
    require(o, p.boltzmann && std::abs(*p.boltzmann - (p.n - 1) * std::log(2.0) / (2 * p.n)) <= 1e-14,
            "full window n=" + std::to_string(p.n));

  const auto near_opt = ens::typicality_fraction(7, w, optimum.graphon, 0.3);
  const auto near_clique = ens::typicality_fraction(7, w, region::clique_graphon(e), 0.3);
  require(o, near_opt.fraction > near_clique.fraction, "typicality at eps=0.3");
  o.detail += "eps=0.3 optimum=" + fmt(near_opt.fraction) + " clique=" + fmt(near_clique.fraction);
  o.payload += gl::cli::to_json(near_opt).dump() + gl::cli::to_json(near_clique).dump();

  // Context only: the same comparison at a finer scale, where the targets separate.
  const auto fine_opt = ens::typicality_fraction(7, w, optimum.graphon, 0.1);
  const auto fine_clique = ens::typicality_fraction(7, w, region::clique_graphon(e), 0.1);
  o.detail += " (eps=0.1 optimum=" + fmt(fine_opt.fraction) + " clique=" + fmt(fine_clique.fraction) + ")";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> expect_fail;
  app.add_option("--expect-fail", expect_fail, "Criteria documented as failing")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "bifurcation constants", 1.0, bifurcation_constants},
      {2, "stability trichotomy", 3.0, trichotomy},
      {3, "feasible-region golds", 0.0, feasible_golds},
      {4, "ansatz agreement at t~=0.01", 10.0, ansatz_agreement},
      {5, "clique/anticlique structure", 60.0, phase_structure},
      {6, "Lagrange-ratio asymptote", 0.0, lagrange_ratio},
      {7, "gradient and series suites", 0.0, property_suites},
      {8, "ensemble trends", 300.0, ensemble_trends},
  };

  std::set<int> failed;
  std::vector<std::string> payloads;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail += std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += " [failed: runtime]";
    }
    if (!o.pass) failed.insert(c.id);
    payloads.push_back(o.payload);
    std::printf("criterion %d (%s): %s [%.2f s] %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }

  {
    const auto start = std::chrono::steady_clock::now();
    int mismatches = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
      std::string again;
      try {
        again = criteria[k].check().payload;
      } catch (const std::exception&) {
      }
      if (again != payloads[k] || again.empty()) ++mismatches;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (mismatches > 0) failed.insert(9);
    std::printf("criterion 9 (determinism): %s [%.2f s] %d of %zu payloads differ on rerun\n",
                mismatches == 0 ? "PASS" : "FAIL", secs, mismatches, criteria.size());
  }

  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  if (!expected.empty()) {
    std::printf("expected failures:");
    for (int id : expected) std::printf(" %d", id);
    std::printf("\n");
  }
  return failed == expected ? 0 : 1;
}
