#include <cmath>
#include <cstdio>

#include "graphon_lab/cli.hpp"
#include "graphon_lab/core/json_io.hpp"
#include "graphon_lab/errors.hpp"

namespace graphon_lab::cli {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (const auto& h : header) cell(h);
  end_row();
}

void CsvWriter::sep() {
  if (filled_++ > 0) text_ += ',';
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  sep();
  text_ += csv_field(s);
  return *this;
}
CsvWriter& CsvWriter::cell(double v) {
  sep();
  text_ += format_double(v);
  return *this;
}
CsvWriter& CsvWriter::cell(long long v) {
  sep();
  text_ += std::to_string(v);
  return *this;
}
CsvWriter& CsvWriter::cell(bool v) {
  sep();
  text_ += v ? "true" : "false";
  return *this;
}
CsvWriter& CsvWriter::empty() {
  sep();
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_)
    throw Error(ErrorCode::InvalidInput, "CsvWriter: row has " + std::to_string(filled_) + " cells, header has " +
                                             std::to_string(columns_));
  text_ += "\r\n";
  filled_ = 0;
}

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vec(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

json to_json(const opt::OptimumReport& r) {
  json j;
  j["target"] = core::to_json(r.target);
  j["params"] = r.params ? core::to_json(*r.params) : json(nullptr);
  j["graphon"] = core::to_json(r.graphon);
  if (r.lagrange) {
    const auto& l = *r.lagrange;
    j["lagrange"] = {{"alpha", num(l.alpha)},
                     {"beta", num(l.beta)},
                     {"ratio", num(l.ratio())},
                     {"logistic_alpha", num(l.logistic_alpha())},
                     {"logistic_beta", num(l.logistic_beta())}};
  } else {
    j["lagrange"] = nullptr;
  }
  j["entropy"] = num(r.entropy);
  j["densities"] = core::to_json(r.densities);
  j["classification"] = {{"label", opt::to_string(r.classification.label)},
                         {"clique_distance", num(r.classification.clique_distance)},
                         {"anticlique_distance", num(r.classification.anticlique_distance)},
                         {"symmetric_distance", num(r.classification.symmetric_distance)}};
  j["residuals"] = {{"graphon", num(r.residuals.graphon)}, {"degree", num(r.residuals.degree)}};
  j["kkt_residual"] = num(r.kkt_residual);
  j["converged"] = r.converged;
  j["boundary"] = r.boundary;
  j["iterations"] = r.iterations;
  j["tangent_eigenvalues"] = vec(r.tangent_eigenvalues);
  j["local_max"] = r.local_max;
  json clusters = json::array();
  for (const auto& p : r.cluster_representatives) clusters.push_back(core::to_json(p));
  j["multistart"] = {{"starts_tried", r.starts_tried},
                     {"starts_converged", r.starts_converged},
                     {"local_maxima", r.local_maxima},
                     {"cluster_count", r.multistart_cluster_count},
                     {"clusters", clusters}};
  j["multipodal"] = {
      {"runs", r.multipodal_runs}, {"collapsed", r.multipodal_collapsed}, {"entropy_gap", num(r.multipodal_gap)}};
  return j;
}

json to_json(const opt::PhaseDiagramRow& r) {
  json j;
  j["e"] = num(r.e);
  j["t_tilde"] = num(r.t_tilde);
  j["verdict"] = region::to_string(r.verdict);
  j["solved"] = r.solved;
  j["error"] = r.error.empty() ? json(nullptr) : json(r.error);
  j["entropy"] = r.solved ? num(r.entropy) : json(nullptr);
  j["phase"] = r.solved ? json(opt::to_string(r.phase)) : json(nullptr);
  j["params"] = r.params ? core::to_json(*r.params) : json(nullptr);
  j["clusters"] = r.clusters;
  j["jump"] = r.jump;
  j["param_change"] = num(r.param_change);
  return j;
}

json to_json(const bifurcation::CriticalPoint& c) {
  return {{"mu_star", num(c.mu_star)},
          {"t_tilde_star", num(c.t_tilde_star)},
          {"bracket", {num(c.bracket_lo), num(c.bracket_hi)}},
          {"residual", num(c.residual)},
          {"iterations", c.iterations}};
}

json to_json(const bifurcation::StabilityReport& s) {
  return {{"t_tilde", num(s.t_tilde)},
          {"mu", num(s.mu)},
          {"verdict", bifurcation::to_string(s.verdict)},
          {"eigenvalues", vec(s.eigenvalues)},
          {"gauge_directions", s.gauge_directions},
          {"delta_s_ratio", num(s.delta_s_ratio)}};
}

json to_json(const ensemble::GraphCensusRow& r) {
  json j;
  j["n"] = r.n;
  j["window"] = {{"e0", num(r.window.e0)}, {"t0", num(r.window.t0)}, {"delta", num(r.window.delta)}};
  j["method"] = ensemble::to_string(r.method);
  j["count"] = r.count ? json(*r.count) : json(nullptr);
  j["boltzmann"] = r.boltzmann ? num(*r.boltzmann) : json(nullptr);
  if (r.method == ensemble::Method::MCMC) {
    j["steps"] = r.steps;
    j["distinct_visited"] = r.distinct_visited;
    j["acceptance_rate"] = num(r.acceptance_rate);
    j["disclaimer"] = r.disclaimer;
  }
  return j;
}

json to_json(const ensemble::TypicalityResult& r) {
  return {{"fraction", num(r.fraction)},
          {"within", r.within},
          {"total", r.total},
          {"classes", r.classes},
          {"method", ensemble::to_string(r.method)},
          {"distance", r.distance == ensemble::DistanceMode::Exact ? "Exact" : "DegreeSort"}};
}

std::string optimize_csv(const opt::OptimumReport& r) {
  CsvWriter w({"e", "t_tilde", "a", "b", "c", "d", "alpha", "beta", "entropy", "phase", "converged", "boundary",
               "local_max", "kkt_residual", "stationarity_residual", "clusters"});
  w.cell(r.target.e).cell(r.target.t_tilde);
  if (r.params)
    w.cell(r.params->a).cell(r.params->b).cell(r.params->c).cell(r.params->d);
  else
    w.empty().empty().empty().empty();
  if (r.lagrange)
    w.cell(r.lagrange->alpha).cell(r.lagrange->beta);
  else
    w.empty().empty();
  w.cell(r.entropy)
      .cell(std::string(opt::to_string(r.classification.label)))
      .cell(r.converged)
      .cell(r.boundary)
      .cell(r.local_max)
      .cell(r.kkt_residual)
      .cell(r.residuals.max())
      .cell(static_cast<long long>(r.multistart_cluster_count));
  w.end_row();
  return w.str();
}

std::string scan_csv(const std::vector<opt::PhaseDiagramRow>& rows) {
  CsvWriter w({"e", "t_tilde", "verdict", "solved", "error", "entropy", "phase", "a", "b", "c", "d", "clusters",
               "jump", "param_change"});
  for (const auto& r : rows) {
    w.cell(r.e).cell(r.t_tilde).cell(std::string(region::to_string(r.verdict))).cell(r.solved).cell(r.error);
    if (r.solved)
      w.cell(r.entropy).cell(std::string(opt::to_string(r.phase)));
    else
      w.empty().empty();
    if (r.params)
      w.cell(r.params->a).cell(r.params->b).cell(r.params->c).cell(r.params->d);
    else
      w.empty().empty().empty().empty();
    w.cell(static_cast<long long>(r.clusters)).cell(r.jump);
    if (std::isfinite(r.param_change))
      w.cell(r.param_change);
    else
      w.empty();
    w.end_row();
  }
  return w.str();
}

std::string census_csv(const std::vector<ensemble::GraphCensusRow>& rows) {
  CsvWriter w({"n", "e0", "t0", "delta", "method", "count", "boltzmann", "steps", "distinct_visited",
               "acceptance_rate", "disclaimer"});
  for (const auto& r : rows) {
    w.cell(static_cast<long long>(r.n)).cell(r.window.e0).cell(r.window.t0).cell(r.window.delta);
    w.cell(std::string(ensemble::to_string(r.method)));
    if (r.count)
      w.cell(std::to_string(*r.count));
    else
      w.empty();
    if (r.boltzmann)
      w.cell(*r.boltzmann);
    else
      w.empty();
    w.cell(static_cast<long long>(r.steps))
        .cell(static_cast<long long>(r.distinct_visited))
        .cell(r.acceptance_rate)
        .cell(r.disclaimer);
    w.end_row();
  }
  return w.str();
}

}  // namespace graphon_lab::cli
