#include "graphon_lab/core/json_io.hpp"

#include <fstream>

#include "graphon_lab/errors.hpp"

namespace graphon_lab::core {

using nlohmann::json;

json to_json(const StepGraphon& g) {
  json values = json::array();
  for (Eigen::Index i = 0; i < g.values().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < g.values().cols(); ++j) row.push_back(g.values()(i, j));
    values.push_back(std::move(row));
  }
  return {{"cuts", g.cuts()}, {"values", std::move(values)}};
}

StepGraphon graphon_from_json(const json& j) {
  try {
    const auto cuts = j.at("cuts").get<std::vector<double>>();
    const auto rows = j.at("values").get<std::vector<std::vector<double>>>();
    const auto m = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd v(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (static_cast<Eigen::Index>(row.size()) != m)
        throw Error(ErrorCode::InvalidInput, "graphon values must be a square matrix");
      for (Eigen::Index k = 0; k < m; ++k) v(i, k) = row[static_cast<std::size_t>(k)];
    }
    return StepGraphon::create(cuts, v);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed graphon JSON: ") + e.what());
  }
}

json to_json(const BipodalParams& p) { return {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}}; }

BipodalParams bipodal_from_json(const json& j) {
  try {
    BipodalParams p{j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>(),
                    j.at("d").get<double>()};
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed bipodal JSON: ") + e.what());
  }
}

json to_json(const DensityPoint& p) { return {{"e", p.e}, {"t", p.t}, {"t_tilde", p.t_tilde}}; }

StepGraphon load_graphon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, "cannot parse " + path + ": " + e.what());
  }
  if (j.contains("cuts")) return graphon_from_json(j);
  return bipodal_from_json(j).to_graphon();
}

}  // namespace graphon_lab::core
