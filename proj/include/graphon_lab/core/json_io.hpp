#pragma once

#include <string>

#include <json.hpp>

#include "graphon_lab/core/step_graphon.hpp"

namespace graphon_lab::core {

// {"cuts":[...],"values":[[...],...]}
nlohmann::json to_json(const StepGraphon& g);
StepGraphon graphon_from_json(const nlohmann::json& j);

// {"a":..,"b":..,"c":..,"d":..}
nlohmann::json to_json(const BipodalParams& p);
BipodalParams bipodal_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DensityPoint& p);

/// Reads a graphon from a JSON file; accepts either schema above.
StepGraphon load_graphon_file(const std::string& path);

}  // namespace graphon_lab::core
