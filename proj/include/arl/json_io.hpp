#pragma once

#include <json.hpp>

#include "arl/curves.hpp"

namespace arl {

/// {"family": "monomial"|"simple_poly"|"exponential"|"model",
///  "params": [...], "interval": [lo, hi], "dim": d}
nlohmann::json curve_to_json(const Curve& c);
Curve curve_from_json(const nlohmann::json& j);

}  // namespace arl
