#include "arl/json_io.hpp"

#include <stdexcept>

namespace arl {

nlohmann::json curve_to_json(const Curve& c) {
    nlohmann::json j;
    j["family"] = family_name(c.family());
    j["params"] = c.params();
    j["interval"] = {c.t_lo(), c.t_hi()};
    j["dim"] = c.dim();
    return j;
}

Curve curve_from_json(const nlohmann::json& j) {
    const std::string family = j.at("family").get<std::string>();
    const auto interval = j.at("interval");
    if (!interval.is_array() || interval.size() != 2) throw std::invalid_argument("curve json: interval must be [lo, hi]");
    double lo = interval[0].get<double>(), hi = interval[1].get<double>();
    std::vector<double> params;
    if (j.contains("params")) params = j.at("params").get<std::vector<double>>();
    const int dim = j.value("dim", static_cast<int>(params.size()));

    if (family == "monomial") return Curve::monomial(params, lo, hi);
    if (family == "simple_poly") return Curve::simple_polynomial(dim, params, lo, hi);
    if (family == "exponential") return Curve::exponential(params, lo, hi);
    if (family == "model") return Curve::model(dim, lo, hi);
    throw std::invalid_argument("curve json: unknown family '" + family + "'");
}

}  // namespace arl
