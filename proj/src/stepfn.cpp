#include "arl/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace arl {

StepFunction::StepFunction(std::vector<StepPiece> pieces) : pieces_(std::move(pieces)) {
    for (const auto& p : pieces_) {
        if (!(p.mass > 0.0)) throw std::invalid_argument("StepFunction: masses must be positive");
        if (p.value < 0.0) throw std::invalid_argument("StepFunction: values must be nonnegative");
    }
}

double StepFunction::total_mass() const {
    double m = 0.0;
    for (const auto& p : pieces_) m += p.mass;
    return m;
}

StepFunction StepFunction::rearranged() const {
    std::vector<StepPiece> v = pieces_;
    std::sort(v.begin(), v.end(), [](const StepPiece& a, const StepPiece& b) { return a.value > b.value; });
    std::vector<StepPiece> merged;
    for (const auto& p : v) {
        if (!merged.empty() && merged.back().value == p.value)
            merged.back().mass += p.mass;
        else
            merged.push_back(p);
    }
    StepFunction out;
    out.pieces_ = std::move(merged);
    return out;
}

StepFunction StepFunction::scaled(double c) const {
    if (c < 0.0) throw std::invalid_argument("StepFunction: negative scale");
    std::vector<StepPiece> v = pieces_;
    for (auto& p : v) p.value *= c;
    return StepFunction(std::move(v));
}

double lorentz_quasinorm(const StepFunction& f, double p, double q) {
    if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("lorentz_quasinorm: p, q must be positive");
    StepFunction g = f.rearranged();
    if (g.empty()) return 0.0;
    if (std::isinf(q)) {
        // sup over t of t^{1/p} f*(t); attained at piece right endpoints
        double T = 0.0, best = 0.0;
        for (const auto& piece : g.pieces()) {
            T += piece.mass;
            best = std::max(best, piece.value * std::pow(T, 1.0 / p));
        }
        return best;
    }
    // (q/p int_0^inf t^{q/p} f*(t)^q dt/t)^{1/q} over constant pieces:
    // sum_i v_i^q (T_i^{q/p} - T_{i-1}^{q/p})
    double T = 0.0, acc = 0.0;
    const double e = q / p;
    for (const auto& piece : g.pieces()) {
        double T0 = T;
        T += piece.mass;
        if (piece.value > 0.0) acc += std::pow(piece.value, q) * (std::pow(T, e) - std::pow(T0, e));
    }
    return std::pow(acc, 1.0 / q);
}

double lp_norm(const StepFunction& f, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& piece : f.pieces()) m = std::max(m, piece.value);
        return m;
    }
    double acc = 0.0;
    for (const auto& piece : f.pieces()) acc += std::pow(piece.value, p) * piece.mass;
    return std::pow(acc, 1.0 / p);
}

double maximal_starstar(const StepFunction& f, double rho, double t) {
    if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("maximal_starstar: rho in (0,1]");
    if (!(t > 0.0)) throw std::invalid_argument("maximal_starstar: t must be positive");
    StepFunction g = f.rearranged();
    double upto = std::min(t, g.total_mass());
    double acc = 0.0, T = 0.0;
    for (const auto& piece : g.pieces()) {
        if (T >= upto) break;
        double take = std::min(piece.mass, upto - T);
        acc += std::pow(piece.value, rho) * take;
        T += take;
    }
    return std::pow(acc / t, 1.0 / rho);
}

}  // namespace arl
