#pragma once

#include <vector>

namespace arl {

struct StepPiece {
    double value;  // nonnegative
    double mass;   // positive
};

/// Simple function on an abstract measure space, recorded as value/mass
/// pairs. Canonical form has values strictly decreasing (equal values
/// merged); construction accepts any order.
class StepFunction {
public:
    StepFunction() = default;
    explicit StepFunction(std::vector<StepPiece> pieces);

    const std::vector<StepPiece>& pieces() const { return pieces_; }
    double total_mass() const;
    bool empty() const { return pieces_.empty(); }

    /// Canonical nonincreasing rearrangement (mass preserving).
    StepFunction rearranged() const;
    StepFunction scaled(double c) const;

private:
    std::vector<StepPiece> pieces_;
};

inline StepFunction decreasing_rearrangement(const StepFunction& f) { return f.rearranged(); }

/// L^{p,q} quasinorm via the lambda^{p,q} functional of the rearrangement,
/// evaluated in closed form on step data. q may be infinity.
double lorentz_quasinorm(const StepFunction& f, double p, double q);

/// Plain L^p norm (sum of value^p * mass)^{1/p}; p = infinity gives the sup.
double lp_norm(const StepFunction& f, double p);

/// The maximal function h**_rho(t): for t below the total mass, the best
/// rho-mean over sets of measure t (equivalently the mean of (f*)^rho on
/// [0,t]); beyond the total mass, (t^{-1} integral of |f|^rho)^{1/rho}.
double maximal_starstar(const StepFunction& f, double rho, double t);

}  // namespace arl
