#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "arl/stepfn.hpp"

namespace arl {

/// Finitely supported sequence k -> f_k; zero entries are absent.
class WeightedSequence {
public:
    WeightedSequence() = default;
    explicit WeightedSequence(std::map<int, double> entries);
    void set(int k, double v);
    const std::map<int, double>& entries() const { return e_; }
    bool empty() const { return e_.empty(); }
    WeightedSequence scaled(double c) const;

private:
    std::map<int, double> e_;
};

/// ||f|| = (sum_k (2^{ks} |f_k|)^p)^{1/p}; p = infinity takes the sup.
struct NormDescriptor {
    double p = 1.0;
    double s = 0.0;
};

struct SpaceCouple {
    NormDescriptor x0, x1;
};

double sequence_norm(const WeightedSequence& f, const NormDescriptor& n);

/// K(t,f) = inf_{f = f0 + f1} ||f0||_{X0} + t ||f1||_{X1}.
/// Exact (entrywise min) when both endpoints are l^1 spaces; for other
/// finite exponents the optimal entrywise split is located numerically
/// by cyclic per-entry bisection, labeled accordingly by `exact`.
struct KResult {
    double value = 0.0;
    bool exact = false;
};
KResult k_functional(const WeightedSequence& f, const SpaceCouple& couple, double t);

/// J(t,f) = max(||f||_{X0}, t ||f||_{X1}).
double j_functional(const WeightedSequence& f, const SpaceCouple& couple, double t);

/// (sum_l [2^{-l theta} K(2^l,f)]^q)^{1/q} over a finite window whose
/// omitted geometric tails are below 1e-10 of the retained sum.
double interpolation_norm(const WeightedSequence& f, const SpaceCouple& couple, double theta, double q);

/// Shared windowed sum: Kfn(l) must return K(2^l); n0/n1 are envelope
/// constants with K(t) <= min(n0, t n1).
double windowed_theta_q_sum(double theta, double q, const std::function<double(long)>& Kfn, double n0, double n1);

// ---- block Lorentz spaces over dyadic weight level sets ----

/// Function sampled on a grid of cells with positive masses.
struct SampledFunction {
    std::vector<double> values;
    std::vector<double> masses;
};

struct LorentzDescriptor {
    double p = 1.0;
    double q = 1.0;
};

/// Blocks Omega[w,k] = {cells: 2^k <= w < 2^{k+1}}; the norm is
/// (sum_k [2^{ks} || f restricted to block k ||_{L^{p,q}}]^q_outer)^{1/q_outer}.
double block_lorentz_norm(const SampledFunction& f, const std::vector<double>& w, double q_outer, double s,
                          const LorentzDescriptor& inner);

/// Retract pair: iota(f)_k = chi_{Omega[w,k]} f and sigma(F) = sum_k chi_k F_k.
std::map<int, SampledFunction> retract_blocks(const SampledFunction& f, const std::vector<double>& w);
SampledFunction section(const std::map<int, SampledFunction>& blocks, const std::vector<double>& w);

/// Dyadic level index of a weight value: k with 2^k <= w < 2^{k+1}.
int weight_level(double w);

// ---- Cwikel-type embedding shadow ----

struct CwikelReport {
    double max_ratio = 0.0;  // interpolated-couple norm / embedded-space norm
    double min_ratio = 0.0;
    std::uint64_t samples = 0;
};

/// For random doubly indexed data, compares the (l^r_{s0}(X0), l^r_{s1}(X1))_{theta,q}
/// norm (outer K by the entrywise reduction over k) against the
/// l^r_s((X0,X1)_{theta,q}) norm, s = (1-theta)s0 + theta s1. The inner
/// couple is (l^1, l^1 with weight 2^j), so every K involved is exact.
CwikelReport cwikel_embedding_check(std::uint64_t samples, std::uint64_t seed, double r, double s0, double s1,
                                    double theta, double q);

}  // namespace arl
