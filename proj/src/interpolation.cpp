#include "arl/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "arl/rng.hpp"

namespace arl {

WeightedSequence::WeightedSequence(std::map<int, double> entries) : e_(std::move(entries)) {
    for (auto it = e_.begin(); it != e_.end();)
        it = it->second == 0.0 ? e_.erase(it) : std::next(it);
}

void WeightedSequence::set(int k, double v) {
    if (v == 0.0)
        e_.erase(k);
    else
        e_[k] = v;
}

WeightedSequence WeightedSequence::scaled(double c) const {
    std::map<int, double> out;
    if (c != 0.0)
        for (const auto& [k, v] : e_) out[k] = c * v;
    return WeightedSequence(std::move(out));
}

namespace {

double weight_of(const NormDescriptor& n, int k) { return std::exp2(n.s * k); }

}  // namespace

double sequence_norm(const WeightedSequence& f, const NormDescriptor& n) {
    if (!(n.p > 0.0)) throw std::invalid_argument("sequence_norm: p must be positive");
    if (std::isinf(n.p)) {
        double m = 0.0;
        for (const auto& [k, v] : f.entries()) m = std::max(m, weight_of(n, k) * std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (const auto& [k, v] : f.entries()) acc += std::pow(weight_of(n, k) * std::abs(v), n.p);
    return std::pow(acc, 1.0 / n.p);
}

KResult k_functional(const WeightedSequence& f, const SpaceCouple& couple, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("k_functional: t must be positive");
    KResult res;
    if (f.empty()) {
        res.exact = true;
        return res;
    }
    if (couple.x0.p == 1.0 && couple.x1.p == 1.0) {
        // entrywise minimum is provably optimal for l^1 endpoints
        double acc = 0.0;
        for (const auto& [k, v] : f.entries())
            acc += std::abs(v) * std::min(weight_of(couple.x0, k), t * weight_of(couple.x1, k));
        res.value = acc;
        res.exact = true;
        return res;
    }
    if (std::isinf(couple.x0.p) || std::isinf(couple.x1.p))
        throw std::invalid_argument("k_functional: infinite endpoint exponents not supported");

    // numerical path: entrywise split f0 = c f, f1 = (1-c) f, cyclic
    // per-entry bisection on the (convex for p >= 1) one-entry problem
    const double p0 = couple.x0.p, p1 = couple.x1.p;
    std::vector<int> ks;
    std::vector<double> av, w0, w1, c;
    for (const auto& [k, v] : f.entries()) {
        ks.push_back(k);
        av.push_back(std::abs(v));
        w0.push_back(weight_of(couple.x0, k));
        w1.push_back(weight_of(couple.x1, k));
        c.push_back(w0.back() <= t * w1.back() ? 1.0 : 0.0);  // l^1-style warm start
    }
    const std::size_t n = ks.size();
    double S0 = 0.0, S1 = 0.0;  // sums of p-th powers
    for (std::size_t i = 0; i < n; ++i) {
        S0 += std::pow(w0[i] * c[i] * av[i], p0);
        S1 += std::pow(w1[i] * (1.0 - c[i]) * av[i], p1);
    }
    auto objective = [&](double s0, double s1) { return std::pow(s0, 1.0 / p0) + t * std::pow(s1, 1.0 / p1); };
    double val = objective(S0, S1);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double before = val;
        for (std::size_t i = 0; i < n; ++i) {
            double base0 = S0 - std::pow(w0[i] * c[i] * av[i], p0);
            double base1 = S1 - std::pow(w1[i] * (1.0 - c[i]) * av[i], p1);
            auto f_of = [&](double ci) {
                return objective(base0 + std::pow(w0[i] * ci * av[i], p0),
                                 base1 + std::pow(w1[i] * (1.0 - ci) * av[i], p1));
            };
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
                double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                if (f_of(m1) <= f_of(m2))
                    hi = m2;
                else
                    lo = m1;
            }
            double best_c = 0.5 * (lo + hi);
            // endpoints can win when the problem degenerates
            if (f_of(0.0) < f_of(best_c)) best_c = 0.0;
            if (f_of(1.0) < f_of(best_c)) best_c = 1.0;
            c[i] = best_c;
            S0 = base0 + std::pow(w0[i] * c[i] * av[i], p0);
            S1 = base1 + std::pow(w1[i] * (1.0 - c[i]) * av[i], p1);
        }
        val = objective(S0, S1);
        if (before - val <= 1e-13 * std::max(1.0, val)) break;
    }
    res.value = val;
    res.exact = false;
    return res;
}

double j_functional(const WeightedSequence& f, const SpaceCouple& couple, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("j_functional: t must be positive");
    return std::max(sequence_norm(f, couple.x0), t * sequence_norm(f, couple.x1));
}

double windowed_theta_q_sum(double theta, double q, const std::function<double(long)>& Kfn, double n0, double n1) {
    if (!(theta > 0.0) || !(theta < 1.0)) throw std::invalid_argument("interpolation: theta must be in (0,1)");
    if (!(q > 0.0)) throw std::invalid_argument("interpolation: q must be positive");
    if (n0 <= 0.0 || n1 <= 0.0) return 0.0;

    const bool sup_form = std::isinf(q);
    long center = std::lround(std::log2(n0 / n1));
    long lo = center, hi = center;
    auto term = [&](long l) {
        double K = Kfn(l);
        return sup_form ? std::exp2(-theta * l) * K : std::pow(std::exp2(-theta * l) * K, q);
    };
    double acc = term(center);
    // envelope bounds: K(2^l) <= n0 gives a 2^{-theta q} tail upward,
    // K(2^l) <= 2^l n1 gives a 2^{-(1-theta) q} tail downward
    const double up_ratio = sup_form ? 0.0 : std::exp2(-theta * q);
    const double dn_ratio = sup_form ? 0.0 : std::exp2(-(1.0 - theta) * q);
    for (int guard = 0; guard < 4000; ++guard) {
        double up_env = sup_form ? std::exp2(-theta * (hi + 1)) * n0
                                 : std::pow(std::exp2(-theta * (hi + 1)) * n0, q) / (1.0 - up_ratio);
        double dn_env = sup_form ? std::exp2((1.0 - theta) * (lo - 1)) * n1
                                 : std::pow(std::exp2((1.0 - theta) * (lo - 1)) * n1, q) / (1.0 - dn_ratio);
        bool grew = false;
        if (up_env > 1e-12 * std::max(acc, 1e-300)) {
            ++hi;
            acc = sup_form ? std::max(acc, term(hi)) : acc + term(hi);
            grew = true;
        }
        if (dn_env > 1e-12 * std::max(acc, 1e-300)) {
            --lo;
            acc = sup_form ? std::max(acc, term(lo)) : acc + term(lo);
            grew = true;
        }
        if (!grew) break;
    }
    return sup_form ? acc : std::pow(acc, 1.0 / q);
}

double interpolation_norm(const WeightedSequence& f, const SpaceCouple& couple, double theta, double q) {
    if (f.empty()) return 0.0;
    double n0 = sequence_norm(f, couple.x0);
    double n1 = sequence_norm(f, couple.x1);
    return windowed_theta_q_sum(
        theta, q, [&](long l) { return k_functional(f, couple, std::exp2(static_cast<double>(l))).value; }, n0, n1);
}

int weight_level(double w) {
    if (!(w > 0.0)) throw std::invalid_argument("weight_level: weight must be positive");
    int e;
    double m = std::frexp(w, &e);  // w = m 2^e, m in [0.5,1)
    (void)m;
    return e - 1;  // 2^{e-1} <= w < 2^e
}

double block_lorentz_norm(const SampledFunction& f, const std::vector<double>& w, double q_outer, double s,
                          const LorentzDescriptor& inner) {
    if (f.values.size() != f.masses.size() || f.values.size() != w.size())
        throw std::invalid_argument("block_lorentz_norm: size mismatch");
    std::map<int, std::vector<StepPiece>> blocks;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (f.values[i] == 0.0) continue;
        if (!(w[i] > 0.0)) throw std::invalid_argument("block_lorentz_norm: weight must be positive on the support");
        blocks[weight_level(w[i])].push_back({std::abs(f.values[i]), f.masses[i]});
    }
    const bool sup_form = std::isinf(q_outer);
    double acc = 0.0;
    for (auto& [k, pieces] : blocks) {
        double nk = lorentz_quasinorm(StepFunction(std::move(pieces)), inner.p, inner.q);
        double termv = std::exp2(s * k) * nk;
        acc = sup_form ? std::max(acc, termv) : acc + std::pow(termv, q_outer);
    }
    return sup_form ? acc : std::pow(acc, 1.0 / q_outer);
}

std::map<int, SampledFunction> retract_blocks(const SampledFunction& f, const std::vector<double>& w) {
    if (f.values.size() != f.masses.size() || f.values.size() != w.size())
        throw std::invalid_argument("retract_blocks: size mismatch");
    std::map<int, SampledFunction> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (f.values[i] == 0.0) continue;
        int k = weight_level(w[i]);
        auto& blk = out[k];
        if (blk.values.empty()) {
            blk.values.assign(f.values.size(), 0.0);
            blk.masses = f.masses;
        }
        blk.values[i] = f.values[i];
    }
    return out;
}

SampledFunction section(const std::map<int, SampledFunction>& blocks, const std::vector<double>& w) {
    SampledFunction out;
    out.values.assign(w.size(), 0.0);
    out.masses.assign(w.size(), 1.0);
    for (const auto& [k, blk] : blocks) {
        if (blk.values.size() != w.size()) throw std::invalid_argument("section: block size mismatch");
        out.masses = blk.masses;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] > 0.0 && weight_level(w[i]) == k) out.values[i] += blk.values[i];
    }
    return out;
}

CwikelReport cwikel_embedding_check(std::uint64_t samples, std::uint64_t seed, double r, double s0, double s1,
                                    double theta, double q) {
    if (!(r > 0.0) || std::isinf(r)) throw std::invalid_argument("cwikel: r in (0, inf)");
    if (!(q >= r)) throw std::invalid_argument("cwikel: need q >= r");
    if (s0 == s1) throw std::invalid_argument("cwikel: need s0 != s1");
    if (!(theta > 0.0) || !(theta < 1.0)) throw std::invalid_argument("cwikel: theta in (0,1)");

    // inner couple over j: l^1 against l^1 with weight 2^j (exact K)
    const SpaceCouple inner{{1.0, 0.0}, {1.0, 1.0}};
    const double s = (1.0 - theta) * s0 + theta * s1;
    const int k_lo = -3, k_hi = 3, j_n = 5;

    CwikelReport rep;
    rep.samples = samples;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    Rng rng(seed);
    for (std::uint64_t it = 0; it < samples; ++it) {
        std::map<int, WeightedSequence> fk;
        for (int k = k_lo; k <= k_hi; ++k) {
            WeightedSequence g;
            for (int j = 0; j < j_n; ++j)
                if (rng.uniform() < 0.8) g.set(j, rng.uniform(-1.0, 1.0));
            if (!g.empty()) fk[k] = g;
        }
        if (fk.empty()) continue;

        // outer endpoint norms (envelopes for the window)
        double M0 = 0.0, M1 = 0.0;
        for (const auto& [k, g] : fk) {
            M0 += std::pow(std::exp2(s0 * k) * sequence_norm(g, inner.x0), r);
            M1 += std::pow(std::exp2(s1 * k) * sequence_norm(g, inner.x1), r);
        }
        M0 = std::pow(M0, 1.0 / r);
        M1 = std::pow(M1, 1.0 / r);

        // interpolated-couple norm with the entrywise reduction
        // K_W(t) = (sum_k [2^{k s0} K(2^{k(s1-s0)} t, f_k)]^r)^{1/r}
        auto Kouter = [&](long l) {
            double t = std::exp2(static_cast<double>(l));
            double acc = 0.0;
            for (const auto& [k, g] : fk) {
                double tk = t * std::exp2(k * (s1 - s0));
                acc += std::pow(std::exp2(s0 * k) * k_functional(g, inner, tk).value, r);
            }
            return std::pow(acc, 1.0 / r);
        };
        double interp = windowed_theta_q_sum(theta, q, Kouter, M0, M1);

        // embedded-space norm (sum_k [2^{ks} ||f_k||_{(X0,X1)_{theta,q}}]^r)^{1/r}
        double emb = 0.0;
        for (const auto& [k, g] : fk) emb += std::pow(std::exp2(s * k) * interpolation_norm(g, inner, theta, q), r);
        emb = std::pow(emb, 1.0 / r);
        if (emb == 0.0) continue;

        double ratio = interp / emb;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        rep.min_ratio = std::min(rep.min_ratio, ratio);
    }
    return rep;
}

}  // namespace arl
