#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arl/interpolation.hpp"
#include "arl/rng.hpp"
#include "arl/stepfn.hpp"

using namespace arl;

namespace {
double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }
}

TEST_CASE("decreasing rearrangement") {
    StepFunction f({{1.0, 2.0}});
    auto g = f.rearranged();
    REQUIRE(g.pieces().size() == 1);
    CHECK(g.pieces()[0].value == 1.0);
    CHECK(g.pieces()[0].mass == 2.0);

    StepFunction h({{2.0, 1.0}, {5.0, 0.5}});
    auto hr = h.rearranged();
    CHECK(hr.pieces()[0].value == 5.0);
    CHECK(hr.pieces()[1].value == 2.0);

    Rng rng(3);
    std::vector<StepPiece> pieces;
    double mass = 0.0;
    for (int i = 0; i < 100; ++i) {
        pieces.push_back({rng.uniform(0.0, 10.0), rng.uniform(0.01, 1.0)});
        mass += pieces.back().mass;
    }
    auto r = StepFunction(pieces).rearranged();
    CHECK(r.total_mass() == doctest::Approx(mass).epsilon(1e-12));
    for (std::size_t i = 0; i + 1 < r.pieces().size(); ++i) CHECK(r.pieces()[i].value > r.pieces()[i + 1].value);

    CHECK_THROWS_AS(StepFunction({{1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(StepFunction({{-1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("lorentz quasinorm: indicator normalization") {
    // indicator of measure m has L^{p,q} norm m^{1/p} for every q
    StepFunction ind({{1.0, 0.37}});
    for (double p : {0.5, 1.0, 2.0, 7.0})
        for (double q : {0.5, 1.0, 2.0, std::numeric_limits<double>::infinity()})
            CHECK(lorentz_quasinorm(ind, p, q) == doctest::Approx(std::pow(0.37, 1.0 / p)).epsilon(1e-12));
}

TEST_CASE("lorentz quasinorm: q = p recovers L^p, q = inf the sup form") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<StepPiece> pieces;
        for (int i = 0; i < 12; ++i) pieces.push_back({rng.uniform(0.0, 5.0), rng.uniform(0.01, 2.0)});
        StepFunction f(pieces);
        for (double p : {0.7, 1.0, 2.0, 3.5}) CHECK(rel_err(lorentz_quasinorm(f, p, p), lp_norm(f, p)) < 1e-12);

        auto g = f.rearranged();
        double T = 0.0, sup = 0.0;
        for (const auto& piece : g.pieces()) {
            T += piece.mass;
            sup = std::max(sup, piece.value * std::pow(T, 1.0 / 2.0));
        }
        CHECK(lorentz_quasinorm(f, 2.0, std::numeric_limits<double>::infinity()) == doctest::Approx(sup).epsilon(1e-12));
    }
    CHECK_THROWS_AS(lorentz_quasinorm(StepFunction({{1, 1}}), 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("maximal function h**") {
    StepFunction c({{3.0, 2.0}});
    CHECK(maximal_starstar(c, 1.0, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(maximal_starstar(c, 0.5, 2.0) == doctest::Approx(3.0).epsilon(1e-12));
    // beyond the total mass: (t^{-1} integral |f|^rho)^{1/rho}
    double rho = 0.5;
    double expected = std::pow(std::pow(3.0, rho) * 2.0 / 5.0, 1.0 / rho);
    CHECK(maximal_starstar(c, rho, 5.0) == doctest::Approx(expected).epsilon(1e-12));

    // brute force over rearrangement prefixes of mass >= t
    StepFunction two({{4.0, 1.0}, {1.0, 3.0}});
    double t = 1.5;
    double best = 0.0;
    for (int g = 0; g <= 1000; ++g) {
        double m = t + (two.total_mass() - t) * g / 1000.0;
        double take1 = std::min(1.0, m), take2 = m - take1;
        double val = std::pow((std::pow(4.0, rho) * take1 + std::pow(1.0, rho) * take2) / m, 1.0 / rho);
        best = std::max(best, val);
    }
    CHECK(maximal_starstar(two, rho, t) == doctest::Approx(best).epsilon(1e-6));

    // nonincreasing in t, dominates the rearrangement value f*(t)
    Rng rng(9);
    std::vector<StepPiece> pieces;
    for (int i = 0; i < 6; ++i) pieces.push_back({rng.uniform(0.1, 5.0), rng.uniform(0.1, 1.0)});
    StepFunction f(pieces);
    auto g = f.rearranged();
    double prev = 1e300;
    for (double tt : {0.2, 0.5, 1.0, 2.0, 4.0}) {
        double v = maximal_starstar(f, 1.0, tt);
        CHECK(v <= prev + 1e-12);
        prev = v;
        double rearr_at_t = 0.0, T = 0.0;
        for (const auto& piece : g.pieces()) {
            T += piece.mass;
            if (tt <= T) {
                rearr_at_t = piece.value;
                break;
            }
        }
        CHECK(v >= rearr_at_t - 1e-12);
    }
}

TEST_CASE("block lorentz norm") {
    // w == 1: a single block k = 0
    SampledFunction f{{2.0, 1.0, 3.0}, {0.5, 0.25, 0.25}};
    std::vector<double> w{1.0, 1.0, 1.0};
    double inner = lorentz_quasinorm(StepFunction({{2.0, 0.5}, {1.0, 0.25}, {3.0, 0.25}}), 2.0, 1.0);
    CHECK(block_lorentz_norm(f, w, 1.0, 0.5, {2.0, 1.0}) == doctest::Approx(inner).epsilon(1e-12));

    // support on a single block scales by 2^{ks}
    std::vector<double> w4{4.0, 4.5, 5.0};  // all level k = 2
    CHECK(block_lorentz_norm(f, w4, 1.0, 0.5, {2.0, 1.0}) == doctest::Approx(std::exp2(1.0) * inner).epsilon(1e-12));

    CHECK_THROWS_AS(block_lorentz_norm(f, {1.0, -1.0, 1.0}, 1.0, 0.5, {2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("block lorentz vs weighted Lp within the dyadic bracket") {
    Rng rng(11);
    const double p = 2.0;
    for (int trial = 0; trial < 50; ++trial) {
        int n = 20;
        SampledFunction f;
        std::vector<double> w;
        for (int i = 0; i < n; ++i) {
            f.values.push_back(rng.uniform(0.0, 3.0));
            f.masses.push_back(rng.uniform(0.05, 1.0));
            w.push_back(std::exp2(rng.uniform(-4.0, 4.0)));
        }
        double block = block_lorentz_norm(f, w, p, 1.0 / p, {p, p});
        double direct = 0.0;
        for (int i = 0; i < n; ++i) direct += std::pow(f.values[i], p) * w[i] * f.masses[i];
        direct = std::pow(direct, 1.0 / p);
        CHECK(direct >= block * (1.0 - 1e-12));
        CHECK(direct <= block * std::exp2(1.0 / p) * (1.0 + 1e-12));
    }
}

TEST_CASE("retract identities are exact") {
    Rng rng(13);
    int n = 16;
    SampledFunction f;
    std::vector<double> w;
    for (int i = 0; i < n; ++i) {
        f.values.push_back(rng.uniform(-2.0, 2.0));
        f.masses.push_back(rng.uniform(0.1, 1.0));
        w.push_back(std::exp2(rng.uniform(-3.0, 3.0)));
    }
    auto blocks = retract_blocks(f, w);
    auto back = section(blocks, w);
    CHECK(back.values == f.values);  // sigma(iota(f)) = f exactly

    // iota(sigma(F))_k = chi_k F_k
    auto again = retract_blocks(back, w);
    REQUIRE(again.size() == blocks.size());
    for (const auto& [k, blk] : blocks) CHECK(again.at(k).values == blk.values);
}

TEST_CASE("k functional: l1 couples, exact values") {
    const SpaceCouple couple{{1.0, 0.0}, {1.0, 1.0}};
    WeightedSequence spike0;
    spike0.set(0, 1.0);
    for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        auto k = k_functional(spike0, couple, t);
        CHECK(k.exact);
        CHECK(k.value == doctest::Approx(std::min(1.0, t)).epsilon(1e-15));
    }
    WeightedSequence spike2;
    spike2.set(2, 1.0);
    for (double t : {0.01, 0.25, 1.0, 5.0})
        CHECK(k_functional(spike2, couple, t).value == doctest::Approx(std::min(1.0, 4.0 * t)).epsilon(1e-15));
    CHECK_THROWS_AS(k_functional(spike0, couple, 0.0), std::invalid_argument);
}

TEST_CASE("k functional vs brute force for l1 couples") {
    Rng rng(17);
    const SpaceCouple couple{{1.0, 0.0}, {1.0, 1.0}};
    for (int trial = 0; trial < 30; ++trial) {
        WeightedSequence f;
        for (int i = 0; i < 10; ++i) f.set(static_cast<int>(rng.below(9)) - 4, rng.uniform(-2.0, 2.0));
        if (f.empty()) f.set(0, 1.0);
        double t = std::exp2(rng.uniform(-4.0, 4.0));
        double oracle = 0.0;
        for (const auto& [k, v] : f.entries()) {
            double best = 1e300;
            for (int g = 0; g <= 2000; ++g) {
                double c = g / 2000.0;
                best = std::min(best, std::abs(v) * (c + t * (1.0 - c) * std::exp2(k)));
            }
            oracle += best;
        }
        CHECK(rel_err(k_functional(f, couple, t).value, oracle) < 1e-6);
    }
}

TEST_CASE("k functional: numerical path for p = 2 endpoints") {
    const SpaceCouple couple{{2.0, 0.0}, {2.0, 1.0}};
    WeightedSequence spike;
    spike.set(0, 1.0);
    // single entry: K(t) = min over c of sqrt(c^2) + t sqrt((1-c)^2) = min(1, t)
    for (double t : {0.25, 1.0, 4.0}) {
        auto k = k_functional(spike, couple, t);
        CHECK(!k.exact);
        CHECK(k.value == doctest::Approx(std::min(1.0, t)).epsilon(1e-9));
    }
    // two entries, compare against a fine 2d grid search
    WeightedSequence f;
    f.set(0, 1.0);
    f.set(1, 0.5);
    double t = 0.7;
    double oracle = 1e300;
    for (int g0 = 0; g0 <= 400; ++g0)
        for (int g1 = 0; g1 <= 400; ++g1) {
            double c0 = g0 / 400.0, c1 = g1 / 400.0;
            double n0 = std::sqrt(c0 * c0 * 1.0 + c1 * c1 * 0.25);
            double n1 = std::sqrt((1 - c0) * (1 - c0) + 4.0 * (1 - c1) * (1 - c1) * 0.25);
            oracle = std::min(oracle, n0 + t * n1);
        }
    CHECK(k_functional(f, couple, t).value == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("j functional and K <= J") {
    const SpaceCouple couple{{1.0, 0.0}, {1.0, 1.0}};
    WeightedSequence f;
    f.set(0, 1.0);  // both endpoint norms equal 1
    for (double t : {0.1, 1.0, 3.0}) CHECK(j_functional(f, couple, t) == doctest::Approx(std::max(1.0, t)));

    Rng rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        WeightedSequence g;
        for (int i = 0; i < 8; ++i) g.set(static_cast<int>(rng.below(9)) - 4, rng.uniform(-1.0, 1.0));
        if (g.empty()) g.set(1, 0.5);
        for (double t : {0.125, 0.5, 2.0, 8.0})
            CHECK(k_functional(g, couple, t).value <= j_functional(g, couple, t) + 1e-12);
    }
}

TEST_CASE("interpolation norm: single spike against the geometric series") {
    const SpaceCouple couple{{1.0, 0.0}, {1.0, 1.0}};
    WeightedSequence f;
    f.set(2, 1.5);
    double theta = 0.4, q = 1.7;
    // K(2^l) = 1.5 min(1, 2^{l+2}); sum the series over a wide window
    double acc = 0.0;
    for (int l = -300; l <= 300; ++l) {
        double K = 1.5 * std::min(1.0, std::exp2(l + 2.0));
        acc += std::pow(std::exp2(-theta * l) * K, q);
    }
    double oracle = std::pow(acc, 1.0 / q);
    CHECK(rel_err(interpolation_norm(f, couple, theta, q), oracle) < 1e-10);
    CHECK(interpolation_norm(WeightedSequence(), couple, theta, q) == 0.0);
    CHECK_THROWS_AS(interpolation_norm(f, couple, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(interpolation_norm(f, couple, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("interpolation norm: q = infinity sup form") {
    const SpaceCouple couple{{1.0, 0.0}, {1.0, 1.0}};
    WeightedSequence f;
    f.set(0, 2.0);
    double theta = 0.5;
    double oracle = 0.0;
    for (int l = -200; l <= 200; ++l) oracle = std::max(oracle, std::exp2(-theta * l) * 2.0 * std::min(1.0, std::exp2(l)));
    CHECK(rel_err(interpolation_norm(f, couple, theta, std::numeric_limits<double>::infinity()), oracle) < 1e-10);
}

TEST_CASE("norms are absolutely homogeneous") {
    Rng rng(23);
    const SpaceCouple couple{{1.0, 0.0}, {1.0, 1.0}};
    for (int trial = 0; trial < 20; ++trial) {
        WeightedSequence f;
        for (int i = 0; i < 6; ++i) f.set(static_cast<int>(rng.below(7)) - 3, rng.uniform(-1.0, 1.0));
        if (f.empty()) f.set(0, 0.7);
        double c = rng.uniform(0.1, 5.0);
        CHECK(rel_err(sequence_norm(f.scaled(c), couple.x0), c * sequence_norm(f, couple.x0)) < 1e-12);
        CHECK(rel_err(k_functional(f.scaled(c), couple, 1.3).value, c * k_functional(f, couple, 1.3).value) < 1e-12);
        CHECK(rel_err(interpolation_norm(f.scaled(c), couple, 0.3, 2.0), c * interpolation_norm(f, couple, 0.3, 2.0)) <
              1e-12);
    }
}

TEST_CASE("fixed-X interpolation formula: bounded two-sided ratio") {
    Rng rng(29);
    const SpaceCouple couple{{1.0, 0.0}, {1.0, 1.0}};
    double theta = 0.5, q = 1.0, s = 0.5;
    double rmax = 0.0, rmin = 1e300;
    for (int trial = 0; trial < 60; ++trial) {
        WeightedSequence f;
        for (int i = 0; i < 6; ++i) f.set(static_cast<int>(rng.below(9)) - 4, rng.uniform(-2.0, 2.0));
        if (f.empty()) f.set(0, 1.0);
        double ratio = interpolation_norm(f, couple, theta, q) / sequence_norm(f, {q, s});
        rmax = std::max(rmax, ratio);
        rmin = std::min(rmin, ratio);
    }
    double C = std::max(rmax, 1.0 / rmin);
    CHECK(std::isfinite(C));
    CHECK(C < 100.0);
}

TEST_CASE("cwikel embedding shadow") {
    // q = r with integer s1 - s0: the two norms coincide up to window tails
    auto eq = cwikel_embedding_check(20, 31, 1.0, 0.0, 1.0, 0.5, 1.0);
    CHECK(eq.max_ratio <= 1.0 + 1e-6);
    CHECK(eq.min_ratio >= 1.0 - 1e-6);

    // q > r: one-sided continuous embedding, ratio <= 1
    auto emb = cwikel_embedding_check(20, 37, 1.0, 0.0, 1.0, 0.4, 2.0);
    CHECK(emb.max_ratio <= 1.0 + 1e-6);
    CHECK(emb.min_ratio > 0.0);

    CHECK_THROWS_AS(cwikel_embedding_check(5, 1, 1.0, 0.0, 0.0, 0.5, 2.0), std::invalid_argument);  // s0 == s1
    CHECK_THROWS_AS(cwikel_embedding_check(5, 1, 2.0, 0.0, 1.0, 0.5, 1.0), std::invalid_argument);  // q < r
}
