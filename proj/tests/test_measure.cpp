#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arl/measure.hpp"
#include "arl/rng.hpp"

using namespace arl;

namespace {

double det_cofactor(const std::vector<std::vector<double>>& cols) {
    const std::size_t n = cols.size();
    if (n == 1) return cols[0][0];
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<double>> minor;
        for (std::size_t c = 0; c < n; ++c) {
            if (c == j) continue;
            std::vector<double> col;
            for (std::size_t r = 1; r < n; ++r) col.push_back(cols[c][r]);
            minor.push_back(std::move(col));
        }
        acc += ((j % 2 == 0) ? 1.0 : -1.0) * cols[j][0] * det_cofactor(minor);
    }
    return acc;
}

double jacobian_oracle(const Curve& c, const std::vector<double>& t) {
    std::vector<std::vector<double>> cols;
    for (double ti : t) cols.push_back(c.derivative(ti, 1));
    return det_cofactor(cols);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

TEST_CASE("jacobian values and errors") {
    Curve model = Curve::model(3, -1.0, 3.0);
    auto s = SimplexSample::make({0.0, 1.0, 2.0}, model);
    CHECK(jacobian(model, s) == doctest::Approx(1.0).epsilon(1e-12));  // (1/2) V(0,1,2) = 1
    CHECK_THROWS_AS(SimplexSample::make({0.0, 1.0, 1.0}, model), std::invalid_argument);
    CHECK_THROWS_AS(SimplexSample::make({0.0, 1.0, 5.0}, model), std::domain_error);

    Curve expo = Curve::exponential({1, 2, 3}, -1.0, 1.0);
    std::vector<double> t{0.0, 0.1, 0.2};
    CHECK(rel_err(jacobian_raw(expo, t), jacobian_oracle(expo, t)) < 1e-10);
}

TEST_CASE("jacobian antisymmetry under transposition") {
    Curve expo = Curve::exponential({0.5, 1.5, 2.5, 3.5}, -1.0, 1.0);
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> t(4);
        for (auto& x : t) x = rng.uniform(-1.0, 1.0);
        double j1 = jacobian_raw(expo, t);
        std::swap(t[1], t[3]);
        double j2 = jacobian_raw(expo, t);
        CHECK(rel_err(j1, -j2) < 1e-12);
    }
}

TEST_CASE("jacobian bound: model curve ratio is the constant 1/2") {
    Curve model = Curve::model(3, 0.0, 1.0);
    auto rep = check_jacobian_bound(model, 20000, 42);
    CHECK(rep.min_ratio == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rep.max_ratio == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rep.ratio_variance < 1e-16);
    CHECK(rep.degenerate_samples == 0);
}

TEST_CASE("jacobian bound: degenerate family and positive empirical constant") {
    Curve flat = Curve::simple_polynomial(3, {0.0, 1.0, 1.0}, 0.0, 1.0);  // deg 2 < d
    auto rep = check_jacobian_bound(flat, 2000, 1);
    CHECK(rep.degenerate_family);

    Curve expo = Curve::exponential({1, 2, 3}, 0.0, 1.0);
    auto rep2 = check_jacobian_bound(expo, 100000, 7);
    CHECK(rep2.min_ratio > 0.0);
    CHECK(!rep2.degenerate_family);
    // reproducible given the seed
    auto rep3 = check_jacobian_bound(expo, 100000, 7);
    CHECK(rep2.min_ratio == rep3.min_ratio);
    CHECK(rep2.max_ratio == rep3.max_ratio);
}

TEST_CASE("offspring torsion ratios") {
    Curve expo = Curve::exponential({1, 2, 3}, -1.0, 1.0);
    auto spec = OffspringSpec::make({-0.1, 0.0, 0.2}, expo);
    OffspringCurve off(expo, spec);
    std::vector<double> grid;
    for (int i = 0; i < 100; ++i) grid.push_back(std::min(off.t_lo() + (off.t_hi() - off.t_lo()) * i / 99.0, off.t_hi()));
    auto rep = check_offspring_torsion(expo, spec, grid);
    CHECK(rep.min_ratio >= 1.0 - 1e-9);
    CHECK(rep.evaluated == 100);
    CHECK(rep.skipped == 0);

    Curve simple = Curve::simple_polynomial(3, {0, 0, 0, 0, 1}, 0.05, 12.0);  // phi = t^4 on t > 0
    auto spec_s = OffspringSpec::make({0.0, 0.1, 0.3}, simple);
    OffspringCurve offs(simple, spec_s);
    std::vector<double> grid_s;
    for (int i = 0; i < 100; ++i) grid_s.push_back(std::min(offs.t_lo() + (offs.t_hi() - offs.t_lo()) * i / 99.0, offs.t_hi()));
    auto rep_s = check_offspring_torsion(simple, spec_s, grid_s);
    CHECK(rep_s.min_ratio >= 9.0 * (1.0 - 1e-9));  // d^{d-1} = 9

    // kappa = 0: gamma_kappa = d gamma, ratio d^d
    auto spec0 = OffspringSpec::make({0.0, 0.0, 0.0}, simple);
    auto rep0 = check_offspring_torsion(simple, spec0, {1.0, 2.0, 3.0});
    CHECK(rep0.min_ratio == doctest::Approx(27.0).epsilon(1e-10));

    CHECK_THROWS_AS(check_offspring_torsion(expo, spec, {}), std::invalid_argument);
}

TEST_CASE("offspring torsion min never increases under grid refinement") {
    Curve expo = Curve::exponential({1, 2, 3}, -1.0, 1.0);
    auto spec = OffspringSpec::make({-0.2, 0.0, 0.1}, expo);
    OffspringCurve off(expo, spec);
    std::vector<double> coarse, fine;
    for (int i = 0; i < 20; ++i) coarse.push_back(std::min(off.t_lo() + (off.t_hi() - off.t_lo()) * i / 19.0, off.t_hi()));
    fine = coarse;
    for (int i = 0; i < 19; ++i) fine.push_back(0.5 * (coarse[i] + coarse[i + 1]));
    CHECK(check_offspring_torsion(expo, spec, fine).min_ratio <=
          check_offspring_torsion(expo, spec, coarse).min_ratio + 1e-15);
}

TEST_CASE("multiplicity probe") {
    Curve model = Curve::model(3, 0.0, 1.0);
    auto rep = multiplicity_probe(model, 10000, 3, 1e-9);
    CHECK(rep.flag == MultiplicityFlag::NoCollisionFound);
    CHECK(rep.wording() == "no collision found");

    // degenerate monomial: the curve lies in a line, Phi has continuum fibers
    Curve line = Curve::monomial({2, 2, 2}, 0.1, 1.0);
    auto rep2 = multiplicity_probe(line, 2000, 5, 1e-9);
    CHECK(rep2.flag == MultiplicityFlag::CollisionFound);
    CHECK(rep2.wording() == "collision found");
    CHECK(rep2.sample_distance > 10.0 * 1e-9);

    CHECK_THROWS_AS(multiplicity_probe(model, 10, 1, 0.0), std::invalid_argument);
}

TEST_CASE("vandermonde sublevel: trivial alphas and monotone ladder") {
    // alpha beyond the box maximum: the whole box, exactly (2R)^{d-1}
    auto full = vandermonde_sublevel_measure(3, 1e9, 1.0, 10000, 11);
    CHECK(full.estimate == doctest::Approx(4.0).epsilon(1e-12));
    auto zero = vandermonde_sublevel_measure(3, 0.0, 1.0, 10000, 11);
    CHECK(zero.estimate == 0.0);

    std::vector<double> alphas{1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
    auto ladder = vandermonde_sublevel_ladder(3, alphas, 1.0, 50000, 13);
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) CHECK(ladder[i].estimate <= ladder[i + 1].estimate);

    CHECK_THROWS_AS(vandermonde_sublevel_measure(3, 0.1, 1.0, 10, 1), std::invalid_argument);
}

TEST_CASE("vandermonde sublevel slope near 2/d") {
    std::vector<double> alphas;
    for (int k = 0; k <= 5; ++k) alphas.push_back(std::pow(10.0, -5.0 + 3.0 * k / 5.0));
    auto ladder = vandermonde_sublevel_ladder(3, alphas, 1.0, 400000, 17);
    double slope = loglog_slope(ladder);
    CHECK(slope == doctest::Approx(2.0 / 3.0).epsilon(0.25));
}

TEST_CASE("polynomial sublevel: linear cases") {
    // p(t) = t on (1,2), eps = 0.25: the sublevel set {t < 0.5} misses (1,2)
    auto res = polynomial_sublevel_check(Poly({0.0, 1.0}), 1.0, 2.0, 0.25);
    CHECK(res.measured == 0.0);
    CHECK(res.within_bound);

    // p(t) = t - c family reproduces |{|t-c| < delta |b-c|}| <= 2 delta (b-a)
    for (double c : {-0.5, 0.25, 0.75, 1.5}) {
        for (double delta : {0.05, 0.2, 0.4}) {
            if (std::abs(1.0 - c) < 1e-12) continue;
            Poly p({-c, 1.0});
            bool root_inside = (c > 0.0 && c < 1.0);
            if (root_inside) {
                CHECK_THROWS_AS(polynomial_sublevel_check(p, 0.0, 1.0, delta), std::domain_error);
            } else {
                auto r = polynomial_sublevel_check(p, 0.0, 1.0, delta);
                CHECK(r.measured <= 2.0 * delta * 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("polynomial sublevel: quadratic near-touching with closed-form oracle") {
    double c = 0.5, delta = 0.01, eps = 0.01;
    Poly p({c * c + delta * delta, -2.0 * c, 1.0});  // (t-c)^2 + delta^2
    auto res = polynomial_sublevel_check(p, 0.0, 1.0, eps);
    double pb = p(1.0);
    double rad2 = eps * pb - delta * delta;  // {(t-c)^2 < eps p(b) - delta^2}
    double oracle = rad2 > 0.0 ? 2.0 * std::sqrt(rad2) : 0.0;
    CHECK(res.measured == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(res.within_bound);
}

TEST_CASE("polynomial sublevel: random quartics against the bound") {
    Rng rng(19);
    for (int i = 0; i < 30; ++i) {
        std::vector<double> coeffs(5);
        for (auto& x : coeffs) x = static_cast<double>(static_cast<int>(rng.below(9)) - 4);
        if (coeffs[4] == 0.0) coeffs[4] = 1.0;
        Poly q(coeffs);
        double mn = 1e300;
        for (int k = 0; k <= 64; ++k) mn = std::min(mn, q(k / 64.0));
        coeffs[0] += -mn + 0.5;
        auto res = polynomial_sublevel_check(Poly(coeffs), 0.0, 1.0, 1e-4);
        CHECK(res.within_bound);
        CHECK(res.bound == doctest::Approx(8.0 * std::pow(1e-4, 1.0 / 8.0)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(polynomial_sublevel_check(Poly({1.0, 0.0, 1.0}), 0.0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("psi kernel: phi = t^3/3! gives integral Psi = (1/2) V(s)") {
    PsiOptions opt;
    opt.mc_points = 20000;
    opt.seed = 23;
    Poly phi({0, 0, 0, 1.0 / 6.0});
    std::vector<double> s{0.0, 0.7, 2.0};
    auto rep = psi_kernel_checks(phi, s, opt);
    // phi''' = 1, so J_3 = integral of Psi = c_3 V(s)
    double v = (0.7 - 0.0) * (2.0 - 0.0) * (2.0 - 0.7);
    CHECK(rep.cd_vandermonde == doctest::Approx(0.5 * v).epsilon(1e-12));
    CHECK(std::abs(rep.psi_mass - rep.cd_vandermonde) <= 3.0 * rep.psi_mass_error);
    CHECK(std::abs(rep.jd_direct - rep.cd_vandermonde) < 1e-10);
    CHECK(rep.pointwise_ok);
}

TEST_CASE("psi kernel: degree below d collapses everything to zero") {
    PsiOptions opt;
    opt.mc_points = 5000;
    opt.seed = 29;
    auto rep = psi_kernel_checks(Poly({1.0, 2.0, 0.5}), {0.0, 1.0, 2.0}, opt);
    CHECK(std::abs(rep.jd_direct) < 1e-12);
    CHECK(std::abs(rep.integral) < 1e-12);
}

TEST_CASE("psi kernel: direct determinant vs quadrature for phi = t^4") {
    PsiOptions opt;
    opt.mc_points = 40000;
    opt.seed = 31;
    auto rep = psi_kernel_checks(Poly({0, 0, 0, 0, 1.0}), {0.0, 1.0, 2.0}, opt);
    CHECK(!rep.inconclusive);
    CHECK(std::abs(rep.jd_direct - rep.integral) <= std::max(3.0 * rep.integral_error, 0.01 * std::abs(rep.jd_direct)));
    CHECK(rep.pointwise_ok);
    for (const auto& node : rep.nodes) {
        CHECK(node.psi >= 0.0);
        CHECK(node.psi <= node.upper_bound * (1.0 + 1e-12));
    }
}

TEST_CASE("sign interval decomposition") {
    // phi = t^4, d = 3: phi''' = 24t, phi'''' = 24; single root at 0
    auto dec = sign_interval_decomposition(Poly({0, 0, 0, 0, 1}), 3);
    CHECK(!dec.torsion_identically_zero);
    REQUIRE(dec.roots.size() == 1);
    CHECK(dec.roots[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(dec.intervals.size() == 2);

    // degree d: phi^{(d)} constant, phi^{(d+1)} = 0: single interval
    auto flat = sign_interval_decomposition(Poly({0, 0, 0, 1}), 3);
    CHECK(flat.intervals.size() == 1);
    CHECK(!flat.torsion_identically_zero);

    // deg < d
    auto zero = sign_interval_decomposition(Poly({1, 1}), 3);
    CHECK(zero.torsion_identically_zero);

    // phi = t^6 - t^4, d = 3: roots of (120t^3 - 24t)(360t^2 - 24)
    auto dec2 = sign_interval_decomposition(Poly({0, 0, 0, 0, -1, 0, 1}), 3);
    std::vector<double> expected{-std::sqrt(0.2), -std::sqrt(1.0 / 15.0), 0.0, std::sqrt(1.0 / 15.0), std::sqrt(0.2)};
    REQUIRE(dec2.roots.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(dec2.roots[i] == doctest::Approx(expected[i]).epsilon(1e-9));
    CHECK(dec2.intervals.size() == 6);
}

TEST_CASE("dyadic cell index") {
    CHECK(dyadic_cell_index_value(1.0) == 0);
    CHECK(dyadic_cell_index_value(0.3) == 1);
    CHECK(dyadic_cell_index_value(2.0) == -1);
    CHECK(dyadic_cell_index_value(0.5) == 1);   // boundary: 1/4 < 1/2 <= 1/2
    CHECK(dyadic_cell_index_value(0.25) == 2);
    Curve model = Curve::model(3, -1.0, 3.0);
    CHECK(dyadic_cell_index(SimplexSample::make({0.0, 1.0, 2.0}, model)) == -1);  // V = 2
    CHECK_THROWS_AS(dyadic_cell_index_value(0.0), std::domain_error);
}
