#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arl/curves.hpp"
#include "arl/json_io.hpp"
#include "arl/rng.hpp"

using namespace arl;

namespace {

// independent oracle: determinant by cofactor expansion
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
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        acc += sign * cols[j][0] * det_cofactor(minor);
    }
    return acc;
}

double torsion_oracle(const Curve& c, double t) {
    std::vector<std::vector<double>> cols;
    for (int j = 1; j <= c.dim(); ++j) cols.push_back(c.derivative(t, j));
    return det_cofactor(cols);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

TEST_CASE("derivative closed forms") {
    Curve model = Curve::model(3, -1.0, 1.0);
    CHECK(model.derivative(0.0, 3) == std::vector<double>{0.0, 0.0, 1.0});

    // gamma_i = b_i^{-1} e^{b_i t}, so the first derivative is e^{b_i t}
    Curve expo = Curve::exponential({1, 2, 3}, -1.0, 1.0);
    CHECK(expo.derivative(0.0, 1) == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(expo.derivative(0.0, 2) == std::vector<double>{1.0, 2.0, 3.0});

    // entry i of the 2nd derivative is a_i (a_i - 1) t^{a_i - 2}
    Curve mono = Curve::monomial({1, 2, 4}, 0.5, 4.0);
    auto d2 = mono.derivative(2.0, 2);
    CHECK(d2[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(d2[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d2[2] == doctest::Approx(48.0).epsilon(1e-12));
}

TEST_CASE("derivative argument and domain errors") {
    Curve model = Curve::model(3, -1.0, 1.0);
    CHECK_THROWS_AS(model.derivative(2.0, 1), std::domain_error);
    CHECK_THROWS_AS(model.derivative(0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(model.derivative(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(Curve::monomial({1, 2}, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Curve::exponential({1, 0, 3}, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Curve::model(1, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("torsion values") {
    Curve expo = Curve::exponential({1, 2, 3}, -1.0, 1.0);
    CHECK(std::abs(expo.torsion(0.0)) == doctest::Approx(2.0).epsilon(1e-12));  // |V(1,2,3)| = 2

    Curve model = Curve::model(3, -1.0, 1.0);
    for (double t : {-0.9, 0.0, 0.3, 1.0}) CHECK(model.torsion(t) == doctest::Approx(1.0).epsilon(1e-12));

    // oracle value for the monomial family; tau_a(t) = (prod a) V(a) t^{sum a - d(d+1)/2}
    Curve mono = Curve::monomial({1, 2, 4}, 0.5, 4.0);
    double oracle = torsion_oracle(mono, 2.0);
    CHECK(oracle == doctest::Approx(96.0).epsilon(1e-12));  // 8 * 6 * 2
    CHECK(rel_err(mono.torsion(2.0), oracle) < 1e-12);
    CHECK(rel_err(mono.torsion_closed_form(2.0), oracle) < 1e-12);
}

TEST_CASE("affine weight") {
    Curve model = Curve::model(3, 0.0, 10.0);
    CHECK(model.affine_weight(5.0) == 1.0);

    // deg <= 2 polynomial in d = 3: the d-th derivative vanishes identically
    Curve flat = Curve::simple_polynomial(3, {1.0, 2.0, 0.5}, -5.0, 5.0);
    for (double t : {-4.0, 0.0, 3.0}) CHECK(flat.affine_weight(t) == 0.0);

    Curve expo = Curve::exponential({1, 2, 3}, 0.0, 2.0);
    double expected = std::pow(2.0 * std::exp(6.0), 1.0 / 6.0);
    CHECK(expo.affine_weight(1.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::pow(std::abs(torsion_oracle(expo, 1.0)), 1.0 / 6.0) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("torsion closed forms vs determinant on random samples") {
    Rng rng(101);
    for (int i = 0; i < 200; ++i) {
        int d = 3 + static_cast<int>(rng.below(3));
        std::vector<double> b(d);
        for (int k = 0; k < d; ++k) b[k] = -3.0 + 6.0 * (k + rng.uniform(0.1, 0.9)) / d;
        Curve expo = Curve::exponential(b, -1.0, 1.0);
        double t = rng.uniform(-1.0, 1.0);
        CHECK(rel_err(expo.torsion(t), expo.torsion_closed_form(t)) < 1e-9);

        std::vector<double> coeffs(d + 2);
        for (auto& x : coeffs) x = rng.uniform(-2.0, 2.0);
        if (std::abs(coeffs[d + 1]) < 0.3) coeffs[d + 1] = 1.0;
        Curve simple = Curve::simple_polynomial(d, coeffs, -2.0, 2.0);
        double ts = rng.uniform(-2.0, 2.0);
        if (std::abs(simple.torsion_closed_form(ts)) > 1e-6)
            CHECK(rel_err(simple.torsion(ts), simple.torsion_closed_form(ts)) < 1e-9);
    }
}

TEST_CASE("reparametrization covariance through t = e^s") {
    Rng rng(102);
    for (int i = 0; i < 100; ++i) {
        int d = 3 + static_cast<int>(rng.below(2));
        std::vector<double> a(d);
        for (int k = 0; k < d; ++k) a[k] = 0.5 + k + rng.uniform(0.0, 0.5);
        Curve mono = Curve::monomial(a, 1e-3, 10.0);
        double s = rng.uniform(-1.0, 1.0);
        double lhs = mono.torsion(std::exp(s)) * std::exp(s * 0.5 * d * (d + 1));
        double prod = 1.0, sum = 0.0;
        for (double ai : a) {
            prod *= ai;
            sum += ai;
        }
        double rhs = prod * vandermonde(a) * std::exp(s * sum);
        CHECK(rel_err(lhs, rhs) < 1e-8);
    }
}

TEST_CASE("affine covariance of the torsion determinant") {
    Rng rng(103);
    Curve expo = Curve::exponential({0.5, 1.5, 2.5}, -1.0, 1.0);
    const int d = 3;
    for (int trial = 0; trial < 50; ++trial) {
        Matrix m(d, d), md(d, d);
        std::vector<std::vector<double>> mval(d, std::vector<double>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) mval[i][j] = rng.uniform(-2.0, 2.0);
        double t = rng.uniform(-1.0, 1.0);
        for (int j = 1; j <= d; ++j) {
            auto col = expo.derivative(t, j);
            std::vector<double> mapped(d, 0.0);
            for (int r = 0; r < d; ++r)
                for (int k = 0; k < d; ++k) mapped[r] += mval[r][k] * col[k];
            m.set_col(j - 1, mapped);
        }
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) md(i, j) = mval[i][j];
        double lhs = det_pivoted(std::move(m)).value;
        double rhs = det_pivoted(std::move(md)).value * expo.torsion(t);
        CHECK(rel_err(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("weight is nonnegative and vanishes exactly with the torsion") {
    Rng rng(104);
    Curve simple = Curve::simple_polynomial(3, {0, 0, 0, 0, 1}, -2.0, 2.0);  // phi = t^4, phi''' = 24t
    for (int i = 0; i < 200; ++i) {
        double t = rng.uniform(-2.0, 2.0);
        double w = simple.affine_weight(t);
        CHECK(w >= 0.0);
        if (std::abs(simple.torsion_closed_form(t)) < 1e-300) CHECK(w == 0.0);
    }
    CHECK(simple.affine_weight(0.0) == 0.0);
}

TEST_CASE("offspring torsion: kappa = 0 scales by d^d") {
    Curve expo = Curve::exponential({1, 2, 3}, -1.0, 1.0);
    auto spec = OffspringSpec::make({0.0, 0.0, 0.0}, expo);
    OffspringCurve off(expo, spec);
    for (double t : {-0.5, 0.0, 0.4})
        CHECK(rel_err(off.torsion(t), 27.0 * expo.torsion(t)) < 1e-12);
}

TEST_CASE("offspring closed forms vs determinant") {
    Rng rng(105);
    Curve expo = Curve::exponential({1, 2, 3}, -1.0, 1.0);
    Curve simple = Curve::simple_polynomial(3, {0.5, -1.0, 0.0, 2.0, 1.0, 0.25}, -2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> kappa{rng.uniform(-0.3, 0.0), 0.0, rng.uniform(0.0, 0.3)};
        auto spec_e = OffspringSpec::make(kappa, expo);
        OffspringCurve off_e(expo, spec_e);
        double t = rng.uniform(off_e.t_lo(), off_e.t_hi());
        CHECK(rel_err(off_e.torsion(t), off_e.torsion_closed_form(t)) < 1e-9);

        auto spec_s = OffspringSpec::make(kappa, simple);
        OffspringCurve off_s(simple, spec_s);
        double ts = rng.uniform(off_s.t_lo(), off_s.t_hi());
        if (std::abs(off_s.torsion_closed_form(ts)) > 1e-6)
            CHECK(rel_err(off_s.torsion(ts), off_s.torsion_closed_form(ts)) < 1e-9);
    }
}

TEST_CASE("offspring spec invariants") {
    Curve expo = Curve::exponential({1, 2, 3}, -1.0, 1.0);
    CHECK_THROWS_AS(OffspringSpec::make({0.2, 0.0, 0.1}, expo), std::invalid_argument);   // unsorted
    CHECK_THROWS_AS(OffspringSpec::make({-0.1, 0.1, 0.2}, expo), std::invalid_argument);  // no zero
    CHECK_THROWS_AS(OffspringSpec::make({-2.0, 0.0, 1.5}, expo), std::invalid_argument);  // span too wide
    auto spec = OffspringSpec::make({-0.1, 0.0, 0.2}, expo);
    OffspringCurve off(expo, spec);
    CHECK(off.t_lo() == doctest::Approx(-0.9));
    CHECK(off.t_hi() == doctest::Approx(0.8));
    CHECK_THROWS_AS(off.torsion(0.95), std::domain_error);
}

TEST_CASE("curve json round trip") {
    Curve c = Curve::monomial({1.0, 2.5, 4.0 / 3.0}, 0.125, 7.75);
    auto j = curve_to_json(c);
    Curve back = curve_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.family() == CurveFamily::Monomial);
    CHECK(back.params() == c.params());  // 17-digit decimal round trip is exact
    CHECK(back.t_lo() == c.t_lo());
    CHECK(back.t_hi() == c.t_hi());

    Curve s = Curve::simple_polynomial(4, {0.1, -0.2, 0.3, 1.0, 0.0, 2.0}, -1.5, 2.5);
    Curve sback = curve_from_json(curve_to_json(s));
    CHECK(sback.dim() == 4);
    CHECK(sback.params() == s.params());

    CHECK_THROWS(curve_from_json(nlohmann::json::parse(R"({"family":"bogus","interval":[0,1],"dim":3})")));
}
