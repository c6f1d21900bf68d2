#pragma once

#include <optional>
#include <vector>

#include "arl/rational.hpp"

namespace arl {

/// Dense polynomial with double coefficients, low order first.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

    const std::vector<double>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    double operator()(double t) const {
        double v = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * t + c_[i];
        return v;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<double> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
        return Poly(std::move(d));
    }

    Poly derivative(int order) const {
        Poly p = *this;
        for (int i = 0; i < order; ++i) p = p.derivative();
        return p;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(out));
    }

private:
    std::vector<double> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }
};

/// Polynomial with exact rational coefficients; the Sturm machinery
/// operates on these so all sign decisions are exact.
class RPoly {
public:
    RPoly() = default;
    explicit RPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    /// Snaps each double coefficient to its exact rational value.
    static RPoly from_poly(const Poly& p);

    const std::vector<Rational>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    Rational eval(const Rational& t) const;
    /// Sign of p(t); points with power-of-two denominators and integer
    /// coefficients take a gcd-free bigint path (the bisection hot loop).
    int sign_at(const Rational& t) const;
    bool integer_coefficients() const;
    /// Sign of the polynomial at +infinity (-infinity via parity).
    int sign_at_pos_inf() const { return is_zero() ? 0 : c_.back().sign(); }
    int sign_at_neg_inf() const;

    RPoly derivative() const;
    friend RPoly operator*(const RPoly& a, const RPoly& b);
    friend RPoly operator-(const RPoly& a, const RPoly& b);
    RPoly scaled(const Rational& k) const;
    /// Divides out integer content (keeps sign); controls coefficient growth.
    RPoly primitive_part() const;

    Poly to_poly() const;

private:
    std::vector<Rational> c_;
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

struct RootInterval {
    Rational lo, hi;  // lo == hi for an exactly known rational root
    bool exact() const { return lo == hi; }
    double midpoint() const { return ((lo + hi) * Rational(1, 2)).to_double(); }
};

/// Exact real-root machinery via Sturm sequences.
class SturmSequence {
public:
    explicit SturmSequence(const RPoly& p);

    /// Number of distinct real roots in (a, b].
    int count_roots(const Rational& a, const Rational& b) const;
    int count_roots_real_line() const;

    /// All distinct real roots, each refined by bisection until the
    /// bracket is narrower than `width`. Sorted ascending.
    std::vector<RootInterval> isolate_roots(const Rational& width) const;

    const RPoly& square_free() const { return chain_.front(); }

private:
    std::vector<RPoly> chain_;  // Sturm chain of the square-free part
    int sign_changes_at(const Rational& t) const;
    int sign_changes_at_inf(int dir) const;
    Rational root_bound() const;  // Cauchy bound
};

/// Partition of the real line induced by the distinct real roots of p:
/// roots r_1 < ... < r_k produce intervals (-inf,r_1),...,(r_k,+inf).
/// Returns the root list (empty means a single interval, all of R).
std::vector<double> real_roots(const RPoly& p, double width = 1e-12);

}  // namespace arl
