#pragma once

#include <string>
#include <vector>

#include "arl/linalg.hpp"
#include "arl/polynomial.hpp"

namespace arl {

enum class CurveFamily { Monomial, SimplePolynomial, Exponential, Model };

/// A parametrized curve in R^d from one of the four supported families,
/// together with its parameter interval.
///
///   Monomial          gamma_a(t) = (t^{a_1}, ..., t^{a_d}),  t > 0
///   SimplePolynomial  Gamma_b(t) = (t, t^2/2!, ..., t^{d-1}/(d-1)!, P_b(t))
///   Exponential       Gamma^b(t) = (b_1^{-1} e^{b_1 t}, ..., b_d^{-1} e^{b_d t})
///   Model             gamma(t)   = (t, t^2/2!, ..., t^d/d!)
class Curve {
public:
    static Curve monomial(std::vector<double> a, double t_lo, double t_hi);
    static Curve simple_polynomial(int dim, std::vector<double> poly_coeffs, double t_lo, double t_hi);
    static Curve exponential(std::vector<double> b, double t_lo, double t_hi);
    static Curve model(int dim, double t_lo, double t_hi);

    CurveFamily family() const { return family_; }
    int dim() const { return dim_; }
    const std::vector<double>& params() const { return params_; }
    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    double interval_length() const { return t_hi_ - t_lo_; }

    bool contains(double t) const { return t >= t_lo_ && t <= t_hi_; }
    /// Throws std::domain_error when t is outside the parameter interval.
    void require_in_domain(double t) const;

    std::vector<double> position(double t) const;
    /// j-th derivative vector, j in 1..d (closed forms, no differencing).
    std::vector<double> derivative(double t, int j) const;

    /// det(gamma'(t), ..., gamma^{(d)}(t)) by pivoted elimination.
    double torsion(double t) const;
    DetResult torsion_det(double t) const;
    /// Family closed form for the same determinant.
    double torsion_closed_form(double t) const;
    /// |torsion|^{2/(d^2+d)}.
    double affine_weight(double t) const;

    /// The polynomial P_b of a simple curve (throws for other families).
    const Poly& simple_phi() const;

private:
    Curve() = default;
    CurveFamily family_;
    int dim_ = 0;
    std::vector<double> params_;
    double t_lo_ = 0.0, t_hi_ = 0.0;
    Poly phi_;  // SimplePolynomial only
};

/// Shift vector defining an offspring curve: sorted, one coordinate zero,
/// span at most the parent interval length.
class OffspringSpec {
public:
    static OffspringSpec make(std::vector<double> kappa, const Curve& parent);
    const std::vector<double>& kappa() const { return kappa_; }

private:
    std::vector<double> kappa_;
};

/// Evaluator for gamma_kappa(t) = sum_j gamma(t + kappa_j), a view over
/// the parent curve on the shifted domain J^kappa.
class OffspringCurve {
public:
    OffspringCurve(Curve parent, OffspringSpec spec);

    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    int dim() const { return parent_.dim(); }
    const Curve& parent() const { return parent_; }
    const std::vector<double>& kappa() const { return spec_.kappa(); }

    void require_in_domain(double t) const;
    std::vector<double> derivative(double t, int j) const;
    double torsion(double t) const;
    /// Closed form for the exponential and simple families:
    ///   exponential:  V(b) e^{t sum b} prod_i sum_j e^{b_i kappa_j}
    ///   simple:       d^{d-1} sum_j phi^{(d)}(t + kappa_j)
    double torsion_closed_form(double t) const;
    double affine_weight(double t) const;

private:
    Curve parent_;
    OffspringSpec spec_;
    double t_lo_, t_hi_;
};

double affine_weight_exponent(int dim);  // the exact rational 2/(d^2+d) as double

std::string family_name(CurveFamily f);

}  // namespace arl
