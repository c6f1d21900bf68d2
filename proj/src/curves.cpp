#include "arl/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arl {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// falling factorial a (a-1) ... (a-j+1)
double falling(double a, int j) {
    double f = 1.0;
    for (int m = 0; m < j; ++m) f *= a - m;
    return f;
}

void check_interval(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("Curve: empty parameter interval");
}

}  // namespace

double affine_weight_exponent(int dim) {
    // exact rational 2/(d^2+d) = 1/(d(d+1)/2), applied in floating point
    return 2.0 / (static_cast<double>(dim) * dim + dim);
}

std::string family_name(CurveFamily f) {
    switch (f) {
        case CurveFamily::Monomial: return "monomial";
        case CurveFamily::SimplePolynomial: return "simple_poly";
        case CurveFamily::Exponential: return "exponential";
        case CurveFamily::Model: return "model";
    }
    return "?";
}

Curve Curve::monomial(std::vector<double> a, double t_lo, double t_hi) {
    if (a.size() < 2) throw std::invalid_argument("Curve: dimension must be >= 2");
    check_interval(t_lo, t_hi);
    if (!(t_lo > 0.0)) throw std::invalid_argument("Curve: monomial curves live on t > 0");
    Curve c;
    c.family_ = CurveFamily::Monomial;
    c.dim_ = static_cast<int>(a.size());
    c.params_ = std::move(a);
    c.t_lo_ = t_lo;
    c.t_hi_ = t_hi;
    return c;
}

Curve Curve::simple_polynomial(int dim, std::vector<double> poly_coeffs, double t_lo, double t_hi) {
    if (dim < 2) throw std::invalid_argument("Curve: dimension must be >= 2");
    check_interval(t_lo, t_hi);
    Curve c;
    c.family_ = CurveFamily::SimplePolynomial;
    c.dim_ = dim;
    c.params_ = poly_coeffs;
    c.phi_ = Poly(std::move(poly_coeffs));
    c.t_lo_ = t_lo;
    c.t_hi_ = t_hi;
    return c;
}

Curve Curve::exponential(std::vector<double> b, double t_lo, double t_hi) {
    if (b.size() < 2) throw std::invalid_argument("Curve: dimension must be >= 2");
    for (double bi : b)
        if (bi == 0.0) throw std::invalid_argument("Curve: exponential family requires all b_i != 0");
    check_interval(t_lo, t_hi);
    Curve c;
    c.family_ = CurveFamily::Exponential;
    c.dim_ = static_cast<int>(b.size());
    c.params_ = std::move(b);
    c.t_lo_ = t_lo;
    c.t_hi_ = t_hi;
    return c;
}

Curve Curve::model(int dim, double t_lo, double t_hi) {
    if (dim < 2) throw std::invalid_argument("Curve: dimension must be >= 2");
    check_interval(t_lo, t_hi);
    Curve c;
    c.family_ = CurveFamily::Model;
    c.dim_ = dim;
    c.t_lo_ = t_lo;
    c.t_hi_ = t_hi;
    return c;
}

void Curve::require_in_domain(double t) const {
    if (!contains(t)) throw std::domain_error("Curve: parameter outside interval");
    if (family_ == CurveFamily::Monomial && !(t > 0.0)) throw std::domain_error("Curve: monomial requires t > 0");
}

const Poly& Curve::simple_phi() const {
    if (family_ != CurveFamily::SimplePolynomial) throw std::invalid_argument("Curve: phi only for simple curves");
    return phi_;
}

std::vector<double> Curve::position(double t) const {
    require_in_domain(t);
    std::vector<double> v(dim_);
    switch (family_) {
        case CurveFamily::Monomial:
            for (int i = 0; i < dim_; ++i) v[i] = std::exp(params_[i] * std::log(t));
            break;
        case CurveFamily::SimplePolynomial:
            for (int i = 0; i < dim_ - 1; ++i) v[i] = std::pow(t, i + 1) / factorial(i + 1);
            v[dim_ - 1] = phi_(t);
            break;
        case CurveFamily::Exponential:
            for (int i = 0; i < dim_; ++i) v[i] = std::exp(params_[i] * t) / params_[i];
            break;
        case CurveFamily::Model:
            for (int i = 0; i < dim_; ++i) v[i] = std::pow(t, i + 1) / factorial(i + 1);
            break;
    }
    return v;
}

std::vector<double> Curve::derivative(double t, int j) const {
    require_in_domain(t);
    if (j < 1 || j > dim_) throw std::invalid_argument("Curve: derivative order must be in 1..d");
    std::vector<double> v(dim_, 0.0);
    switch (family_) {
        case CurveFamily::Monomial:
            for (int i = 0; i < dim_; ++i) v[i] = falling(params_[i], j) * std::exp((params_[i] - j) * std::log(t));
            break;
        case CurveFamily::SimplePolynomial:
            for (int i = 0; i < dim_ - 1; ++i) {
                int power = i + 1;
                if (power >= j) v[i] = std::pow(t, power - j) / factorial(power - j);
            }
            v[dim_ - 1] = phi_.derivative(j)(t);
            break;
        case CurveFamily::Exponential:
            for (int i = 0; i < dim_; ++i) v[i] = std::pow(params_[i], j - 1) * std::exp(params_[i] * t);
            break;
        case CurveFamily::Model:
            for (int i = 0; i < dim_; ++i) {
                int power = i + 1;
                if (power >= j) v[i] = std::pow(t, power - j) / factorial(power - j);
            }
            break;
    }
    return v;
}

DetResult Curve::torsion_det(double t) const {
    Matrix m(dim_, dim_);
    for (int j = 1; j <= dim_; ++j) m.set_col(j - 1, derivative(t, j));
    return det_pivoted(std::move(m));
}

double Curve::torsion(double t) const { return torsion_det(t).value; }

double Curve::torsion_closed_form(double t) const {
    require_in_domain(t);
    const int d = dim_;
    switch (family_) {
        case CurveFamily::Model:
            return 1.0;
        case CurveFamily::SimplePolynomial:
            return phi_.derivative(d)(t);
        case CurveFamily::Exponential: {
            double sum = 0.0;
            for (double bi : params_) sum += bi;
            return vandermonde(params_) * std::exp(t * sum);
        }
        case CurveFamily::Monomial: {
            // gamma_a(e^s) = diag(a) Gamma^a(s), so by reparametrization
            // covariance tau_a(t) = (prod a_i) V(a) t^{sum a_i - d(d+1)/2}
            double prod = 1.0, sum = 0.0;
            for (double ai : params_) {
                prod *= ai;
                sum += ai;
            }
            double expo = sum - 0.5 * d * (d + 1);
            return prod * vandermonde(params_) * std::exp(expo * std::log(t));
        }
    }
    return 0.0;
}

double Curve::affine_weight(double t) const {
    double tau = torsion(t);
    if (tau == 0.0) return 0.0;
    return std::pow(std::abs(tau), affine_weight_exponent(dim_));
}

OffspringSpec OffspringSpec::make(std::vector<double> kappa, const Curve& parent) {
    if (kappa.size() != static_cast<std::size_t>(parent.dim()))
        throw std::invalid_argument("OffspringSpec: kappa must have d coordinates");
    if (!std::is_sorted(kappa.begin(), kappa.end()))
        throw std::invalid_argument("OffspringSpec: kappa must be sorted ascending");
    bool has_zero = std::any_of(kappa.begin(), kappa.end(), [](double k) { return k == 0.0; });
    if (!has_zero) throw std::invalid_argument("OffspringSpec: some kappa_i must equal 0");
    if (kappa.back() - kappa.front() > parent.interval_length())
        throw std::invalid_argument("OffspringSpec: kappa span exceeds the parent interval");
    OffspringSpec s;
    s.kappa_ = std::move(kappa);
    return s;
}

OffspringCurve::OffspringCurve(Curve parent, OffspringSpec spec) : parent_(std::move(parent)), spec_(std::move(spec)) {
    t_lo_ = parent_.t_lo() - spec_.kappa().front();
    t_hi_ = parent_.t_hi() - spec_.kappa().back();
}

void OffspringCurve::require_in_domain(double t) const {
    if (!(t >= t_lo_ && t <= t_hi_)) throw std::domain_error("OffspringCurve: parameter outside J^kappa");
}

std::vector<double> OffspringCurve::derivative(double t, int j) const {
    require_in_domain(t);
    std::vector<double> v(parent_.dim(), 0.0);
    for (double k : spec_.kappa()) {
        // t + k can overshoot the parent interval by rounding when t sits
        // on the J^kappa boundary; clamp that ulp-level noise
        double tj = std::min(std::max(t + k, parent_.t_lo()), parent_.t_hi());
        auto dj = parent_.derivative(tj, j);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += dj[i];
    }
    return v;
}

double OffspringCurve::torsion(double t) const {
    const int d = parent_.dim();
    Matrix m(d, d);
    for (int j = 1; j <= d; ++j) m.set_col(j - 1, derivative(t, j));
    return det_pivoted(std::move(m)).value;
}

double OffspringCurve::torsion_closed_form(double t) const {
    require_in_domain(t);
    const int d = parent_.dim();
    switch (parent_.family()) {
        case CurveFamily::Exponential: {
            const auto& b = parent_.params();
            double sum = 0.0;
            for (double bi : b) sum += bi;
            double prod_e = 1.0;
            for (double bi : b) {
                double e = 0.0;
                for (double k : spec_.kappa()) e += std::exp(bi * k);
                prod_e *= e;
            }
            return vandermonde(b) * std::exp(t * sum) * prod_e;
        }
        case CurveFamily::SimplePolynomial: {
            Poly phid = parent_.simple_phi().derivative(d);
            double s = 0.0;
            for (double k : spec_.kappa()) s += phid(t + k);
            return std::pow(static_cast<double>(d), d - 1) * s;
        }
        default:
            throw std::invalid_argument("OffspringCurve: closed form only for exponential/simple families");
    }
}

double OffspringCurve::affine_weight(double t) const {
    double tau = torsion(t);
    if (tau == 0.0) return 0.0;
    return std::pow(std::abs(tau), affine_weight_exponent(parent_.dim()));
}

}  // namespace arl
