#include "arl/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace arl {

void Rational::canonicalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rational: non-finite double");
    if (x == 0.0) return Rational();
    int e;
    double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    int e2 = e - 53;
    BigInt num(mant), den(1);
    if (e2 >= 0)
        num = num.shifted_left(static_cast<unsigned>(e2));
    else
        den = den.shifted_left(static_cast<unsigned>(-e2));
    return Rational(std::move(num), std::move(den));
}

namespace {

// simplest rational in the closed interval [lo, hi], 0 <= lo <= hi,
// by the Stern-Brocot / continued-fraction walk
Rational simplest_between(const Rational& lo, const Rational& hi) {
    BigInt fl = lo.num() / lo.den();  // floor for nonnegative lo
    Rational fl_r(fl, BigInt(1));
    Rational ceil_lo = (lo == fl_r) ? fl_r : fl_r + Rational(1);
    if (ceil_lo <= hi) return ceil_lo;
    Rational inv = simplest_between((hi - fl_r).inverse(), (lo - fl_r).inverse());
    return fl_r + inv.inverse();
}

}  // namespace

Rational Rational::from_double_snapped(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rational: non-finite double");
    if (x == 0.0) return Rational();
    if (x < 0.0) return -from_double_snapped(-x);
    double lo_d = std::nextafter(x, 0.0), hi_d = std::nextafter(x, HUGE_VAL);
    Rational lo = (from_double(lo_d) + from_double(x)) * Rational(1, 2);
    Rational hi = (from_double(x) + from_double(hi_d)) * Rational(1, 2);
    Rational s = simplest_between(lo, hi);
    // the half-ulp endpoints may round the other way; fall back to exact
    return s.to_double() == x ? s : from_double(x);
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        return Rational(BigInt::from_decimal(s.substr(0, slash)), BigInt::from_decimal(s.substr(slash + 1)));
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt::from_decimal(s), BigInt(1));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    BigInt den = BigInt::pow(BigInt(10), static_cast<unsigned>(frac_len));
    return Rational(BigInt::from_decimal(digits), std::move(den));
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational Rational::abs() const {
    Rational r = *this;
    r.num_ = r.num_.abs();
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(den_, num_);
}

Rational Rational::pow(int e) const {
    if (e == 0) return Rational(1);
    if (e < 0) return inverse().pow(-e);
    Rational r(BigInt::pow(num_, static_cast<unsigned>(e)), BigInt::pow(den_, static_cast<unsigned>(e)));
    return r;
}

int Rational::compare(const Rational& a, const Rational& b) {
    return BigInt::compare(a.num_ * b.den_, b.num_ * a.den_);
}

double Rational::to_double() const {
    long en, ed;
    double mn = num_.to_double_scaled(en);
    double md = den_.to_double_scaled(ed);
    if (mn == 0.0) return 0.0;
    long e = en - ed;
    if (e > 2000) return mn / md > 0 ? HUGE_VAL : -HUGE_VAL;
    if (e < -2000) return 0.0;
    return std::ldexp(mn / md, static_cast<int>(e));
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_decimal();
    return num_.to_decimal() + "/" + den_.to_decimal();
}

}  // namespace arl
