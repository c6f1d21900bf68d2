#pragma once

#include <string>

#include "arl/bigint.hpp"

namespace arl {

/// Exact rational number, always canonical: gcd(num,den)=1, den>0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t v) : num_(v), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { canonicalize(); }
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

    /// Exact value of the double (every finite double is rational).
    static Rational from_double(double x);
    /// Simplest rational inside the rounding interval of x, i.e. the
    /// lowest-denominator value that reads back as the same double
    /// ("snapped at input precision": 0.01 becomes 1/100).
    static Rational from_double_snapped(double x);
    /// Parses "n", "n/d" or a plain decimal like "-0.125".
    static Rational parse(const std::string& s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }
    bool is_integer() const { return den_ == BigInt(1); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    Rational abs() const;
    Rational inverse() const;
    Rational pow(int e) const;

    static int compare(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return compare(a, b) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

    double to_double() const;
    /// "num/den" (just "num" when den==1).
    std::string to_string() const;

private:
    BigInt num_, den_;
    void canonicalize();
};

}  // namespace arl
