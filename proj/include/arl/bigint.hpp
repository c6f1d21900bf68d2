#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace arl {

/// Arbitrary-precision signed integer on 64-bit limbs (little endian).
/// Supports exactly the operations the rational layer needs: ring
/// arithmetic, Euclidean division, gcd, shifts, decimal I/O and a
/// faithful conversion to double.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);
    static BigInt from_uint64(std::uint64_t v);
    static BigInt from_decimal(const std::string& s);

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    /// Truncated division: q = trunc(a/b), r = a - q*b (sign of r follows a).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
    BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
    BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

    BigInt shifted_left(unsigned bits) const;
    BigInt shifted_right(unsigned bits) const;

    static BigInt gcd(BigInt a, BigInt b);
    static BigInt pow(const BigInt& base, unsigned exp);

    /// <0, 0, >0 as a compares to b.
    static int compare(const BigInt& a, const BigInt& b);
    friend bool operator==(const BigInt& a, const BigInt& b) { return compare(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return compare(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

    bool is_power_of_two() const;

    std::string to_decimal() const;
    double to_double() const;
    /// Writes m in [0.5,1) and e with value = m * 2^e (m carries the sign).
    double to_double_scaled(long& exp2) const;
    std::size_t bit_length() const;
    bool fits_int64() const;
    std::int64_t to_int64() const;  // precondition: fits_int64()

private:
    int sign_ = 0;                    // -1, 0, +1
    std::vector<std::uint64_t> mag_;  // normalized: no leading zero limbs

    void normalize();
    static int compare_mag(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
    static std::vector<std::uint64_t> add_mag(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
    // precondition: |a| >= |b|
    static std::vector<std::uint64_t> sub_mag(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
    static std::vector<std::uint64_t> mul_mag(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
    static void divmod_mag(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                           std::vector<std::uint64_t>& q, std::vector<std::uint64_t>& r);
};

}  // namespace arl
