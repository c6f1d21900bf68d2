#include "arl/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arl {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    u64 m = v < 0 ? (~static_cast<u64>(v) + 1) : static_cast<u64>(v);
    mag_.push_back(m);
}

BigInt BigInt::from_uint64(u64 v) {
    BigInt r;
    if (v) {
        r.sign_ = 1;
        r.mag_.push_back(v);
    }
    return r;
}

void BigInt::normalize() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::compare_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<u64> BigInt::add_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    const auto& lo = a.size() < b.size() ? a : b;
    const auto& hi = a.size() < b.size() ? b : a;
    std::vector<u64> out(hi.size() + 1, 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        u128 s = static_cast<u128>(hi[i]) + (i < lo.size() ? lo[i] : 0) + carry;
        out[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    out[hi.size()] = carry;
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<u64> BigInt::sub_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> out(a.size(), 0);
    u64 borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        u64 bi = i < b.size() ? b[i] : 0;
        u64 t = a[i] - bi;
        u64 borrow2 = a[i] < bi;
        u64 t2 = t - borrow;
        borrow2 |= (t < borrow);
        out[i] = t2;
        borrow = borrow2;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<u64> BigInt::mul_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            u128 cur = static_cast<u128>(a[i]) * b[j] + out[i + j] + carry;
            out[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        std::size_t k = i + b.size();
        while (carry) {
            u128 cur = static_cast<u128>(out[k]) + carry;
            out[k] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
            ++k;
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

namespace {

std::vector<u64> shift_left_mag(const std::vector<u64>& a, unsigned bits) {
    if (a.empty()) return {};
    unsigned limbs = bits / 64, rem = bits % 64;
    std::vector<u64> out(a.size() + limbs + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i + limbs] |= rem ? (a[i] << rem) : a[i];
        if (rem) out[i + limbs + 1] |= a[i] >> (64 - rem);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<u64> shift_right_mag(const std::vector<u64>& a, unsigned bits) {
    unsigned limbs = bits / 64, rem = bits % 64;
    if (limbs >= a.size()) return {};
    std::vector<u64> out(a.size() - limbs, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        u64 lo = a[i + limbs] >> rem;
        u64 hi = (rem && i + limbs + 1 < a.size()) ? (a[i + limbs + 1] << (64 - rem)) : 0;
        out[i] = rem ? (lo | hi) : a[i + limbs];
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

}  // namespace

// Knuth algorithm D on 64-bit limbs.
void BigInt::divmod_mag(const std::vector<u64>& a, const std::vector<u64>& b,
                        std::vector<u64>& q, std::vector<u64>& r) {
    if (b.empty()) throw std::domain_error("BigInt: division by zero");
    if (compare_mag(a, b) < 0) {
        q.clear();
        r = a;
        return;
    }
    if (b.size() == 1) {
        q.assign(a.size(), 0);
        u128 rem = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            u128 cur = (rem << 64) | a[i];
            q[i] = static_cast<u64>(cur / b[0]);
            rem = cur % b[0];
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r.clear();
        if (rem) r.push_back(static_cast<u64>(rem));
        return;
    }

    unsigned shift = 0;
    u64 top = b.back();
    while (!(top & (1ULL << 63))) {
        top <<= 1;
        ++shift;
    }
    std::vector<u64> u = shift_left_mag(a, shift);
    std::vector<u64> v = shift_left_mag(b, shift);
    const std::size_t n = v.size();
    const std::size_t m = u.size() - n;
    u.push_back(0);  // u has m+n+1 limbs
    q.assign(m + 1, 0);

    for (std::size_t j = m + 1; j-- > 0;) {
        u128 num = (static_cast<u128>(u[j + n]) << 64) | u[j + n - 1];
        u128 qhat = num / v[n - 1];
        u128 rhat = num % v[n - 1];
        const u128 B = static_cast<u128>(1) << 64;
        if (qhat >= B) {
            qhat = B - 1;
            rhat = num - qhat * v[n - 1];
        }
        while (rhat < B && qhat * v[n - 2] > ((rhat << 64) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
        }
        // multiply-subtract
        u128 borrow = 0, carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            u128 p = qhat * v[i] + carry;
            carry = p >> 64;
            u64 plo = static_cast<u64>(p);
            u64 ui = u[j + i];
            u64 t = ui - plo;
            u64 b2 = ui < plo;
            u64 t2 = t - static_cast<u64>(borrow);
            b2 |= t < static_cast<u64>(borrow);
            u[j + i] = t2;
            borrow = b2;
        }
        u128 top_sub = static_cast<u128>(u[j + n]) - carry - borrow;
        u[j + n] = static_cast<u64>(top_sub);
        bool went_negative = (top_sub >> 64) != 0;
        if (went_negative) {
            --qhat;
            u64 c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                u128 s = static_cast<u128>(u[j + i]) + v[i] + c;
                u[j + i] = static_cast<u64>(s);
                c = static_cast<u64>(s >> 64);
            }
            u[j + n] += c;
        }
        q[j] = static_cast<u64>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    u.resize(n);
    r = shift_right_mag(u, shift);
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.mag_ = BigInt::add_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_;
    } else {
        int c = BigInt::compare_mag(a.mag_, b.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            r.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
            r.sign_ = b.sign_;
        }
    }
    r.normalize();
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
    r.sign_ = a.sign_ * b.sign_;
    r.normalize();
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    std::vector<u64> qm, rm;
    divmod_mag(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    r.mag_ = std::move(rm);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::shifted_left(unsigned bits) const {
    BigInt r;
    r.mag_ = shift_left_mag(mag_, bits);
    r.sign_ = r.mag_.empty() ? 0 : sign_;
    return r;
}

BigInt BigInt::shifted_right(unsigned bits) const {
    BigInt r;
    r.mag_ = shift_right_mag(mag_, bits);
    r.sign_ = r.mag_.empty() ? 0 : sign_;
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInt BigInt::pow(const BigInt& base, unsigned exp) {
    BigInt result(1), acc = base;
    while (exp) {
        if (exp & 1u) result *= acc;
        exp >>= 1u;
        if (exp) acc *= acc;
    }
    return result;
}

int BigInt::compare(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = compare_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c : -c;
}

BigInt BigInt::from_decimal(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty string");
    std::size_t i = 0;
    int sign = 1;
    if (s[0] == '+' || s[0] == '-') {
        sign = s[0] == '-' ? -1 : 1;
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
    BigInt r;
    const BigInt chunk_base(1000000000000000000LL);
    while (i < s.size()) {
        std::size_t take = std::min<std::size_t>(18, s.size() - i);
        u64 part = 0;
        BigInt scale(1);
        for (std::size_t k = 0; k < take; ++k, ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
            part = part * 10 + static_cast<u64>(s[i] - '0');
        }
        for (std::size_t k = 0; k < take; ++k) scale *= BigInt(10);
        r = r * scale + BigInt::from_uint64(part);
    }
    if (sign < 0) r = -r;
    return r;
}

std::string BigInt::to_decimal() const {
    if (is_zero()) return "0";
    BigInt cur = abs();
    const BigInt chunk(1000000000000000000LL);
    std::vector<u64> parts;
    while (!cur.is_zero()) {
        BigInt q, r;
        divmod(cur, chunk, q, r);
        parts.push_back(r.mag_.empty() ? 0 : r.mag_[0]);
        cur = std::move(q);
    }
    std::string out = sign_ < 0 ? "-" : "";
    out += std::to_string(parts.back());
    for (std::size_t i = parts.size() - 1; i-- > 0;) {
        std::string piece = std::to_string(parts[i]);
        out += std::string(18 - piece.size(), '0') + piece;
    }
    return out;
}

bool BigInt::is_power_of_two() const {
    if (sign_ <= 0) return false;
    for (std::size_t i = 0; i + 1 < mag_.size(); ++i)
        if (mag_[i] != 0) return false;
    u64 top = mag_.back();
    return (top & (top - 1)) == 0;
}

std::size_t BigInt::bit_length() const {
    if (mag_.empty()) return 0;
    u64 top = mag_.back();
    std::size_t bits = (mag_.size() - 1) * 64;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

double BigInt::to_double_scaled(long& exp2) const {
    if (is_zero()) {
        exp2 = 0;
        return 0.0;
    }
    std::size_t bl = bit_length();
    // take the top 64 bits
    BigInt top = bl > 64 ? shifted_right(static_cast<unsigned>(bl - 64)) : abs();
    double m = 0.0;
    for (std::size_t i = top.mag_.size(); i-- > 0;) m = m * 18446744073709551616.0 + static_cast<double>(top.mag_[i]);
    long e = static_cast<long>(bl > 64 ? bl - 64 : 0);
    int adj;
    m = std::frexp(m, &adj);
    exp2 = e + adj;
    return sign_ < 0 ? -m : m;
}

double BigInt::to_double() const {
    long e;
    double m = to_double_scaled(e);
    return std::ldexp(m, static_cast<int>(std::min<long>(e, 3000)));
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 1) return false;
    if (mag_.empty()) return true;
    if (sign_ > 0) return mag_[0] <= 0x7fffffffffffffffULL;
    return mag_[0] <= 0x8000000000000000ULL;
}

std::int64_t BigInt::to_int64() const {
    if (mag_.empty()) return 0;
    return sign_ > 0 ? static_cast<std::int64_t>(mag_[0]) : -static_cast<std::int64_t>(mag_[0] - 1) - 1;
}

}  // namespace arl
