#include "arl/polynomial.hpp"

#include <stdexcept>

namespace arl {

RPoly RPoly::from_poly(const Poly& p) {
    std::vector<Rational> c;
    c.reserve(p.coeffs().size());
    for (double x : p.coeffs()) c.push_back(Rational::from_double(x));
    return RPoly(std::move(c));
}

Rational RPoly::eval(const Rational& t) const {
    Rational v(0);
    for (std::size_t i = c_.size(); i-- > 0;) v = v * t + c_[i];
    return v;
}

bool RPoly::integer_coefficients() const {
    for (const auto& c : c_)
        if (!c.is_integer()) return false;
    return true;
}

int RPoly::sign_at(const Rational& t) const {
    if (is_zero()) return 0;
    // fast path: t = num/2^k with integer coefficients; evaluate
    // sum c_i num^i 2^{k(n-i)} with shifts only, no gcd normalization
    if (t.den().is_power_of_two() && integer_coefficients()) {
        unsigned k = static_cast<unsigned>(t.den().bit_length() - 1);
        const BigInt& num = t.num();
        BigInt acc = c_.back().num();
        for (std::size_t i = c_.size() - 1; i-- > 0;) {
            acc = acc * num + c_[i].num().shifted_left(k * static_cast<unsigned>(c_.size() - 1 - i));
        }
        return acc.sign();
    }
    return eval(t).sign();
}

int RPoly::sign_at_neg_inf() const {
    if (is_zero()) return 0;
    int s = c_.back().sign();
    return (degree() % 2 == 0) ? s : -s;
}

RPoly RPoly::derivative() const {
    if (c_.size() <= 1) return RPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<std::int64_t>(i));
    return RPoly(std::move(d));
}

RPoly operator*(const RPoly& a, const RPoly& b) {
    if (a.is_zero() || b.is_zero()) return RPoly();
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return RPoly(std::move(out));
}

RPoly operator-(const RPoly& a, const RPoly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < out.size(); ++i) {
        Rational va = i < a.c_.size() ? a.c_[i] : Rational(0);
        Rational vb = i < b.c_.size() ? b.c_[i] : Rational(0);
        out[i] = va - vb;
    }
    return RPoly(std::move(out));
}

RPoly RPoly::scaled(const Rational& k) const {
    std::vector<Rational> out = c_;
    for (auto& x : out) x *= k;
    return RPoly(std::move(out));
}

RPoly RPoly::primitive_part() const {
    if (is_zero()) return RPoly();
    // common denominator, then gcd of integer numerators
    BigInt den(1);
    for (const auto& x : c_) den = den * x.den() / BigInt::gcd(den, x.den());
    BigInt g(0);
    std::vector<BigInt> ints;
    ints.reserve(c_.size());
    for (const auto& x : c_) {
        BigInt v = x.num() * (den / x.den());
        g = BigInt::gcd(g, v);
        ints.push_back(std::move(v));
    }
    std::vector<Rational> out;
    out.reserve(ints.size());
    for (auto& v : ints) out.emplace_back(v / g, BigInt(1));
    return RPoly(std::move(out));
}

Poly RPoly::to_poly() const {
    std::vector<double> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(x.to_double());
    return Poly(std::move(out));
}

namespace {

// remainder of a / b over the rationals (degrees small, growth tamed by
// taking primitive parts between steps)
RPoly rpoly_rem(const RPoly& a, const RPoly& b) {
    std::vector<Rational> r = a.coeffs();
    const auto& bc = b.coeffs();
    const Rational lead = bc.back();
    while (r.size() >= bc.size()) {
        Rational f = r.back() / lead;
        std::size_t off = r.size() - bc.size();
        for (std::size_t i = 0; i < bc.size(); ++i) r[off + i] -= f * bc[i];
        r.pop_back();
        while (!r.empty() && r.back().is_zero()) r.pop_back();
        if (r.size() < bc.size()) break;
    }
    return RPoly(std::move(r));
}

RPoly rpoly_gcd(RPoly a, RPoly b) {
    a = a.primitive_part();
    b = b.primitive_part();
    while (!b.is_zero()) {
        RPoly r = rpoly_rem(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

SturmSequence::SturmSequence(const RPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm: zero polynomial");
    RPoly g = rpoly_gcd(p, p.derivative());
    RPoly sf = p;
    if (g.degree() > 0) {
        // exact division p / g
        std::vector<Rational> q(p.coeffs().size() - g.coeffs().size() + 1, Rational(0));
        std::vector<Rational> r = p.coeffs();
        const auto& gc = g.coeffs();
        while (r.size() >= gc.size()) {
            Rational f = r.back() / gc.back();
            std::size_t off = r.size() - gc.size();
            q[off] = f;
            for (std::size_t i = 0; i < gc.size(); ++i) r[off + i] -= f * gc[i];
            r.pop_back();
            while (!r.empty() && r.back().is_zero()) r.pop_back();
            if (r.size() < gc.size()) break;
        }
        sf = RPoly(std::move(q));
    }
    chain_.push_back(sf.primitive_part());
    if (sf.degree() >= 1) {
        chain_.push_back(sf.derivative().primitive_part());
        while (chain_.back().degree() >= 0) {
            RPoly r = rpoly_rem(chain_[chain_.size() - 2], chain_.back());
            if (r.is_zero()) break;
            // negate the remainder, reduce content
            chain_.push_back(r.scaled(Rational(-1)).primitive_part());
            if (chain_.back().degree() == 0) break;
        }
    }
}

int SturmSequence::sign_changes_at(const Rational& t) const {
    int changes = 0, prev = 0;
    for (const auto& q : chain_) {
        int s = q.sign_at(t);
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

int SturmSequence::sign_changes_at_inf(int dir) const {
    int changes = 0, prev = 0;
    for (const auto& q : chain_) {
        int s = dir > 0 ? q.sign_at_pos_inf() : q.sign_at_neg_inf();
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

int SturmSequence::count_roots(const Rational& a, const Rational& b) const {
    if (!(a < b)) throw std::invalid_argument("Sturm: empty interval");
    return sign_changes_at(a) - sign_changes_at(b);
}

int SturmSequence::count_roots_real_line() const { return sign_changes_at_inf(-1) - sign_changes_at_inf(+1); }

Rational SturmSequence::root_bound() const {
    const auto& c = chain_.front().coeffs();
    Rational lead = c.back().abs();
    Rational m(0);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        Rational q = c[i].abs() / lead;
        if (q > m) m = q;
    }
    // round up to a power of two: every bisection midpoint stays dyadic
    Rational bound = m + Rational(1);
    Rational p2(1);
    while (p2 < bound) p2 = p2 * Rational(2);
    return p2;
}

std::vector<RootInterval> SturmSequence::isolate_roots(const Rational& width) const {
    std::vector<RootInterval> out;
    int total = count_roots_real_line();
    if (total == 0) return out;
    Rational bound = root_bound();
    struct Seg {
        Rational a, b;
        int count;
    };
    std::vector<Seg> stack{{-bound, bound, count_roots(-bound, bound)}};
    // roots exactly at -bound are impossible (Cauchy bound is strict)
    std::vector<Seg> isolated;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.count == 0) continue;
        if (s.count == 1) {
            isolated.push_back(s);
            continue;
        }
        Rational mid = (s.a + s.b) * Rational(1, 2);
        // child counts derive from the parent count: a fresh count of the
        // right half would re-include roots parked exactly on its endpoint
        if (chain_.front().sign_at(mid) == 0) {
            out.push_back(RootInterval{mid, mid});
            int left = count_roots(s.a, mid) - 1;  // (a, mid] includes mid
            int right = s.count - 1 - left;
            if (left > 0) stack.push_back({s.a, mid, left});
            if (right > 0) stack.push_back({mid, s.b, right});
            continue;
        }
        int left = count_roots(s.a, mid);
        int right = s.count - left;
        if (left > 0) stack.push_back({s.a, mid, left});
        if (right > 0) stack.push_back({mid, s.b, right});
    }
    // refine each isolated bracket by count bisection; sign bisection would
    // misbehave when a bracket endpoint coincides with a neighboring root
    const RPoly& sf = chain_.front();
    for (auto& s : isolated) {
        Rational a = s.a, b = s.b;
        while (b - a > width) {
            Rational mid = (a + b) * Rational(1, 2);
            if (sf.sign_at(mid) == 0) {
                a = b = mid;
                break;
            }
            if (count_roots(a, mid) == 1)
                b = mid;
            else
                a = mid;
        }
        out.push_back(RootInterval{a, b});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return out;
}

std::vector<double> real_roots(const RPoly& p, double width) {
    if (p.degree() <= 0) return {};
    SturmSequence sturm(p);
    auto iv = sturm.isolate_roots(Rational::from_double(width));
    std::vector<double> out;
    out.reserve(iv.size());
    for (const auto& r : iv) out.push_back(r.midpoint());
    return out;
}

}  // namespace arl
