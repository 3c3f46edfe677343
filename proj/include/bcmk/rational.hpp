#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bcmk {

// Exact scalars are rationals over checked 128-bit integers. Desk-scale
// inputs (small exponents, small coefficients) stay far below the bound;
// anything that would exceed it throws instead of wrapping.
using int128 = __int128;

[[noreturn]] inline void throw_overflow() {
    throw std::overflow_error("exact rational overflow (128-bit bound)");
}

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw_overflow();
    return r;
}

inline int128 checked_sub(int128 a, int128 b) {
    int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw_overflow();
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw_overflow();
    return r;
}

inline int128 int128_abs(int128 a) { return a < 0 ? -a : a; }

inline int128 int128_gcd(int128 a, int128 b) {
    a = int128_abs(a);
    b = int128_abs(b);
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::string int128_to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // -2^127 negates fine into unsigned.
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    std::string s;
    while (u != 0) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}
    Rational(int n) : num_(n) {}
    Rational(int128 n, int128 d) : num_(n), den_(d) { normalize(); }

    static Rational from_string(std::string_view s);

    int128 num() const { return num_; }
    int128 den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        int128 g = int128_gcd(a.den_, b.den_);
        int128 db = b.den_ / g;
        int128 n = checked_add(checked_mul(a.num_, db), checked_mul(b.num_, a.den_ / g));
        return Rational(n, checked_mul(a.den_, db));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        int128 g1 = int128_gcd(a.num_, b.den_);
        int128 g2 = int128_gcd(b.num_, a.den_);
        Rational r;
        r.num_ = checked_mul(a.num_ / g1, b.num_ / g2);
        r.den_ = checked_mul(a.den_ / g2, b.den_ / g1);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        Rational inv;
        inv.num_ = b.den_;
        inv.den_ = b.num_;
        if (inv.den_ < 0) {
            inv.num_ = -inv.num_;
            inv.den_ = -inv.den_;
        }
        return a * inv;
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const { return double(num_) / double(den_); }

    // "p" for integers, "p/q" otherwise.
    std::string str() const {
        std::string s = int128_to_string(num_);
        if (den_ != 1) {
            s += '/';
            s += int128_to_string(den_);
        }
        return s;
    }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        int128 g = int128_gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    int128 num_ = 0;
    int128 den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// Accepts "123", "-12.75", "3/4". Exact: decimals become p/10^k.
inline Rational Rational::from_string(std::string_view s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    auto digits = [&](int128& out) {
        size_t start = i;
        out = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            out = checked_add(checked_mul(out, 10), s[i] - '0');
            ++i;
        }
        return i > start;
    };
    int128 ip = 0;
    if (!digits(ip)) throw std::invalid_argument("malformed number: " + std::string(s));
    int128 num = ip, den = 1;
    if (i < s.size() && s[i] == '.') {
        ++i;
        size_t start = i;
        int128 frac = 0;
        if (!digits(frac)) throw std::invalid_argument("malformed number: " + std::string(s));
        for (size_t k = start; k < i; ++k) den = checked_mul(den, 10);
        num = checked_add(checked_mul(num, den), frac);
    } else if (i < s.size() && s[i] == '/') {
        ++i;
        if (!digits(den) || den == 0)
            throw std::invalid_argument("malformed fraction: " + std::string(s));
    }
    if (i != s.size()) throw std::invalid_argument("malformed number: " + std::string(s));
    return Rational(neg ? -num : num, den);
}

inline long long gcd_ll(long long a, long long b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long long lcm_ll(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    return std::llabs(a / gcd_ll(a, b) * b);
}

}  // namespace bcmk
