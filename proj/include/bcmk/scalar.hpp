#pragma once

#include <complex>
#include <type_traits>

#include "bcmk/rational.hpp"

namespace bcmk {

// Minimal complex type over an exact scalar. std::complex is only
// specified for floating-point types, so the Rational lane gets its own.
template <class S>
struct Cx {
    S re{};
    S im{};

    Cx() = default;
    Cx(S r) : re(std::move(r)) {}
    Cx(S r, S i) : re(std::move(r)), im(std::move(i)) {}

    Cx operator-() const { return Cx(-re, -im); }

    friend Cx operator+(const Cx& a, const Cx& b) { return Cx(a.re + b.re, a.im + b.im); }
    friend Cx operator-(const Cx& a, const Cx& b) { return Cx(a.re - b.re, a.im - b.im); }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return Cx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Cx operator*(const Cx& a, const S& s) { return Cx(a.re * s, a.im * s); }
    friend Cx operator*(const S& s, const Cx& a) { return a * s; }
    friend Cx operator/(const Cx& a, const Cx& b) {
        S n = b.re * b.re + b.im * b.im;
        if (n.is_zero()) throw std::domain_error("complex division by zero");
        return Cx((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }

    Cx& operator+=(const Cx& b) { return *this = *this + b; }
    Cx& operator-=(const Cx& b) { return *this = *this - b; }
    Cx& operator*=(const Cx& b) { return *this = *this * b; }

    friend bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Cx& a, const Cx& b) { return !(a == b); }
};

template <class S>
Cx<S> conj(const Cx<S>& z) {
    return Cx<S>(z.re, -z.im);
}
template <class S>
S real(const Cx<S>& z) {
    return z.re;
}
template <class S>
S imag(const Cx<S>& z) {
    return z.im;
}

// Backend selection: double uses std::complex, exact scalars use Cx.
template <class S>
struct complex_type {
    using type = Cx<S>;
};
template <>
struct complex_type<double> {
    using type = std::complex<double>;
};
template <class S>
using Cplx = typename complex_type<S>::type;

template <class S>
bool scalar_is_zero(const S& s) {
    return s.is_zero();
}
inline bool scalar_is_zero(double s) { return s == 0.0; }

inline double scalar_to_double(double s) { return s; }
inline double scalar_to_double(const Rational& s) { return s.to_double(); }

using CxQ = Cx<Rational>;

inline std::complex<double> to_double(const CxQ& z) {
    return {z.re.to_double(), z.im.to_double()};
}

}  // namespace bcmk
