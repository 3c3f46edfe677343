#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "bcmk/scalar.hpp"

namespace bcmk {

// A bicomplex number Z = l1 + j*l2 with l1, l2 in C(i), equivalently
// Z = x + i y + j v + k t with k = ij, or Z = z1*e + z2*edag in the
// idempotent basis e = (1+ij)/2, edag = (1-ij)/2.
//
// Backends: S = Rational carries the exact lane (arithmetic, conjugations,
// idempotent views, norm_complex_sq, zero-divisor logic, inversion);
// S = double additionally supports the metric/angular operations
// (norm_euclid, norm_complex, arguments, polar forms, projections).
template <class S>
struct Bicomplex {
    using C = Cplx<S>;

    C l1{};  // C(i) part
    C l2{};  // j coefficient

    Bicomplex() = default;
    Bicomplex(C a) : l1(std::move(a)) {}
    Bicomplex(C a, C b) : l1(std::move(a)), l2(std::move(b)) {}
    Bicomplex(S x, S y, S v, S t) : l1(x, y), l2(v, t) {}

    S x() const { return real(l1); }
    S y() const { return imag(l1); }
    S v() const { return real(l2); }
    S t() const { return imag(l2); }

    static Bicomplex zero() { return {}; }
    static Bicomplex one() { return Bicomplex(C(S(1), S(0))); }
    static Bicomplex unit_i() { return Bicomplex(C(S(0), S(1))); }
    static Bicomplex unit_j() { return Bicomplex(C(S(0), S(0)), C(S(1), S(0))); }
    static Bicomplex unit_k() { return Bicomplex(C(S(0), S(0)), C(S(0), S(1))); }
    // e = (1+k)/2, edag = (1-k)/2
    static Bicomplex e() {
        return Bicomplex(S(1) / S(2), S(0), S(0), S(1) / S(2));
    }
    static Bicomplex edag() {
        return Bicomplex(S(1) / S(2), S(0), S(0), S(0) - S(1) / S(2));
    }

    bool is_zero() const {
        return scalar_is_zero(x()) && scalar_is_zero(y()) && scalar_is_zero(v()) &&
               scalar_is_zero(t());
    }

    Bicomplex operator-() const { return Bicomplex(-l1, -l2); }

    friend Bicomplex operator+(const Bicomplex& a, const Bicomplex& b) {
        return Bicomplex(a.l1 + b.l1, a.l2 + b.l2);
    }
    friend Bicomplex operator-(const Bicomplex& a, const Bicomplex& b) {
        return Bicomplex(a.l1 - b.l1, a.l2 - b.l2);
    }
    friend Bicomplex operator*(const Bicomplex& a, const Bicomplex& b) {
        return Bicomplex(a.l1 * b.l1 - a.l2 * b.l2, a.l1 * b.l2 + a.l2 * b.l1);
    }
    friend Bicomplex operator*(const Bicomplex& a, const C& s) {
        return Bicomplex(a.l1 * s, a.l2 * s);
    }
    friend Bicomplex operator*(const C& s, const Bicomplex& a) { return a * s; }
    friend Bicomplex operator*(const Bicomplex& a, const S& s) {
        return a * C(s, S(0));
    }
    friend Bicomplex operator*(const S& s, const Bicomplex& a) { return a * s; }

    Bicomplex& operator+=(const Bicomplex& b) { return *this = *this + b; }
    Bicomplex& operator-=(const Bicomplex& b) { return *this = *this - b; }
    Bicomplex& operator*=(const Bicomplex& b) { return *this = *this * b; }

    friend bool operator==(const Bicomplex& a, const Bicomplex& b) {
        return a.l1 == b.l1 && a.l2 == b.l2;
    }
    friend bool operator!=(const Bicomplex& a, const Bicomplex& b) { return !(a == b); }
};

using BC = Bicomplex<double>;
using BCQ = Bicomplex<Rational>;

inline BC to_double(const BCQ& z) {
    return BC(to_double(z.l1), to_double(z.l2));
}

template <class S>
struct IdempotentPair {
    Cplx<S> z1{};
    Cplx<S> z2{};
};

// z1 = l1 - i*l2, z2 = l1 + i*l2; both views round-trip exactly in the
// exact backend.
template <class S>
IdempotentPair<S> to_idempotent(const Bicomplex<S>& z) {
    Cplx<S> I(S(0), S(1));
    return {z.l1 - I * z.l2, z.l1 + I * z.l2};
}

template <class S>
Bicomplex<S> from_idempotent(const IdempotentPair<S>& p) {
    Cplx<S> I(S(0), S(1));
    Cplx<S> half(S(1) / S(2), S(0));
    return Bicomplex<S>((p.z1 + p.z2) * half, I * (p.z1 - p.z2) * half);
}

template <class S>
Bicomplex<S> from_idempotent(const Cplx<S>& z1, const Cplx<S>& z2) {
    return from_idempotent(IdempotentPair<S>{z1, z2});
}

enum class ConjKind : std::uint8_t { Tilde, Hat, Bar };

// tilde: conj(l1) - j conj(l2);  hat: l1 - j l2;  bar: conj(l1) + j conj(l2).
// In idempotent coordinates: tilde = componentwise conjugate, hat = swap,
// bar = swap + conjugate.
template <class S>
Bicomplex<S> conj_tilde(const Bicomplex<S>& z) {
    return Bicomplex<S>(conj(z.l1), -conj(z.l2));
}
template <class S>
Bicomplex<S> conj_hat(const Bicomplex<S>& z) {
    return Bicomplex<S>(z.l1, -z.l2);
}
template <class S>
Bicomplex<S> conj_bar(const Bicomplex<S>& z) {
    return Bicomplex<S>(conj(z.l1), conj(z.l2));
}

template <class S>
Bicomplex<S> conjugate(ConjKind kind, const Bicomplex<S>& z) {
    switch (kind) {
        case ConjKind::Tilde: return conj_tilde(z);
        case ConjKind::Hat: return conj_hat(z);
        case ConjKind::Bar: return conj_bar(z);
    }
    throw std::logic_error("bad ConjKind");
}

// Composing two distinct conjugations yields the third.
inline ConjKind compose(ConjKind a, ConjKind b) {
    if (a == b) throw std::logic_error("composition of equal conjugations is the identity");
    int s = int(a) + int(b);  // 0+1->2, 0+2->1, 1+2->0  (Tilde=0, Hat=1, Bar=2)
    return ConjKind(3 - s);
}

// lambda1^2 + lambda2^2 = z1*z2; vanishes exactly on ZD union {0}.
template <class S>
Cplx<S> norm_complex_sq(const Bicomplex<S>& z) {
    return z.l1 * z.l1 + z.l2 * z.l2;
}

template <class S>
Bicomplex<S> pow(Bicomplex<S> base, unsigned e) {
    Bicomplex<S> r = Bicomplex<S>::one();
    while (e != 0) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Exact-or-tolerance zero-divisor test: nonzero Z with min(|z1|,|z2|)
// below tol * ||Z||. Exact backend uses literal equality (tol ignored).
inline bool is_zero_divisor(const BCQ& z, double /*tol*/ = 0.0) {
    if (z.is_zero()) return false;
    auto p = to_idempotent(z);
    return (p.z1 == CxQ{}) || (p.z2 == CxQ{});
}

inline double norm_euclid(const BC& z) {
    return std::sqrt(std::norm(z.l1) + std::norm(z.l2));
}

inline bool is_zero_divisor(const BC& z, double tol = 1e-12) {
    if (z.is_zero()) return false;
    auto p = to_idempotent(z);
    return std::min(std::abs(p.z1), std::abs(p.z2)) <= tol * norm_euclid(z);
}

template <class S>
bool is_invertible(const Bicomplex<S>& z, double tol = 1e-12) {
    return !z.is_zero() && !is_zero_divisor(z, tol);
}

// Componentwise reciprocal in the idempotent view. Empty on ZD and 0.
template <class S>
std::optional<Bicomplex<S>> try_inverse(const Bicomplex<S>& z, double tol = 1e-12) {
    if (!is_invertible(z, tol)) return std::nullopt;
    auto p = to_idempotent(z);
    Cplx<S> one(S(1), S(0));
    return from_idempotent<S>(one / p.z1, one / p.z2);
}

template <class S>
Bicomplex<S> inverse(const Bicomplex<S>& z, double tol = 1e-12) {
    auto r = try_inverse(z, tol);
    if (!r) throw std::domain_error("bicomplex inverse of zero divisor or zero");
    return *r;
}

template <class S>
Bicomplex<S> operator/(const Bicomplex<S>& a, const Bicomplex<S>& b) {
    return a * inverse(b);
}

// ---- metric / angular operations (double backend only) ----

// Hyperbolic norm value (|z1|, |z2|), a point of the closed positive
// hyperbolic quadrant. Zero divisors land on its boundary.
struct HyperbolicValue {
    double nu = 0.0;  // e component
    double mu = 0.0;  // edag component

    friend HyperbolicValue operator*(const HyperbolicValue& a, const HyperbolicValue& b) {
        return {a.nu * b.nu, a.mu * b.mu};
    }
    friend HyperbolicValue operator+(const HyperbolicValue& a, const HyperbolicValue& b) {
        return {a.nu + b.nu, a.mu + b.mu};
    }
};

// componentwise partial order on hyperbolic values
inline bool hyp_leq(const HyperbolicValue& a, const HyperbolicValue& b, double slack = 0.0) {
    return a.nu <= b.nu + slack && a.mu <= b.mu + slack;
}

inline HyperbolicValue norm_hyperbolic(const BC& z) {
    auto p = to_idempotent(z);
    return {std::abs(p.z1), std::abs(p.z2)};
}

// Branch rule of the complex-valued norm: nonnegative real radicands take
// the principal root, everything else the root with positive imaginary part.
inline std::complex<double> norm_complex(const BC& z) {
    std::complex<double> w = norm_complex_sq(z);
    if (w.imag() == 0.0) {
        if (w.real() >= 0.0) return {std::sqrt(w.real()), 0.0};
        return {0.0, std::sqrt(-w.real())};
    }
    std::complex<double> r = std::sqrt(w);
    return r.imag() < 0.0 ? -r : r;
}

// Complex angle with Re(theta) in [0, 2*pi).
struct ComplexAngle {
    std::complex<double> theta{};
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

// Principal complex argument: exp(i*theta) = z2 / ||Z||_i, equivalently
// theta = -i log(w1 + i w2) with w = (l1, l2)/||Z||_i, shifted into [0,2pi).
inline ComplexAngle arg_complex(const BC& z, double tol = 1e-12) {
    if (!is_invertible(z, tol))
        throw std::domain_error("arg_complex on zero divisor or zero");
    std::complex<double> rho = norm_complex(z);
    std::complex<double> w = (z.l1 + std::complex<double>(0, 1) * z.l2) / rho;
    std::complex<double> theta = std::complex<double>(0, -1) * std::log(w);
    theta = {wrap_angle(theta.real()), theta.imag()};
    return {theta};
}

// cos(theta) + j sin(theta); lies on the complex unit circle (the
// idempotent components exp(-i theta), exp(i theta) multiply to 1).
inline BC exp_j(std::complex<double> theta) {
    return BC(std::cos(theta), std::sin(theta));
}
inline BC exp_j(const ComplexAngle& a) { return exp_j(a.theta); }

struct PolarForm {
    std::complex<double> rho{};  // value of ||Z||_i, in the closed upper half plane
    ComplexAngle theta{};
};

inline PolarForm polar_form(const BC& z, double tol = 1e-12) {
    return {norm_complex(z), arg_complex(z, tol)};
}

// Z / ||Z||_i, a point of the complex unit circle.
inline BC proj_i(const BC& z, double tol = 1e-12) {
    if (!is_invertible(z, tol)) throw std::domain_error("proj_i on zero divisor or zero");
    std::complex<double> rho = norm_complex(z);
    return BC(z.l1 / rho, z.l2 / rho);
}

// Componentwise phase in the idempotent view, a point of the torus
// S^1 e + S^1 edag.
inline BC proj_k(const BC& z, double tol = 1e-12) {
    if (!is_invertible(z, tol)) throw std::domain_error("proj_k on zero divisor or zero");
    auto p = to_idempotent(z);
    return from_idempotent<double>(p.z1 / std::abs(p.z1), p.z2 / std::abs(p.z2));
}

struct HyperbolicPolarForm {
    double r1 = 0.0;
    double r2 = 0.0;
    double theta1 = 0.0;  // in [0, 2*pi)
    double theta2 = 0.0;  // in [0, 2*pi)
};

inline HyperbolicPolarForm hyperbolic_polar(const BC& z, double tol = 1e-12) {
    if (!is_invertible(z, tol))
        throw std::domain_error("hyperbolic_polar on zero divisor or zero");
    auto p = to_idempotent(z);
    return {std::abs(p.z1), std::abs(p.z2), wrap_angle(std::arg(p.z1)),
            wrap_angle(std::arg(p.z2))};
}

inline BC from_hyperbolic_polar(const HyperbolicPolarForm& h) {
    return from_idempotent<double>(std::polar(h.r1, h.theta1), std::polar(h.r2, h.theta2));
}

}  // namespace bcmk
