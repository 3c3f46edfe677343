#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bcmk/bicomplex.hpp"

namespace bcmk {

// Slot of a monomial factor: the variable itself or one of its conjugates.
enum class Wirt : std::uint8_t { Z = 0, Tilde = 1, Hat = 2, Bar = 3 };

inline Wirt to_wirt(ConjKind k) { return Wirt(int(k) + 1); }

// Exponents past this bound throw instead of wrapping; far above any
// sane polynomial and far below the uint32 range.
inline constexpr std::uint32_t kMaxExponentValue = 1u << 20;

// Per-variable exponents (a, b, c, d) of Z, tilde Z, hat Z, bar Z.
struct ExponentQuad {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t c = 0;
    std::uint32_t d = 0;

    std::uint32_t get(Wirt w) const {
        switch (w) {
            case Wirt::Z: return a;
            case Wirt::Tilde: return b;
            case Wirt::Hat: return c;
            case Wirt::Bar: return d;
        }
        return 0;
    }
    void set(Wirt w, std::uint32_t v) {
        switch (w) {
            case Wirt::Z: a = v; break;
            case Wirt::Tilde: b = v; break;
            case Wirt::Hat: c = v; break;
            case Wirt::Bar: d = v; break;
        }
    }
    std::uint32_t total() const { return a + b + c + d; }
    bool is_trivial() const { return total() == 0; }

    friend bool operator==(const ExponentQuad&, const ExponentQuad&) = default;
};

// Canonical monomial order: descending lexicographic on the flattened
// exponent tuples, so higher powers and lower variable indices print first.
inline int compare_exps(const std::vector<ExponentQuad>& x, const std::vector<ExponentQuad>& y) {
    for (size_t i = 0; i < x.size(); ++i) {
        std::uint32_t xs[4] = {x[i].a, x[i].b, x[i].c, x[i].d};
        std::uint32_t ys[4] = {y[i].a, y[i].b, y[i].c, y[i].d};
        for (int k = 0; k < 4; ++k) {
            if (xs[k] != ys[k]) return xs[k] > ys[k] ? -1 : 1;
        }
    }
    return 0;
}

template <class S>
struct MixedMonomial {
    Bicomplex<S> coeff;
    std::vector<ExponentQuad> exps;  // one quad per variable
};

enum class PolyClass { Holomorphic, Tilde, Hat, Bar, General };

inline const char* poly_class_name(PolyClass c) {
    switch (c) {
        case PolyClass::Holomorphic: return "holomorphic";
        case PolyClass::Tilde: return "tilde";
        case PolyClass::Hat: return "hat";
        case PolyClass::Bar: return "bar";
        case PolyClass::General: return "general";
    }
    return "?";
}

// A bicomplex mixed polynomial in n variables, kept normalized: distinct
// exponent patterns in canonical order, no zero coefficients.
template <class S>
class MixedPolynomial {
public:
    MixedPolynomial() = default;
    explicit MixedPolynomial(int n) : n_(n) {}

    static MixedPolynomial zero(int n) { return MixedPolynomial(n); }

    static MixedPolynomial constant(int n, Bicomplex<S> c) {
        MixedPolynomial p(n);
        if (!c.is_zero()) p.monos_.push_back({std::move(c), std::vector<ExponentQuad>(n)});
        return p;
    }

    static MixedPolynomial variable(int n, int var, Wirt w = Wirt::Z) {
        if (var < 0 || var >= n) throw std::invalid_argument("variable index out of range");
        MixedPolynomial p(n);
        MixedMonomial<S> m{Bicomplex<S>::one(), std::vector<ExponentQuad>(n)};
        m.exps[var].set(w, 1);
        p.monos_.push_back(std::move(m));
        return p;
    }

    static MixedPolynomial from_monomials(int n, std::vector<MixedMonomial<S>> ms) {
        MixedPolynomial p(n);
        p.monos_ = std::move(ms);
        p.renormalize();
        return p;
    }

    int nvars() const { return n_; }
    const std::vector<MixedMonomial<S>>& monomials() const { return monos_; }
    bool is_zero() const { return monos_.empty(); }

    friend MixedPolynomial operator+(const MixedPolynomial& x, const MixedPolynomial& y) {
        check_arity(x, y);
        MixedPolynomial r(x.n_);
        r.monos_ = x.monos_;
        r.monos_.insert(r.monos_.end(), y.monos_.begin(), y.monos_.end());
        r.renormalize();
        return r;
    }
    friend MixedPolynomial operator-(const MixedPolynomial& x, const MixedPolynomial& y) {
        return x + (-y);
    }
    MixedPolynomial operator-() const {
        MixedPolynomial r = *this;
        for (auto& m : r.monos_) m.coeff = -m.coeff;
        return r;
    }
    friend MixedPolynomial operator*(const MixedPolynomial& x, const MixedPolynomial& y) {
        check_arity(x, y);
        auto bump = [](std::uint32_t& lhs, std::uint32_t rhs) {
            lhs += rhs;
            if (lhs > kMaxExponentValue) throw std::overflow_error("monomial exponent overflow");
        };
        MixedPolynomial r(x.n_);
        for (const auto& mx : x.monos_)
            for (const auto& my : y.monos_) {
                MixedMonomial<S> m{mx.coeff * my.coeff, mx.exps};
                for (int i = 0; i < x.n_; ++i) {
                    bump(m.exps[i].a, my.exps[i].a);
                    bump(m.exps[i].b, my.exps[i].b);
                    bump(m.exps[i].c, my.exps[i].c);
                    bump(m.exps[i].d, my.exps[i].d);
                }
                r.monos_.push_back(std::move(m));
            }
        r.renormalize();
        return r;
    }
    friend MixedPolynomial operator*(const MixedPolynomial& x, const Bicomplex<S>& c) {
        MixedPolynomial r = x;
        for (auto& m : r.monos_) m.coeff = m.coeff * c;
        r.renormalize();
        return r;
    }
    friend MixedPolynomial operator*(const Bicomplex<S>& c, const MixedPolynomial& x) {
        return x * c;
    }
    friend MixedPolynomial operator*(const MixedPolynomial& x, const S& s) {
        return x * Bicomplex<S>(Cplx<S>(s, S(0)));
    }
    friend MixedPolynomial operator*(const S& s, const MixedPolynomial& x) { return x * s; }

    MixedPolynomial pow(unsigned e) const {
        MixedPolynomial r = constant(n_, Bicomplex<S>::one());
        MixedPolynomial b = *this;
        while (e != 0) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const MixedPolynomial& x, const MixedPolynomial& y) {
        if (x.n_ != y.n_ || x.monos_.size() != y.monos_.size()) return false;
        for (size_t i = 0; i < x.monos_.size(); ++i)
            if (x.monos_[i].exps != y.monos_[i].exps || x.monos_[i].coeff != y.monos_[i].coeff)
                return false;
        return true;
    }
    friend bool operator!=(const MixedPolynomial& x, const MixedPolynomial& y) {
        return !(x == y);
    }

    // sum of coeff * prod Z^a tildeZ^b hatZ^c barZ^d
    Bicomplex<S> eval(std::span<const Bicomplex<S>> zs) const {
        if (int(zs.size()) != n_) throw std::invalid_argument("eval arity mismatch");
        std::vector<Bicomplex<S>> zt(n_), zh(n_), zb(n_);
        for (int i = 0; i < n_; ++i) {
            zt[i] = conj_tilde(zs[i]);
            zh[i] = conj_hat(zs[i]);
            zb[i] = conj_bar(zs[i]);
        }
        return eval_tuple(zs, zt, zh, zb);
    }

    // Evaluation with all four slot tuples supplied independently (the
    // polar action transforms the conjugates by their own rules).
    Bicomplex<S> eval_tuple(std::span<const Bicomplex<S>> z, std::span<const Bicomplex<S>> zt,
                            std::span<const Bicomplex<S>> zh,
                            std::span<const Bicomplex<S>> zb) const {
        if (int(z.size()) != n_ || int(zt.size()) != n_ || int(zh.size()) != n_ ||
            int(zb.size()) != n_)
            throw std::invalid_argument("eval arity mismatch");
        Bicomplex<S> acc;
        for (const auto& m : monos_) {
            Bicomplex<S> term = m.coeff;
            for (int i = 0; i < n_; ++i) {
                const ExponentQuad& q = m.exps[i];
                if (q.a) term *= bcmk::pow(z[i], q.a);
                if (q.b) term *= bcmk::pow(zt[i], q.b);
                if (q.c) term *= bcmk::pow(zh[i], q.c);
                if (q.d) term *= bcmk::pow(zb[i], q.d);
            }
            acc += term;
        }
        return acc;
    }

    // Formal Wirtinger-style derivative: the four conjugate variables are
    // independent coordinates, so the slot exponent drops by one with the
    // usual integer factor.
    MixedPolynomial sym_partial(Wirt w, int var) const {
        if (var < 0 || var >= n_) throw std::invalid_argument("variable index out of range");
        MixedPolynomial r(n_);
        for (const auto& m : monos_) {
            std::uint32_t e = m.exps[var].get(w);
            if (e == 0) continue;
            MixedMonomial<S> d{m.coeff * S(int(e)), m.exps};
            d.exps[var].set(w, e - 1);
            r.monos_.push_back(std::move(d));
        }
        r.renormalize();
        return r;
    }

    // Multiply by the slot variable itself (used to form Euler combinations).
    MixedPolynomial mul_var(Wirt w, int var) const {
        MixedPolynomial r = *this;
        for (auto& m : r.monos_) m.exps[var].set(w, m.exps[var].get(w) + 1);
        r.renormalize();
        return r;
    }

    PolyClass classify() const {
        bool any_b = false, any_c = false, any_d = false;
        for (const auto& m : monos_)
            for (const auto& q : m.exps) {
                any_b |= q.b != 0;
                any_c |= q.c != 0;
                any_d |= q.d != 0;
            }
        if (!any_b && !any_c && !any_d) return PolyClass::Holomorphic;
        if (!any_c && !any_d) return PolyClass::Tilde;
        if (!any_b && !any_d) return PolyClass::Hat;
        if (!any_b && !any_c) return PolyClass::Bar;
        return PolyClass::General;
    }

    // Map variables i -> i + offset inside a wider polynomial ring.
    MixedPolynomial widen(int new_n, int offset) const {
        if (offset < 0 || n_ + offset > new_n) throw std::invalid_argument("bad widen");
        MixedPolynomial r(new_n);
        for (const auto& m : monos_) {
            MixedMonomial<S> w{m.coeff, std::vector<ExponentQuad>(new_n)};
            for (int i = 0; i < n_; ++i) w.exps[offset + i] = m.exps[i];
            r.monos_.push_back(std::move(w));
        }
        r.renormalize();
        return r;
    }

private:
    static void check_arity(const MixedPolynomial& x, const MixedPolynomial& y) {
        if (x.n_ != y.n_) throw std::invalid_argument("polynomial arity mismatch");
    }

    void renormalize() {
        for (auto& m : monos_)
            if (int(m.exps.size()) != n_) throw std::invalid_argument("monomial arity mismatch");
        std::sort(monos_.begin(), monos_.end(), [](const auto& x, const auto& y) {
            return compare_exps(x.exps, y.exps) < 0;
        });
        std::vector<MixedMonomial<S>> out;
        for (auto& m : monos_) {
            if (!out.empty() && out.back().exps == m.exps)
                out.back().coeff += m.coeff;
            else
                out.push_back(std::move(m));
        }
        std::erase_if(out, [](const auto& m) { return m.coeff.is_zero(); });
        monos_ = std::move(out);
    }

    int n_ = 0;
    std::vector<MixedMonomial<S>> monos_;
};

using MPolyD = MixedPolynomial<double>;
using MPolyQ = MixedPolynomial<Rational>;

inline MPolyD to_double(const MPolyQ& p) {
    std::vector<MixedMonomial<double>> ms;
    ms.reserve(p.monomials().size());
    for (const auto& m : p.monomials()) ms.push_back({to_double(m.coeff), m.exps});
    return MPolyD::from_monomials(p.nvars(), std::move(ms));
}

// ---- idempotent representation ----

// Complex mixed polynomial in the 2n idempotent coordinates. A quad
// (p, pb, q, qb) at variable i stands for z1_i^p conj(z1_i)^pb
// z2_i^q conj(z2_i)^qb; both components of a pair use this convention.
template <class S>
struct CMixedMonomial {
    Cplx<S> coeff;
    std::vector<ExponentQuad> exps;
};

template <class S>
class ComplexMixedPoly {
public:
    ComplexMixedPoly() = default;
    explicit ComplexMixedPoly(int n) : n_(n) {}

    static ComplexMixedPoly from_monomials(int n, std::vector<CMixedMonomial<S>> ms) {
        ComplexMixedPoly p(n);
        p.monos_ = std::move(ms);
        std::sort(p.monos_.begin(), p.monos_.end(), [](const auto& x, const auto& y) {
            return compare_exps(x.exps, y.exps) < 0;
        });
        std::vector<CMixedMonomial<S>> out;
        for (auto& m : p.monos_) {
            if (!out.empty() && out.back().exps == m.exps)
                out.back().coeff += m.coeff;
            else
                out.push_back(std::move(m));
        }
        std::erase_if(out, [](const auto& m) {
            return scalar_is_zero(real(m.coeff)) && scalar_is_zero(imag(m.coeff));
        });
        p.monos_ = std::move(out);
        return p;
    }

    int nvars() const { return n_; }
    const std::vector<CMixedMonomial<S>>& monomials() const { return monos_; }

    Cplx<S> eval(std::span<const Cplx<S>> z1, std::span<const Cplx<S>> z2) const {
        if (int(z1.size()) != n_ || int(z2.size()) != n_)
            throw std::invalid_argument("eval arity mismatch");
        Cplx<S> acc{};
        for (const auto& m : monos_) {
            Cplx<S> term = m.coeff;
            for (int i = 0; i < n_; ++i) {
                const ExponentQuad& q = m.exps[i];
                for (std::uint32_t k = 0; k < q.a; ++k) term *= z1[i];
                for (std::uint32_t k = 0; k < q.b; ++k) term *= conj(z1[i]);
                for (std::uint32_t k = 0; k < q.c; ++k) term *= z2[i];
                for (std::uint32_t k = 0; k < q.d; ++k) term *= conj(z2[i]);
            }
            acc += term;
        }
        return acc;
    }

private:
    int n_ = 0;
    std::vector<CMixedMonomial<S>> monos_;
};

template <class S>
struct ComplexMixedPair {
    ComplexMixedPoly<S> f1;
    ComplexMixedPoly<S> f2;
};

// F(Z) = f1(z1, z2) e + f2(z1, z2) edag with
//   f1 = sum l1 * z1^a conj(z1)^b z2^c conj(z2)^d,
//   f2 = sum l2 * z2^a conj(z2)^b z1^c conj(z1)^d,
// where (l1, l2) is the idempotent split of each coefficient.
template <class S>
ComplexMixedPair<S> idempotent_rep(const MixedPolynomial<S>& f) {
    int n = f.nvars();
    std::vector<CMixedMonomial<S>> m1, m2;
    for (const auto& m : f.monomials()) {
        auto c = to_idempotent(m.coeff);
        CMixedMonomial<S> a{c.z1, m.exps};
        CMixedMonomial<S> b{c.z2, std::vector<ExponentQuad>(n)};
        for (int i = 0; i < n; ++i) {
            const ExponentQuad& q = m.exps[i];
            b.exps[i] = ExponentQuad{q.c, q.d, q.a, q.b};
        }
        m1.push_back(std::move(a));
        m2.push_back(std::move(b));
    }
    return {ComplexMixedPoly<S>::from_monomials(n, std::move(m1)),
            ComplexMixedPoly<S>::from_monomials(n, std::move(m2))};
}

// Idempotent coordinates of a point, as the two complex n-vectors.
template <class S>
std::pair<std::vector<Cplx<S>>, std::vector<Cplx<S>>> idempotent_coords(
    std::span<const Bicomplex<S>> zs) {
    std::vector<Cplx<S>> z1(zs.size()), z2(zs.size());
    for (size_t i = 0; i < zs.size(); ++i) {
        auto p = to_idempotent(zs[i]);
        z1[i] = p.z1;
        z2[i] = p.z2;
    }
    return {std::move(z1), std::move(z2)};
}

}  // namespace bcmk
