#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcmk/mixed_poly.hpp"

namespace bcmk {

// Integer degree rows of the polar action, one row per monomial, one
// column per variable:
//   radial   a+b+c+d   (coefficient of t_i)
//   polar    a-b+c-d   (coefficient of p_i)
//   theta    a-c       (coefficient of u_i, e^{j Theta} factor)
//   thetabar d-b       (coefficient of u_i, e^{j conj(Theta)} factor)
struct DegreeSystem {
    int monomial_count = 0;
    int nvars = 0;
    std::vector<std::vector<long long>> radial, polar, theta, thetabar;
};

template <class S>
DegreeSystem degree_system(const MixedPolynomial<S>& f) {
    if (f.is_zero()) throw std::invalid_argument("degree_system of the zero polynomial");
    DegreeSystem d;
    d.monomial_count = int(f.monomials().size());
    d.nvars = f.nvars();
    for (const auto& m : f.monomials()) {
        std::vector<long long> r(d.nvars), p(d.nvars), th(d.nvars), tb(d.nvars);
        for (int i = 0; i < d.nvars; ++i) {
            const ExponentQuad& q = m.exps[i];
            r[i] = (long long)q.a + q.b + q.c + q.d;
            p[i] = (long long)q.a - q.b + q.c - q.d;
            th[i] = (long long)q.a - q.c;
            tb[i] = (long long)q.d - q.b;
        }
        d.radial.push_back(std::move(r));
        d.polar.push_back(std::move(p));
        d.theta.push_back(std::move(th));
        d.thetabar.push_back(std::move(tb));
    }
    return d;
}

// Radial weights (t; a), polar weights (p; c), complex polar weights
// (u; d, d'). Solver output is always admissible: positive weight
// entries with gcd 1, a, c > 0, d, d' >= 0 with d > 0 or d' > 0.
// Caller-supplied systems may carry arbitrary integers (the verification
// routines only evaluate them).
struct WeightSystem {
    std::vector<long long> t, p, u;
    long long a = 0;
    long long c = 0;
    long long d = 0;
    long long dprime = 0;
};

struct WeightReport {
    bool feasible = false;
    WeightSystem W;                          // meaningful when feasible
    std::vector<std::string> diagnostics;    // violated subsystem and reason
    std::vector<std::string> unconstrained;  // variables fixed to weight 1
};

WeightReport solve_weights(const DegreeSystem& d);

template <class S>
WeightReport solve_weights(const MixedPolynomial<S>& f) {
    return solve_weights(degree_system(f));
}

// Acting parameter Lambda = s e^{i theta} e^{j Theta}.
struct PolarActionElement {
    double s = 1.0;
    double theta = 0.0;
    std::complex<double> Theta{};
};

// The four transformed tuples of the polar BC*-action:
//   Z_i      -> s^{t_i} e^{ i p_i theta} e^{ j u_i Theta}       Z_i
//   hat Z_i  -> s^{t_i} e^{ i p_i theta} e^{-j u_i Theta}       hat Z_i
//   tilde Z_i-> s^{t_i} e^{-i p_i theta} e^{-j u_i conj(Theta)} tilde Z_i
//   bar Z_i  -> s^{t_i} e^{-i p_i theta} e^{ j u_i conj(Theta)} bar Z_i
struct ActionTuple {
    std::vector<BC> z, zt, zh, zb;
};

ActionTuple apply_action(const PolarActionElement& lam, const WeightSystem& w,
                         std::span<const BC> zs);

// Weighted R^+ action only: Z_i -> s^{t_i} Z_i.
std::vector<BC> radial_scale(const WeightSystem& w, double s, std::span<const BC> zs);

// The homogeneity factor s^a e^{i c theta} e^{j d Theta} e^{j d' conj Theta}.
BC homogeneity_factor(const PolarActionElement& lam, const WeightSystem& w);

struct CheckResult {
    bool pass = false;
    double worst = 0.0;
};

// Samples random (Lambda, Z), including complex Theta with nonzero
// imaginary part, and checks the defining homogeneity identity to
// relative tolerance.
CheckResult verify_homogeneity(const MPolyD& f, const WeightSystem& w, int samples, double tol,
                               std::uint64_t seed);

// Euler combination sum_i w_i [ sZ Z_i dF/dZ_i + sT tildeZ_i dF/dtildeZ_i
// + sH hatZ_i dF/dhatZ_i + sB barZ_i dF/dbarZ_i ], formed symbolically.
template <class S>
MixedPolynomial<S> euler_combination(const MixedPolynomial<S>& f, std::span<const long long> w,
                                     int sz, int st, int sh, int sb) {
    MixedPolynomial<S> acc(f.nvars());
    auto add = [&](Wirt slot, int sign, int var) {
        if (sign == 0) return;
        MixedPolynomial<S> term = f.sym_partial(slot, var).mul_var(slot, var) * S(w[var]);
        acc = sign > 0 ? acc + term : acc - term;
    };
    for (int i = 0; i < f.nvars(); ++i) {
        add(Wirt::Z, sz, i);
        add(Wirt::Tilde, st, i);
        add(Wirt::Hat, sh, i);
        add(Wirt::Bar, sb, i);
    }
    return acc;
}

// The four Euler identities from differentiating the homogeneity
// identity in s, theta, Theta, conj(Theta):
//   a F = sum t_i [Z dZ + tilde dT + hat dH + bar dB]
//   c F = sum p_i [Z dZ - tilde dT + hat dH - bar dB]
//   d F = sum u_i [Z dZ - hat dH]
//   d'F = sum u_i [bar dB - tilde dT]
template <class S>
std::array<MixedPolynomial<S>, 4> euler_residual_polys(const MixedPolynomial<S>& f,
                                                       const WeightSystem& w) {
    auto scale = [&](long long k) { return f * S(k); };
    return {euler_combination(f, w.t, 1, 1, 1, 1) - scale(w.a),
            euler_combination(f, w.p, 1, -1, 1, -1) - scale(w.c),
            euler_combination(f, w.u, 1, 0, -1, 0) - scale(w.d),
            euler_combination(f, w.u, 0, -1, 0, 1) - scale(w.dprime)};
}

// Exact backend: the identities hold as polynomial identities.
inline std::array<bool, 4> euler_check_exact(const MPolyQ& f, const WeightSystem& w) {
    auto r = euler_residual_polys(f, w);
    return {r[0].is_zero(), r[1].is_zero(), r[2].is_zero(), r[3].is_zero()};
}

struct EulerResiduals {
    double r_a = 0.0, r_c = 0.0, r_d = 0.0, r_dprime = 0.0;
    double worst() const { return std::max(std::max(r_a, r_c), std::max(r_d, r_dprime)); }
};

EulerResiduals euler_check(const MPolyD& f, const WeightSystem& w, int samples,
                           std::uint64_t seed);

struct JoinResult {
    bool ok = false;
    WeightSystem W;
    std::vector<std::string> diagnostics;
};

// gcd/lcm join of two solved systems on disjoint variable blocks: scale
// each side so the degrees meet at the lcm. The shared u-scaling exists
// for the conj(Theta) row only when d'*e == e'*d; mismatches are reported.
JoinResult join_weights(const WeightSystem& wf, const WeightSystem& wg);

}  // namespace bcmk
