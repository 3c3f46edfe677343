#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bcmk/matrix.hpp"
#include "bcmk/mixed_poly.hpp"

namespace bcmk {

// A smooth map BC^n -> BC^m given by an evaluator. Mixed polynomials
// satisfy this; arbitrary callables are admitted.
struct EvaluableMap {
    int n = 0;
    int m = 0;
    std::function<std::vector<BC>(std::span<const BC>)> f;

    std::vector<BC> operator()(std::span<const BC> zs) const { return f(zs); }
};

inline EvaluableMap map_from_poly(MPolyD p) {
    int n = p.nvars();
    return {n, 1, [p = std::move(p)](std::span<const BC> zs) {
                return std::vector<BC>{p.eval(zs)};
            }};
}

inline EvaluableMap map_from_polys(std::vector<MPolyD> ps) {
    int n = ps.empty() ? 0 : ps[0].nvars();
    int m = int(ps.size());
    return {n, m, [ps = std::move(ps)](std::span<const BC> zs) {
                std::vector<BC> out;
                out.reserve(ps.size());
                for (const auto& p : ps) out.push_back(p.eval(zs));
                return out;
            }};
}

inline EvaluableMap compose(const EvaluableMap& g, const EvaluableMap& f) {
    if (g.n != f.m) throw std::invalid_argument("composition arity mismatch");
    return {f.n, g.m, [g, f](std::span<const BC> zs) { return g.f(f.f(zs)); }};
}

inline double point_norm(std::span<const BC> zs) {
    double s = 0.0;
    for (const auto& z : zs) {
        double e = norm_euclid(z);
        s += e * e;
    }
    return std::sqrt(s);
}

// Truncation-vs-cancellation default for central differences at doubles.
inline double default_step(std::span<const BC> zs, double h0 = 1e-5) {
    return h0 * (1.0 + point_norm(zs));
}

namespace detail {

// Central difference of F along one real coordinate of variable `var`:
// comp 0..3 = x, y, v, t.
inline std::vector<BC> central_diff(const EvaluableMap& f, int var, int comp,
                                    std::span<const BC> zs, double h) {
    std::vector<BC> zp(zs.begin(), zs.end()), zm(zs.begin(), zs.end());
    BC delta;
    switch (comp) {
        case 0: delta = BC(h, 0, 0, 0); break;
        case 1: delta = BC(0, h, 0, 0); break;
        case 2: delta = BC(0, 0, h, 0); break;
        default: delta = BC(0, 0, 0, h); break;
    }
    zp[var] += delta;
    zm[var] -= delta;
    std::vector<BC> fp = f(zp), fm = f(zm);
    std::vector<BC> out(fp.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = (fp[i] - fm[i]) * (1.0 / (2.0 * h));
    return out;
}

}  // namespace detail

// The four real differential operators obtained from the conjugation
// equations, applied with central finite differences:
//   d/dZ      = (1/4)(dx - i dy - j dv + k dt)
//   d/dtildeZ = (1/4)(dx + i dy + j dv + k dt)
//   d/dhatZ   = (1/4)(dx - i dy + j dv - k dt)
//   d/dbarZ   = (1/4)(dx + i dy - j dv - k dt)
// Each annihilates the other three slots and is the identity on its own.
inline std::vector<BC> partial(Wirt w, const EvaluableMap& f, int var, std::span<const BC> zs,
                               double h) {
    if (var < 0 || var >= f.n) throw std::invalid_argument("variable index out of range");
    if (!(h > 0)) throw std::invalid_argument("step must be positive");
    auto dx = detail::central_diff(f, var, 0, zs, h);
    auto dy = detail::central_diff(f, var, 1, zs, h);
    auto dv = detail::central_diff(f, var, 2, zs, h);
    auto dt = detail::central_diff(f, var, 3, zs, h);
    double si = 0.0, sj = 0.0, sk = 0.0;
    switch (w) {
        case Wirt::Z: si = -1, sj = -1, sk = +1; break;
        case Wirt::Tilde: si = +1, sj = +1, sk = +1; break;
        case Wirt::Hat: si = -1, sj = +1, sk = -1; break;
        case Wirt::Bar: si = +1, sj = -1, sk = -1; break;
    }
    const BC I = BC::unit_i(), J = BC::unit_j(), K = BC::unit_k();
    std::vector<BC> out(dx.size());
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = (dx[i] + si * (I * dy[i]) + sj * (J * dv[i]) + sk * (K * dt[i])) * 0.25;
    return out;
}

// Raw differential of the underlying real map R^{4n} -> R^{4m}.
inline RMat real_jacobian(const EvaluableMap& f, std::span<const BC> zs, double h) {
    RMat jac(4 * f.m, 4 * f.n);
    for (int var = 0; var < f.n; ++var)
        for (int comp = 0; comp < 4; ++comp) {
            auto col = detail::central_diff(f, var, comp, zs, h);
            for (int out = 0; out < f.m; ++out) {
                jac.at(4 * out + 0, 4 * var + comp) = col[out].x();
                jac.at(4 * out + 1, 4 * var + comp) = col[out].y();
                jac.at(4 * out + 2, 4 * var + comp) = col[out].v();
                jac.at(4 * out + 3, 4 * var + comp) = col[out].t();
            }
        }
    return jac;
}

// Matrix of dF^i/dZ_j (the bicomplex derivative of a holomorphic map).
inline BCMatrixD bc_jacobian(const EvaluableMap& f, std::span<const BC> zs, double h) {
    BCMatrixD jac(f.m, f.n);
    for (int var = 0; var < f.n; ++var) {
        auto col = partial(Wirt::Z, f, var, zs, h);
        for (int out = 0; out < f.m; ++out) jac.at(out, var) = col[out];
    }
    return jac;
}

struct HolomorphyResult {
    bool holomorphic = false;
    double worst = 0.0;  // largest conjugate-operator magnitude seen
};

// Holomorphy criterion: all tilde/hat/bar partials vanish. A sampled
// heuristic, not a proof.
inline HolomorphyResult holomorphy_test(const EvaluableMap& f,
                                        std::span<const std::vector<BC>> samples, double tol,
                                        double h0 = 1e-5) {
    if (samples.empty()) throw std::invalid_argument("holomorphy_test needs sample points");
    double worst = 0.0;
    for (const auto& zs : samples) {
        double h = default_step(zs, h0);
        for (int var = 0; var < f.n; ++var)
            for (Wirt w : {Wirt::Tilde, Wirt::Hat, Wirt::Bar}) {
                auto d = partial(w, f, var, zs, h);
                for (const auto& v : d) worst = std::max(worst, norm_euclid(v));
            }
    }
    return {worst <= tol, worst};
}

struct SingularResult {
    bool singular = false;
    RankPair rank;
};

// Bicomplex singular point: rank pair of DF differs from (m, m).
// Caller asserts holomorphy of f at the point.
inline SingularResult singular_test(const EvaluableMap& f, std::span<const BC> zs, double tol,
                                    double h0 = 1e-5) {
    if (f.n < f.m) throw std::invalid_argument("singular_test needs n >= m");
    RankPair rk = rank_pair(bc_jacobian(f, zs, default_step(zs, h0)), tol);
    return {rk.r1 != f.m || rk.r2 != f.m, rk};
}

}  // namespace bcmk
