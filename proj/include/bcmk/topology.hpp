#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bcmk/calculus.hpp"
#include "bcmk/weights.hpp"

namespace bcmk {

// Everything a fibration experiment needs: the polynomial, its solved
// weight system, the sphere/tube radii, tolerance and RNG seed.
struct FibrationContext {
    MPolyD F;
    WeightSystem W;
    double eps = 1.0;
    double delta = 0.5;
    double tol = 1e-8;
    std::uint64_t seed = 42;
    double step = 1e-5;  // finite-difference base step for Jacobian checks

    void validate() const {
        if (!(eps > 0) || !(delta > 0) || !(tol > 0) || !(step > 0))
            throw std::invalid_argument("FibrationContext needs eps, delta, tol, step > 0");
    }
};

// Membership in V_F = F^{-1}(ZD union {0}), tolerance-bounded.
bool in_VF(const FibrationContext& ctx, std::span<const BC> zs);

// V_F membership plus | ||Z|| - eps | <= tol: a point of the bicomplex link.
bool link_membership(const FibrationContext& ctx, std::span<const BC> zs);

// F/||F||_i, a point of the complex unit circle. Domain error on V_F.
BC phi_i(const FibrationContext& ctx, std::span<const BC> zs);

// F/||F||, a Euclidean-unit non-zero-divisor. Domain error on V_F.
BC phi_s3(const FibrationContext& ctx, std::span<const BC> zs);

// Action parameters (s0, theta0, Theta0) with s0^a = s, c*theta0 = theta,
// d*Theta0 + d'*conj(Theta0) = Theta for the target U = s e^{i theta} e^{j Theta}.
// Throws on the degenerate chart direction d == d' with Im(Theta) != 0.
struct ActionParams {
    double s0 = 1.0;
    double theta0 = 0.0;
    std::complex<double> Theta0{};
};
ActionParams solve_action_params(const WeightSystem& w, const BC& u, double tol = 1e-12);

// Global trivialization of F : BC^n \ V_F -> BC^*: carries a base fiber
// point Z0 in F^{-1}(1) to the fiber over U by the solved action.
std::vector<BC> global_trivialize(const FibrationContext& ctx, const BC& u,
                                  std::span<const BC> z0);

struct FiberPoint {
    std::vector<BC> point;  // in F^{-1}(1)
    BC value;               // F at the input
};

// Inverse chart: W -> (rho(W)*W, F(W)) with F(rho(W)*W) = 1.
FiberPoint global_trivialize_inverse(const FibrationContext& ctx, std::span<const BC> w);

// Spherical trivialization: applies the angular parameter solve for the
// shift z, then flows along the weighted radial orbit back onto the
// eps-sphere (phi is invariant under that flow), so phi of the result is
// e^{j z} * phi(Z0).
std::vector<BC> sphere_trivialize(const FibrationContext& ctx, std::complex<double> z,
                                  std::span<const BC> z0);

// Gaussian direction normalized onto the eps-sphere of R^{4n}.
std::vector<BC> sample_sphere(std::mt19937_64& rng, int nvars, double eps);

// Sphere sample with F(Z) comfortably invertible (rejection-filtered).
std::vector<BC> sample_off_VF(const FibrationContext& ctx, std::mt19937_64& rng,
                              int max_tries = 1000);

struct RegularScanResult {
    int samples = 0;
    double worst_margin = 1.0;        // min over samples of sigma_4/sigma_1 of DF
    double worst_orbit_margin = 1.0;  // same for the image of the 4 orbit tangents
    bool pass = false;
    std::vector<std::vector<double>> cloud;  // per sample: 4n coords, margin
};

// Samples points with invertible value and checks that the real Jacobian
// has full rank 4, the content of the regular-value statement. The four
// orbit tangents (t_i Z_i), i(p_i Z_i), j(u_i Z_i), k(u_i Z_i) are pushed
// through the Jacobian as a second margin.
RegularScanResult regular_value_sample(const FibrationContext& ctx, int count);

struct RayCheckResult {
    bool applicable = false;  // the supplied point is critical
    bool persists = false;    // rank deficiency along all radial samples
    double base_margin = 0.0;
    double worst_ray_margin = 0.0;
};

// Critical points scale along the weighted radial action: rank deficiency
// at P must persist at s*P for every sampled s > 0.
RayCheckResult discriminant_ray_check(const FibrationContext& ctx, std::span<const BC> p,
                                      int s_samples);

// Literal transversality witness sum_i t_i ||Z_i||^2 > 0.
bool radial_transversality(const FibrationContext& ctx, std::span<const BC> zs);

enum class TubeVariant { BallTarget, QuadricTarget };

// Ball-target: ||Z|| <= eps, F invertible, ||F|| <= delta.
// Quadric-target: ||Z|| <= eps, norm_complex_sq(F) = 1 within tol.
bool tube_membership(const FibrationContext& ctx, std::span<const BC> zs, TubeVariant variant);

// ---- closed-form invariants ----

// Pham-Brieskorn shape: one single-variable monomial per variable, all
// coefficients invertible.
struct PhamBrieskornShape {
    std::vector<ExponentQuad> quads;
};

template <class S>
std::optional<PhamBrieskornShape> pb_shape(const MixedPolynomial<S>& f, std::string* why) {
    int n = f.nvars();
    std::vector<ExponentQuad> quads(n);
    std::vector<bool> seen(n, false);
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return std::nullopt;
    };
    if (n < 1) return fail("needs at least one variable");
    if (int(f.monomials().size()) != n)
        return fail("expected exactly one monomial per variable");
    for (const auto& m : f.monomials()) {
        int var = -1;
        for (int i = 0; i < n; ++i) {
            if (m.exps[i].is_trivial()) continue;
            if (var >= 0) return fail("a monomial touches more than one variable");
            var = i;
        }
        if (var < 0) return fail("constant monomial");
        if (seen[var]) return fail("two monomials on the same variable");
        if (is_zero_divisor(m.coeff) || m.coeff.is_zero())
            return fail("non-invertible coefficient");
        seen[var] = true;
        quads[var] = m.exps[var];
    }
    return PhamBrieskornShape{std::move(quads)};
}

// Pham-Brieskorn admissibility: a-b > d-c, a > c, d-b >= 0 (with
// a-c = d-b whenever d-b > 0), plus a-b > 0 and c-d >= 0 so both
// sigma factors stay positive.
bool pb_conditions(const ExponentQuad& q, std::string* why);

struct BouquetInvariants {
    std::vector<long long> sigmas;
    long long m = 1;
};

struct BouquetResult {
    bool ok = false;
    BouquetInvariants inv;
    std::string report;
};

// sigma_i = (a-b+c-d)(a-b-c+d) - 1; the fiber is a bouquet of
// m = prod sigma_i spheres S^{n-1}.
BouquetResult bouquet_count(const PhamBrieskornShape& shape);

template <class S>
BouquetResult bouquet_count(const MixedPolynomial<S>& f) {
    std::string why;
    auto shape = pb_shape(f, &why);
    if (!shape) return {false, {}, "not a Pham-Brieskorn form: " + why};
    return bouquet_count(*shape);
}

struct CyclicInvariants {
    long long m1 = 1;
    long long m2 = 1;
    long long m = 1;
    long long point_count = 0;
};

struct CyclicResult {
    bool ok = false;
    CyclicInvariants inv;
    std::string report;
};

// F = Z_s(q1) + Z_j(q2) Z_k(q3): m1 = gcd of the a-b-c+d combinations of
// q2, q3, m2 = gcd of the a-b+c-d ones, and the join factor is
// (a1-b1+c1-d1)(a1-b1-c1+d1) points.
template <class S>
CyclicResult cyclic_invariants(const MixedPolynomial<S>& f) {
    auto fail = [](const std::string& msg) {
        return CyclicResult{false, {}, "not a cyclic form: " + msg};
    };
    if (f.monomials().size() != 2) return fail("expected exactly two monomials");
    std::array<std::vector<int>, 2> touched;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < f.nvars(); ++i)
            if (!f.monomials()[k].exps[i].is_trivial()) touched[k].push_back(i);
    const auto* single = &f.monomials()[0];
    const auto* pair = &f.monomials()[1];
    if (touched[0].size() == 2 && touched[1].size() == 1) {
        std::swap(single, pair);
        std::swap(touched[0], touched[1]);
    }
    if (touched[0].size() != 1 || touched[1].size() != 2)
        return fail("expected one single-variable and one two-variable monomial");
    if (touched[1][0] == touched[0][0] || touched[1][1] == touched[0][0])
        return fail("monomial variables overlap");
    ExponentQuad q1 = single->exps[touched[0][0]];
    ExponentQuad q2 = pair->exps[touched[1][0]];
    ExponentQuad q3 = pair->exps[touched[1][1]];
    auto am = [](const ExponentQuad& q) { return (long long)q.a - q.b - q.c + q.d; };
    auto ap = [](const ExponentQuad& q) { return (long long)q.a - q.b + q.c - q.d; };
    // both phase combinations must be positive for the point/torus counts
    for (const ExponentQuad& q : {q1, q2, q3})
        if (ap(q) <= 0 || am(q) <= 0)
            return fail("needs a-b+c-d > 0 and a-b-c+d > 0 on every factor");
    CyclicResult r;
    r.ok = true;
    r.inv.m1 = gcd_ll(am(q2), am(q3));
    r.inv.m2 = gcd_ll(ap(q2), ap(q3));
    r.inv.m = r.inv.m1 * r.inv.m2;
    r.inv.point_count = ap(q1) * am(q1);
    return r;
}

// Unfolding of a mixed Pham-Brieskorn polynomial to the holomorphic-hat
// target G = sum Z_i(a-b, 0, c-d, 0): per-variable moduli exponents
// k1 (a-b+c-d) = 2b, k2 (a-b+c-d) = 2d, an invertible change of
// coordinates on (BC^*)^n with F(unfold_map(Z)) = G(Z).
template <class S>
struct UnfoldResult {
    bool ok = false;
    std::vector<std::pair<Rational, Rational>> k;  // per-variable (k1, k2)
    MixedPolynomial<S> target;                     // G
    std::function<std::vector<BC>(std::span<const BC>)> map;      // F(map(Z)) = G(Z)
    std::function<std::vector<BC>(std::span<const BC>)> map_inv;  // map_inv(map(Z)) = Z
    std::string report;
    // Set when some b_i != d_i: the moduli change then matches only the
    // first idempotent component (the second components of F and G differ
    // as functions, so no coordinate change can match both).
    std::string warning;
};

namespace detail {
std::function<std::vector<BC>(std::span<const BC>)> unfold_forward(std::vector<double> k1,
                                                                   std::vector<double> k2);
std::function<std::vector<BC>(std::span<const BC>)> unfold_backward(std::vector<double> k1,
                                                                    std::vector<double> k2);
}  // namespace detail

template <class S>
UnfoldResult<S> unfold(const MixedPolynomial<S>& f) {
    UnfoldResult<S> r;
    std::string why;
    auto shape = pb_shape(f, &why);
    if (!shape) {
        r.report = "not a Pham-Brieskorn form: " + why;
        return r;
    }
    // The coordinate change only needs G's exponents a-b, c-d nonnegative
    // with positive sum per variable; that is weaker than bouquet
    // admissibility and covers the holomorphic k1 = k2 = 0 case.
    for (const auto& q : shape->quads) {
        long long ab = (long long)q.a - q.b, cd = (long long)q.c - q.d;
        if (ab < 0 || cd < 0 || ab + cd <= 0) {
            r.report = "unfolding needs a-b >= 0, c-d >= 0 with (a-b)+(c-d) > 0";
            return r;
        }
    }
    int n = f.nvars();
    std::vector<double> k1d(n), k2d(n);
    for (int i = 0; i < n; ++i) {
        const ExponentQuad& q = shape->quads[i];
        long long denom = (long long)q.a - q.b + q.c - q.d;
        r.k.emplace_back(Rational(2 * (long long)q.b, denom), Rational(2 * (long long)q.d, denom));
        k1d[i] = r.k.back().first.to_double();
        k2d[i] = r.k.back().second.to_double();
        if (q.b != q.d)
            r.warning =
                "b != d at some variable: F(map(Z)) = G(Z) holds on the first idempotent "
                "component only";
    }
    std::vector<MixedMonomial<S>> target_monos;
    for (const auto& m : f.monomials()) {
        MixedMonomial<S> g{m.coeff, std::vector<ExponentQuad>(n)};
        for (int i = 0; i < n; ++i) {
            const ExponentQuad& q = m.exps[i];
            g.exps[i] = ExponentQuad{std::uint32_t(q.a - q.b), 0, std::uint32_t(q.c - q.d), 0};
        }
        target_monos.push_back(std::move(g));
    }
    r.target = MixedPolynomial<S>::from_monomials(n, std::move(target_monos));
    r.map = detail::unfold_forward(k1d, k2d);
    r.map_inv = detail::unfold_backward(k1d, k2d);
    r.ok = true;
    return r;
}

}  // namespace bcmk
