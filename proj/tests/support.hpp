#pragma once

#include <random>

#include "bcmk/parser.hpp"
#include "bcmk/topology.hpp"

// Shared fixtures: deterministic random generators for both scalar
// backends, admissible instance generators, and the brute-force oracles
// the expected values are frozen against.
namespace bcmk::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_num = 9, int max_den = 4) {
    std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline BCQ random_bcq(Rng& rng) {
    return BCQ(random_rational(rng), random_rational(rng), random_rational(rng),
               random_rational(rng));
}

inline BC random_bc(Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    return BC(g(rng), g(rng), g(rng), g(rng));
}

// Stays clear of the zero-divisor planes so norms and angles are
// well-conditioned.
inline BC random_invertible_bc(Rng& rng, double margin = 5e-2) {
    for (;;) {
        BC z = random_bc(rng);
        if (norm_euclid(z) > 0.1 && !is_zero_divisor(z, margin)) return z;
    }
}

inline std::vector<BC> random_point(Rng& rng, int n, double scale = 0.8) {
    std::vector<BC> zs(n);
    for (auto& z : zs) z = random_bc(rng, scale);
    return zs;
}

inline std::vector<BC> random_invertible_point(Rng& rng, int n) {
    std::vector<BC> zs(n);
    for (auto& z : zs) z = random_invertible_bc(rng);
    return zs;
}

inline ExponentQuad random_quad(Rng& rng, int budget) {
    std::uniform_int_distribution<int> pick(0, 3);
    ExponentQuad q;
    for (int i = 0; i < budget; ++i) {
        switch (pick(rng)) {
            case 0: ++q.a; break;
            case 1: ++q.b; break;
            case 2: ++q.c; break;
            default: ++q.d; break;
        }
    }
    return q;
}

// Random mixed polynomial, total degree <= max_deg per monomial.
inline MPolyQ random_poly(Rng& rng, int n, int max_terms, int max_deg) {
    std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_deg),
        share(0, n - 1);
    std::vector<MixedMonomial<Rational>> monos;
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        MixedMonomial<Rational> m{BCQ{}, std::vector<ExponentQuad>(n)};
        int budget = deg(rng);
        for (int b = 0; b < budget; ++b) {
            ExponentQuad one = random_quad(rng, 1);
            ExponentQuad& q = m.exps[share(rng)];
            q.a += one.a;
            q.b += one.b;
            q.c += one.c;
            q.d += one.d;
        }
        do {
            m.coeff = random_bcq(rng);
        } while (m.coeff.is_zero());
        monos.push_back(std::move(m));
    }
    return MPolyQ::from_monomials(n, std::move(monos));
}

inline MPolyQ random_holomorphic_poly(Rng& rng, int n, int max_terms, int max_deg) {
    std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_deg),
        share(0, n - 1);
    std::vector<MixedMonomial<Rational>> monos;
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        MixedMonomial<Rational> m{BCQ{}, std::vector<ExponentQuad>(n)};
        int budget = deg(rng);
        for (int b = 0; b < budget; ++b) ++m.exps[share(rng)].a;
        do {
            m.coeff = random_bcq(rng);
        } while (m.coeff.is_zero());
        monos.push_back(std::move(m));
    }
    return MPolyQ::from_monomials(n, std::move(monos));
}

// Admissible Pham-Brieskorn instance. Two uniform branches: bar_branch
// false gives b = d (hat-mixed types, d' = 0), bar_branch true gives
// d - b = a - c > 0 (full types with d = d').
inline MPolyQ random_pb_instance(Rng& rng, int n, bool bar_branch,
                                 std::vector<ExponentQuad>* quads_out = nullptr) {
    std::vector<MixedMonomial<Rational>> monos;
    std::vector<ExponentQuad> quads;
    for (int i = 0; i < n; ++i) {
        ExponentQuad q;
        if (!bar_branch) {
            std::uniform_int_distribution<int> cd(0, 2), ad(1, 3);
            q.c = cd(rng);
            q.a = q.c + ad(rng);
            int bmax = (int(q.a) + int(q.c) - 1) / 2;
            std::uniform_int_distribution<int> bd(0, bmax);
            q.b = q.d = bd(rng);
        } else {
            std::uniform_int_distribution<int> cd(1, 3), ed(1, 2);
            q.c = cd(rng);
            int e = ed(rng);
            q.a = q.c + e;
            std::uniform_int_distribution<int> bd(0, int(q.c) - 1);
            q.b = bd(rng);
            q.d = q.b + e;
        }
        MixedMonomial<Rational> m{BCQ::one(), std::vector<ExponentQuad>(n)};
        m.exps[i] = q;
        monos.push_back(std::move(m));
        quads.push_back(q);
    }
    if (quads_out) *quads_out = quads;
    return MPolyQ::from_monomials(n, std::move(monos));
}

// Reciprocal-type integer normalization: w_i = L / D_i over gcd, degree L.
inline std::pair<std::vector<long long>, long long> reciprocal_normalization(
    const std::vector<long long>& degrees) {
    long long L = 1;
    for (long long d : degrees) L = lcm_ll(L, d);
    std::vector<long long> w;
    long long g = 0;
    for (long long d : degrees) {
        w.push_back(L / d);
        g = gcd_ll(g, w.back());
    }
    for (auto& x : w) x /= g;
    return {w, L / g};
}

// Hat-mixed cyclic instance with own-variable degrees >= 2 in every row.
inline MPolyQ random_cyclic_instance(Rng& rng, int n) {
    std::vector<MixedMonomial<Rational>> monos;
    for (int i = 0; i < n; ++i) {
        std::uniform_int_distribution<int> cd(0, 1), ad(2, 4);
        ExponentQuad q;
        q.c = cd(rng);
        q.a = q.c + ad(rng);
        int bmax = (int(q.a) + int(q.c) - 2) / 2;
        std::uniform_int_distribution<int> bd(0, bmax);
        q.b = q.d = bd(rng);
        MixedMonomial<Rational> m{BCQ::one(), std::vector<ExponentQuad>(n)};
        m.exps[i] = q;
        m.exps[(i + 1) % n].a += 1;
        monos.push_back(std::move(m));
    }
    return MPolyQ::from_monomials(n, std::move(monos));
}

// Brute-force oracle for the fiber of a one-variable mixed monomial
// Z(a,b,c,d): the pair of congruences
//   (a-b) k1 + (c-d) k2 = 0,  (c-d) k1 + (a-b) k2 = 0   (mod D)
// on the D x D unit-torus grid, D = |(a-b)^2 - (c-d)^2|. The moduli are
// forced to 1 because a+b != c+d, so counting grid solutions counts the
// fiber points.
inline long long torus_solution_count(const ExponentQuad& q) {
    long long A = (long long)q.a - q.b, C = (long long)q.c - q.d;
    if ((long long)q.a + q.b == (long long)q.c + q.d)
        throw std::invalid_argument("moduli not forced; oracle does not apply");
    long long D = A * A - C * C;
    if (D < 0) D = -D;
    if (D == 0) throw std::invalid_argument("degenerate phase system");
    long long count = 0;
    for (long long k1 = 0; k1 < D; ++k1)
        for (long long k2 = 0; k2 < D; ++k2) {
            long long r1 = ((A * k1 + C * k2) % D + D) % D;
            long long r2 = ((C * k1 + A * k2) % D + D) % D;
            if (r1 == 0 && r2 == 0) ++count;
        }
    return count;
}

inline double rel_err(const BC& got, const BC& want) {
    return norm_euclid(got - want) / std::max(1.0, norm_euclid(want));
}

inline double point_dist(std::span<const BC> a, std::span<const BC> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double e = norm_euclid(a[i] - b[i]);
        s += e * e;
    }
    return std::sqrt(s);
}

inline MPolyQ parse_q(std::string_view text) { return parse_polynomial(text).poly; }

inline MPolyD parse_d(std::string_view text) { return to_double(parse_q(text)); }

}  // namespace bcmk::testing
