#include <doctest.h>

#include "support.hpp"

using namespace bcmk;
using namespace bcmk::testing;

namespace {

FibrationContext make_ctx(const char* expr, double eps = 1.0, std::uint64_t seed = 42) {
    MPolyQ fq = parse_q(expr);
    WeightReport rep = solve_weights(fq);
    REQUIRE(rep.feasible);
    FibrationContext ctx{to_double(fq), rep.W, eps, 0.5, 1e-8, seed};
    ctx.validate();
    return ctx;
}

}  // namespace

TEST_CASE("V_F and link membership") {
    FibrationContext c2 = make_ctx("Z1^2+Z2^2");
    std::vector<BC> p{BC::one(), BC::unit_j()};  // 1 + j^2 = 0
    CHECK(in_VF(c2, p));

    FibrationContext cz = make_ctx("Z1", norm_euclid(BC::e()));
    std::vector<BC> pe{BC::e()};
    CHECK(in_VF(cz, pe));
    CHECK(link_membership(cz, pe));

    std::vector<BC> p1{BC::one()};
    CHECK(!in_VF(cz, p1));
    CHECK(!link_membership(cz, p1));
}

TEST_CASE("fibration maps phi_i and phi_s3") {
    FibrationContext cz = make_ctx("Z1");
    std::vector<BC> p2j{2.0 * BC::unit_j()};
    CHECK(rel_err(phi_i(cz, p2j), BC::unit_j()) <= 1e-12);

    std::vector<BC> p3{3.0 * BC::one()};
    CHECK(rel_err(phi_s3(cz, p3), BC::one()) <= 1e-12);

    std::vector<BC> pe2{BC::e() + 2.0 * BC::edag()};
    auto comp = to_idempotent(phi_i(cz, pe2));
    CHECK(std::abs(comp.z1 * comp.z2 - std::complex<double>(1.0)) <= 1e-12);

    std::vector<BC> pe{BC::e()};
    CHECK_THROWS_AS(phi_i(cz, pe), std::domain_error);

    // the commuting triangle pi_i(phi_s3) = phi_i
    Rng rng(61);
    FibrationContext c2 = make_ctx("Z1^2+Z2^2");
    for (int k = 0; k < 50; ++k) {
        auto zs = sample_off_VF(c2, rng);
        CHECK(rel_err(proj_i(phi_s3(c2, zs)), phi_i(c2, zs)) <= 1e-10);
        CHECK(std::abs(norm_euclid(phi_s3(c2, zs)) - 1.0) <= 1e-12);
    }
}

TEST_CASE("global trivialization examples") {
    FibrationContext c = make_ctx("Z1^2");
    std::vector<BC> z0{BC::one()};
    // U = 1 is the identity on the fiber
    auto w1 = global_trivialize(c, BC::one(), z0);
    CHECK(rel_err(w1[0], BC::one()) <= 1e-12);
    // U = 4 lifts along the radial parameter s0 = 2
    auto w4 = global_trivialize(c, 4.0 * BC::one(), z0);
    CHECK(rel_err(w4[0], 2.0 * BC::one()) <= 1e-12);
}

TEST_CASE("global trivialization: F(tau(Z0, U)) = U and round trips") {
    for (const char* expr : {"Z1^2+Z2^2", "Z1^3+Z2^2", "Z1^4*hat(Z1)*bar(Z1)^2"}) {
        FibrationContext ctx = make_ctx(expr);
        Rng rng(62);
        for (int k = 0; k < 40; ++k) {
            auto x = sample_off_VF(ctx, rng);
            FiberPoint fp = global_trivialize_inverse(ctx, x);
            CHECK(rel_err(ctx.F.eval(fp.point), BC::one()) <= 1e-9);
            CHECK(rel_err(fp.value, ctx.F.eval(x)) <= 1e-12);
            // independent target value, not F at the base sample
            BC u = random_invertible_bc(rng, 1e-2);
            auto w = global_trivialize(ctx, u, fp.point);
            CHECK(rel_err(ctx.F.eval(w), u) <= 1e-8);
            FiberPoint back = global_trivialize_inverse(ctx, w);
            CHECK(point_dist(back.point, fp.point) <= 1e-8 * (1.0 + point_norm(fp.point)));
        }
    }
}

TEST_CASE("degenerate chart direction is reported") {
    // single monomial Z^3 hat(Z) bar(Z)^2: theta and thetabar rows are both
    // 2, forcing d = d', so Im(Theta) != 0 has no parameter solve.
    FibrationContext ctx = make_ctx("Z1^3*hat(Z1)*bar(Z1)^2");
    CHECK(ctx.W.d == ctx.W.dprime);
    BC u = exp_j(std::complex<double>(0.3, 0.4)) * 2.0;
    std::vector<BC> z0{BC::one()};
    CHECK_THROWS_AS(solve_action_params(ctx.W, u, 1e-12), std::domain_error);
}

TEST_CASE("sphere trivialization examples and residuals") {
    FibrationContext cz = make_ctx("Z1");
    std::vector<BC> z0{BC::one()};
    auto same = sphere_trivialize(cz, {0.0, 0.0}, z0);
    CHECK(rel_err(same[0], BC::one()) <= 1e-12);
    auto quarter = sphere_trivialize(cz, {M_PI / 2, 0.0}, z0);
    CHECK(rel_err(quarter[0], BC::unit_j()) <= 1e-9);

    for (const char* expr : {"Z1^2+Z2^2", "Z1^3+Z2^2", "Z1^4*hat(Z1)*bar(Z1)^2"}) {
        FibrationContext ctx = make_ctx(expr);
        Rng rng(63);
        std::uniform_real_distribution<double> ure(-0.3, 0.3), uim(-0.2, 0.2);
        for (int k = 0; k < 30; ++k) {
            auto x = sample_off_VF(ctx, rng);
            std::complex<double> z(ure(rng),
                                   ctx.W.d == ctx.W.dprime ? 0.0 : uim(rng));
            auto moved = sphere_trivialize(ctx, z, x);
            CHECK(std::abs(point_norm(moved) - ctx.eps) <= 1e-9);
            BC target = exp_j(z) * phi_i(ctx, x);
            CHECK(norm_euclid(phi_i(ctx, moved) - target) <= 1e-8);
        }
    }
}

TEST_CASE("phi_i is invariant under the weighted radial flow") {
    FibrationContext ctx = make_ctx("Z1^3+Z2^2");
    Rng rng(64);
    for (int k = 0; k < 30; ++k) {
        auto x = sample_off_VF(ctx, rng);
        for (double s : {0.35, 1.8}) {
            auto scaled = radial_scale(ctx.W, s, x);
            CHECK(rel_err(phi_i(ctx, scaled), phi_i(ctx, x)) <= 1e-10);
        }
    }
}

TEST_CASE("regular value sampling on the five fixtures") {
    for (const char* expr : {"Z1^2+Z2^2", "Z1^3+Z2^2", "Z1^4*hat(Z1)*bar(Z1)^2",
                             "Z1^2*Z2+Z2^2*Z3+Z3^2*Z1", "Z1^3*Z2+Z2^4"}) {
        FibrationContext ctx = make_ctx(expr);
        RegularScanResult res = regular_value_sample(ctx, 30);
        CHECK(res.pass);
        CHECK(res.worst_margin > 1e-6);
        CHECK(res.worst_orbit_margin > 1e-6);
        CHECK(res.cloud.size() == 30);
    }
}

TEST_CASE("discriminant rays of Z^2 + W^2") {
    FibrationContext ctx = make_ctx("Z1^2+Z2^2");
    std::vector<BC> p{BC::e(), BC::e()};  // Sigma_F = ZD x ZD
    RayCheckResult r = discriminant_ray_check(ctx, p, 10);
    CHECK(r.applicable);
    CHECK(r.persists);

    std::vector<BC> origin{BC{}, BC{}};
    RayCheckResult r0 = discriminant_ray_check(ctx, origin, 5);
    CHECK(r0.applicable);
    CHECK(r0.persists);

    std::vector<BC> regular{BC::one(), 0.3 * BC::one()};
    RayCheckResult rr = discriminant_ray_check(ctx, regular, 5);
    CHECK(!rr.applicable);

    // mixed-plane zero-divisor pairs are NOT critical: the idempotent
    // blocks [2z1, 2w1], [2z2, 2w2] each keep a nonzero entry
    std::vector<BC> mixed{BC::e(), BC::edag()};
    RayCheckResult rm = discriminant_ray_check(ctx, mixed, 5);
    CHECK(!rm.applicable);
}

TEST_CASE("radial transversality") {
    FibrationContext ctx = make_ctx("Z1^2+Z2^2");
    Rng rng(65);
    for (int k = 0; k < 200; ++k) {
        auto zs = sample_sphere(rng, 2, ctx.eps);
        CHECK(radial_transversality(ctx, zs));
    }
    std::vector<BC> zero{BC{}, BC{}};
    CHECK_THROWS_AS(radial_transversality(ctx, zero), std::invalid_argument);
}

TEST_CASE("tube membership") {
    FibrationContext ctx = make_ctx("Z1", 2.0);
    std::vector<BC> inside{(ctx.delta / 2) * BC::one()};
    CHECK(tube_membership(ctx, inside, TubeVariant::BallTarget));

    std::vector<BC> quad{BC::one()};
    CHECK(tube_membership(ctx, quad, TubeVariant::QuadricTarget));

    std::vector<BC> ze{BC::e()};
    CHECK(!tube_membership(ctx, ze, TubeVariant::BallTarget));
    CHECK(!tube_membership(ctx, ze, TubeVariant::QuadricTarget));

    std::vector<BC> far{10.0 * BC::one()};
    CHECK(!tube_membership(ctx, far, TubeVariant::BallTarget));
}

TEST_CASE("bouquet invariants vs brute force") {
    BouquetResult z3 = bouquet_count(parse_q("Z1^3"));
    REQUIRE(z3.ok);
    CHECK(z3.inv.sigmas == std::vector<long long>{8});
    CHECK(z3.inv.m == 8);
    CHECK(torus_solution_count(ExponentQuad{3, 0, 0, 0}) == 9);  // 8 + 1 points

    BouquetResult guard = bouquet_count(parse_q("Z1^2*tilde(Z1)"));
    CHECK(!guard.ok);
    CHECK(!bouquet_count(parse_q("0")).ok);
    CHECK(!bouquet_count(parse_q("Z1*Z2")).ok);

    BouquetResult join = bouquet_count(parse_q("Z1^3+Z2^2"));
    REQUIRE(join.ok);
    CHECK(join.inv.sigmas == std::vector<long long>{8, 3});
    CHECK(join.inv.m == 24);
    // join-of-points oracle: wedge ranks multiply
    long long c1 = torus_solution_count(ExponentQuad{3, 0, 0, 0});
    long long c2 = torus_solution_count(ExponentQuad{2, 0, 0, 0});
    CHECK(join.inv.m == (c1 - 1) * (c2 - 1));

    for (unsigned n = 1; n <= 6; ++n) {
        BouquetResult b = bouquet_count(PhamBrieskornShape{{ExponentQuad{n, 0, 0, 0}}});
        REQUIRE(b.ok);
        CHECK(b.inv.m + 1 == torus_solution_count(ExponentQuad{n, 0, 0, 0}));
    }

    // a genuinely mixed admissible quad: sigma + 1 matches the oracle count
    ExponentQuad mixed{4, 1, 2, 1};  // b = d, a > c, polar row 4
    BouquetResult bm = bouquet_count(PhamBrieskornShape{{mixed}});
    REQUIRE(bm.ok);
    CHECK(bm.inv.m + 1 == torus_solution_count(mixed));
}

TEST_CASE("cyclic invariants") {
    // all quadruples (2,0,0,0): m1 = m2 = 2, 4 join points
    CyclicResult r = cyclic_invariants(parse_q("Z1^2 + Z2^2*Z3^2"));
    REQUIRE(r.ok);
    CHECK(r.inv.m1 == 2);
    CHECK(r.inv.m2 == 2);
    CHECK(r.inv.m == 4);
    CHECK(r.inv.point_count == 4);

    // coprime combinations collapse to m = 1
    CyclicResult rc = cyclic_invariants(parse_q("Z1^2 + Z2^2*Z3^3"));
    REQUIRE(rc.ok);
    CHECK(rc.inv.m == 1);

    // point-count formula vs the brute-force oracle on a mixed instance
    MPolyQ f = parse_q("Z1^3*tilde(Z1)*hat(Z1) + Z2^2*Z3^2");
    CyclicResult rm = cyclic_invariants(f);
    REQUIRE(rm.ok);
    CHECK(rm.inv.point_count == torus_solution_count(ExponentQuad{3, 1, 1, 0}));

    CHECK(!cyclic_invariants(parse_q("Z1^2+Z2^2")).ok);
    CHECK(!cyclic_invariants(parse_q("Z1^2+Z2^2+Z3^2")).ok);
    // degenerate phase combinations are rejected, not counted negatively
    CHECK(!cyclic_invariants(parse_q("Z1*bar(Z1) + Z2^2*Z3^2")).ok);
}

TEST_CASE("unfolding examples") {
    // holomorphic form: k = 0 and the map is the identity
    auto uh = unfold(parse_q("Z1^3+Z2^2"));
    REQUIRE(uh.ok);
    CHECK(uh.k[0].first == Rational(0));
    CHECK(uh.k[0].second == Rational(0));
    CHECK(uh.target == parse_q("Z1^3+Z2^2"));
    Rng rng(66);
    std::vector<BC> zs{random_invertible_bc(rng), random_invertible_bc(rng)};
    CHECK(point_dist(uh.map(zs), zs) <= 1e-12);

    // Z(2,1,1,0): k1 = 1, k2 = 0, G = Z(1,0,1,0)
    auto u = unfold(parse_q("Z1^2*tilde(Z1)*hat(Z1)"));
    REQUIRE(u.ok);
    CHECK(u.k[0].first == Rational(1));
    CHECK(u.k[0].second == Rational(0));
    CHECK(u.target == parse_q("Z1*hat(Z1)"));
    // b != d: the coordinate change still round-trips, but only the first
    // idempotent component of the composite identity can hold, and the
    // result says so.
    CHECK(!u.warning.empty());
    std::vector<BC> zb{random_invertible_bc(rng)};
    CHECK(point_dist(u.map_inv(u.map(zb)), zb) <= 1e-12 * (1.0 + point_norm(zb)));
}

TEST_CASE("unfolding satisfies F(map(Z)) = G(Z) and round-trips") {
    const char* fixtures[] = {"Z1^4*tilde(Z1)*hat(Z1)^2*bar(Z1)",
                              "Z1^3*tilde(Z1)*hat(Z1)^2*bar(Z1) + Z2^3*hat(Z2)"};
    Rng rng(67);
    for (const char* expr : fixtures) {
        MPolyQ fq = parse_q(expr);
        auto u = unfold(fq);
        REQUIRE(u.ok);
        MPolyD fd = to_double(fq), gd = to_double(u.target);
        for (int k = 0; k < 50; ++k) {
            auto zs = random_invertible_point(rng, fq.nvars());
            auto w = u.map(zs);
            CHECK(rel_err(fd.eval(w), gd.eval(zs)) <= 1e-9);
            CHECK(point_dist(u.map_inv(w), zs) <= 1e-9 * (1.0 + point_norm(zs)));
        }
    }
}
