#include "bcmk/topology.hpp"

#include <algorithm>
#include <cmath>

namespace bcmk {

namespace {

BC eval_F(const FibrationContext& ctx, std::span<const BC> zs) { return ctx.F.eval(zs); }

bool value_in_zd_closure(const BC& value, double tol) {
    auto p = to_idempotent(value);
    return std::min(std::abs(p.z1), std::abs(p.z2)) <= tol * norm_euclid(value);
}

BC invertible_value_or_throw(const FibrationContext& ctx, std::span<const BC> zs) {
    BC value = eval_F(ctx, zs);
    if (value.is_zero() || value_in_zd_closure(value, ctx.tol))
        throw std::domain_error("F(Z) lies in ZD union {0}");
    return value;
}

}  // namespace

bool in_VF(const FibrationContext& ctx, std::span<const BC> zs) {
    return value_in_zd_closure(eval_F(ctx, zs), ctx.tol);
}

bool link_membership(const FibrationContext& ctx, std::span<const BC> zs) {
    return in_VF(ctx, zs) && std::abs(point_norm(zs) - ctx.eps) <= ctx.tol;
}

BC phi_i(const FibrationContext& ctx, std::span<const BC> zs) {
    BC value = invertible_value_or_throw(ctx, zs);
    std::complex<double> rho = norm_complex(value);
    return BC(value.l1 / rho, value.l2 / rho);
}

BC phi_s3(const FibrationContext& ctx, std::span<const BC> zs) {
    BC value = invertible_value_or_throw(ctx, zs);
    return value * (1.0 / norm_euclid(value));
}

ActionParams solve_action_params(const WeightSystem& w, const BC& u, double tol) {
    if (!is_invertible(u, tol))
        throw std::domain_error("trivialization target must be invertible");
    std::complex<double> rho = norm_complex(u);
    std::complex<double> theta = arg_complex(u, tol).theta;
    // Chart selection: keep Re(Theta) away from the branch cut by using the
    // [-pi, pi) window whenever the principal value sits near 0 or 2*pi.
    double re = theta.real();
    if (re < 0.5 * M_PI || re >= 1.5 * M_PI) {
        if (re >= M_PI) re -= kTwoPi;
        theta = {re, theta.imag()};
    }
    ActionParams p;
    p.s0 = std::pow(std::abs(rho), 1.0 / double(w.a));
    p.theta0 = std::arg(rho) / double(w.c);
    long long sum = w.d + w.dprime, dif = w.d - w.dprime;
    if (sum <= 0) throw std::domain_error("weight system has d + d' <= 0");
    double alpha = theta.real() / double(sum);
    double beta = 0.0;
    if (dif != 0) {
        beta = theta.imag() / double(dif);
    } else if (std::abs(theta.imag()) > 1e-9 * (1.0 + std::abs(theta.real()))) {
        throw std::domain_error(
            "unsupported chart direction: d = d' cannot reach Im(Theta) != 0");
    }
    p.Theta0 = {alpha, beta};
    return p;
}

std::vector<BC> global_trivialize(const FibrationContext& ctx, const BC& u,
                                  std::span<const BC> z0) {
    ActionParams p = solve_action_params(ctx.W, u, ctx.tol);
    return apply_action({p.s0, p.theta0, p.Theta0}, ctx.W, z0).z;
}

FiberPoint global_trivialize_inverse(const FibrationContext& ctx, std::span<const BC> w) {
    BC value = eval_F(ctx, w);
    ActionParams p = solve_action_params(ctx.W, value, ctx.tol);
    auto moved = apply_action({1.0 / p.s0, -p.theta0, -p.Theta0}, ctx.W, w);
    return {std::move(moved.z), value};
}

std::vector<BC> sphere_trivialize(const FibrationContext& ctx, std::complex<double> z,
                                  std::span<const BC> z0) {
    long long sum = ctx.W.d + ctx.W.dprime, dif = ctx.W.d - ctx.W.dprime;
    if (sum <= 0) throw std::domain_error("weight system has d + d' <= 0");
    double beta = 0.0;
    if (dif != 0) {
        beta = z.imag() / double(dif);
    } else if (std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z.real()))) {
        throw std::domain_error(
            "unsupported chart direction: d = d' cannot reach Im(z) != 0");
    }
    std::complex<double> theta0(z.real() / double(sum), beta);
    auto moved = apply_action({1.0, 0.0, theta0}, ctx.W, z0).z;

    // Radial correction back to the eps-sphere: ||s . Z|| is strictly
    // increasing in s, so bisect on log s.
    auto radius = [&](double s) { return point_norm(radial_scale(ctx.W, s, moved)); };
    double lo = 1.0, hi = 1.0;
    while (radius(lo) > ctx.eps && lo > 1e-12) lo *= 0.5;
    while (radius(hi) < ctx.eps && hi < 1e12) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = std::sqrt(lo * hi);
        (radius(mid) < ctx.eps ? lo : hi) = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    return radial_scale(ctx.W, std::sqrt(lo * hi), moved);
}

std::vector<BC> sample_sphere(std::mt19937_64& rng, int nvars, double eps) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<BC> zs(nvars);
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (auto& z : zs) {
            z = BC(g(rng), g(rng), g(rng), g(rng));
            double e = norm_euclid(z);
            n2 += e * e;
        }
    } while (n2 < 1e-12);
    double scale = eps / std::sqrt(n2);
    for (auto& z : zs) z = scale * z;
    return zs;
}

std::vector<BC> sample_off_VF(const FibrationContext& ctx, std::mt19937_64& rng, int max_tries) {
    for (int t = 0; t < max_tries; ++t) {
        auto zs = sample_sphere(rng, ctx.F.nvars(), ctx.eps);
        BC value = eval_F(ctx, zs);
        if (norm_euclid(value) > 1e-9 && !value_in_zd_closure(value, 1e-3)) return zs;
    }
    throw std::runtime_error("could not sample a point with invertible value");
}

namespace {

// Columns: images under the real Jacobian of the four orbit tangents
// (t_i Z_i), i (p_i Z_i), j (u_i Z_i), k (u_i Z_i).
RMat orbit_image(const FibrationContext& ctx, const RMat& jac, std::span<const BC> zs) {
    int n = ctx.F.nvars();
    std::array<std::vector<BC>, 4> tangents;
    for (auto& t : tangents) t.resize(n);
    for (int i = 0; i < n; ++i) {
        tangents[0][i] = double(ctx.W.t[i]) * zs[i];
        tangents[1][i] = double(ctx.W.p[i]) * (BC::unit_i() * zs[i]);
        tangents[2][i] = double(ctx.W.u[i]) * (BC::unit_j() * zs[i]);
        tangents[3][i] = double(ctx.W.u[i]) * (BC::unit_k() * zs[i]);
    }
    RMat img(4, 4);
    for (int col = 0; col < 4; ++col)
        for (int row = 0; row < 4; ++row) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                const BC& z = tangents[col][i];
                double comp[4] = {z.x(), z.y(), z.v(), z.t()};
                for (int c = 0; c < 4; ++c) acc += jac.at(row, 4 * i + c) * comp[c];
            }
            img.at(row, col) = acc;
        }
    return img;
}

double rank4_margin(const RMat& m) {
    auto sv = singular_values(m);
    if (sv.size() < 4 || sv[0] == 0.0) return 0.0;
    return sv[3] / sv[0];
}

}  // namespace

RegularScanResult regular_value_sample(const FibrationContext& ctx, int count) {
    ctx.validate();
    std::mt19937_64 rng(ctx.seed);
    EvaluableMap f = map_from_poly(ctx.F);
    RegularScanResult res;
    res.samples = count;
    for (int k = 0; k < count; ++k) {
        auto zs = sample_off_VF(ctx, rng);
        RMat jac = real_jacobian(f, zs, default_step(zs, ctx.step));
        double margin = rank4_margin(jac);
        double orbit = rank4_margin(orbit_image(ctx, jac, zs));
        res.worst_margin = std::min(res.worst_margin, margin);
        res.worst_orbit_margin = std::min(res.worst_orbit_margin, orbit);
        std::vector<double> row;
        for (const auto& z : zs) {
            row.push_back(z.x());
            row.push_back(z.y());
            row.push_back(z.v());
            row.push_back(z.t());
        }
        row.push_back(margin);
        res.cloud.push_back(std::move(row));
    }
    res.pass = res.worst_margin > 1e-6;
    return res;
}

RayCheckResult discriminant_ray_check(const FibrationContext& ctx, std::span<const BC> p,
                                      int s_samples) {
    ctx.validate();
    EvaluableMap f = map_from_poly(ctx.F);
    RayCheckResult out;
    out.base_margin = rank4_margin(real_jacobian(f, p, default_step(p, ctx.step)));
    out.applicable = out.base_margin <= 1e-6;
    if (!out.applicable) return out;
    out.persists = true;
    for (int k = 0; k < s_samples; ++k) {
        double s = std::pow(2.0, -2.0 + 4.0 * double(k) / std::max(1, s_samples - 1));
        auto scaled = radial_scale(ctx.W, s, p);
        double margin =
            rank4_margin(real_jacobian(f, scaled, default_step(scaled, ctx.step)));
        out.worst_ray_margin = std::max(out.worst_ray_margin, margin);
        if (margin > 1e-6) out.persists = false;
    }
    return out;
}

bool radial_transversality(const FibrationContext& ctx, std::span<const BC> zs) {
    if (point_norm(zs) == 0.0) throw std::invalid_argument("radial_transversality at 0");
    double acc = 0.0;
    for (size_t i = 0; i < zs.size(); ++i) {
        double e = norm_euclid(zs[i]);
        acc += double(ctx.W.t[i]) * e * e;
    }
    return acc > 0.0;
}

bool tube_membership(const FibrationContext& ctx, std::span<const BC> zs, TubeVariant variant) {
    if (point_norm(zs) > ctx.eps) return false;
    BC value = eval_F(ctx, zs);
    if (variant == TubeVariant::BallTarget) {
        if (value.is_zero() || value_in_zd_closure(value, ctx.tol)) return false;
        return norm_euclid(value) <= ctx.delta;
    }
    return std::abs(norm_complex_sq(value) - std::complex<double>(1.0)) <= ctx.tol;
}

bool pb_conditions(const ExponentQuad& q, std::string* why) {
    long long a = q.a, b = q.b, c = q.c, d = q.d;
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!(a - b > d - c)) return fail("needs a-b > d-c");
    if (!(a > c)) return fail("needs a > c");
    if (!(d - b >= 0)) return fail("needs d-b >= 0");
    if (d - b > 0 && a - c != d - b) return fail("needs a-c = d-b when d-b > 0");
    if (!(a - b > 0)) return fail("needs a-b > 0");
    if (!(c - d >= 0)) return fail("needs c-d >= 0");
    return true;
}

BouquetResult bouquet_count(const PhamBrieskornShape& shape) {
    BouquetResult res;
    std::string why;
    for (size_t i = 0; i < shape.quads.size(); ++i)
        if (!pb_conditions(shape.quads[i], &why)) {
            res.report = "variable " + std::to_string(i + 1) + ": " + why;
            return res;
        }
    res.ok = true;
    for (const auto& q : shape.quads) {
        long long plus = (long long)q.a - q.b + q.c - q.d;
        long long minus = (long long)q.a - q.b - q.c + q.d;
        long long sigma = plus * minus - 1;
        res.inv.sigmas.push_back(sigma);
        if (__builtin_mul_overflow(res.inv.m, sigma, &res.inv.m)) {
            res.ok = false;
            res.inv = {};
            res.report = "bouquet count overflows 64 bits";
            return res;
        }
    }
    return res;
}

namespace detail {

std::function<std::vector<BC>(std::span<const BC>)> unfold_forward(std::vector<double> k1,
                                                                   std::vector<double> k2) {
    // Solves the moduli system of the unfolding coordinate change:
    // the input lives in the target (w) coordinates.
    return [k1 = std::move(k1), k2 = std::move(k2)](std::span<const BC> ws) {
        if (ws.size() != k1.size()) throw std::invalid_argument("unfold arity mismatch");
        std::vector<BC> out(ws.size());
        for (size_t i = 0; i < ws.size(); ++i) {
            auto p = to_idempotent(ws[i]);
            double m1 = std::abs(p.z1), m2 = std::abs(p.z2);
            if (m1 == 0.0 || m2 == 0.0)
                throw std::domain_error("unfold map needs invertible coordinates");
            double lm1 = std::log(m1), lm2 = std::log(m2);
            double den = 1.0 + k1[i] + k2[i];
            double l1 = ((1.0 + k2[i]) * lm1 - k2[i] * lm2) / den;
            double l2 = (-k1[i] * lm1 + (1.0 + k1[i]) * lm2) / den;
            out[i] = from_idempotent<double>(p.z1 * std::exp(l1 - lm1),
                                             p.z2 * std::exp(l2 - lm2));
        }
        return out;
    };
}

std::function<std::vector<BC>(std::span<const BC>)> unfold_backward(std::vector<double> k1,
                                                                    std::vector<double> k2) {
    return [k1 = std::move(k1), k2 = std::move(k2)](std::span<const BC> zs) {
        if (zs.size() != k1.size()) throw std::invalid_argument("unfold arity mismatch");
        std::vector<BC> out(zs.size());
        for (size_t i = 0; i < zs.size(); ++i) {
            auto p = to_idempotent(zs[i]);
            double m1 = std::abs(p.z1), m2 = std::abs(p.z2);
            if (m1 == 0.0 || m2 == 0.0)
                throw std::domain_error("unfold map needs invertible coordinates");
            double factor = std::pow(m1, k1[i]) * std::pow(m2, k2[i]);
            out[i] = from_idempotent<double>(p.z1 * factor, p.z2 * factor);
        }
        return out;
    };
}

}  // namespace detail

}  // namespace bcmk
