#include "bcmk/weights.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bcmk {

namespace {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

// Reduced row echelon form; returns pivot column of each pivot row.
std::vector<int> rref(QMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = int(m.size()), cols = int(m[0].size());
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        Rational inv = Rational(1) / m[r][col];
        for (int j = col; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][col].is_zero()) continue;
            Rational f = m[i][col];
            for (int j = col; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

// Basis of the rational nullspace of m (rows may be fewer than columns).
std::vector<QVec> nullspace(QMat m, int cols) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        QVec v(cols, Rational(0));
        v[free] = Rational(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Scale a rational vector to the primitive integer vector on the same ray.
std::vector<long long> primitive_integer(const QVec& v) {
    int128 l = 1;
    for (const auto& q : v) l = checked_mul(l / int128_gcd(l, q.den()), q.den());
    int128 g = 0;
    std::vector<int128> w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        w[i] = checked_mul(v[i].num(), l / v[i].den());
        g = int128_gcd(g, w[i]);
    }
    std::vector<long long> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        int128 x = g == 0 ? w[i] : w[i] / g;
        if (x > INT64_MAX || x < INT64_MIN) throw_overflow();
        out[i] = (long long)x;
    }
    return out;
}

struct Subsystem {
    // deg_rows: one or two row blocks sharing the weight variables.
    std::vector<const std::vector<std::vector<long long>>*> blocks;
    std::string name;
    bool degrees_nonneg = false;  // theta pair: degrees >= 0 with sum > 0
};

struct SubResult {
    bool ok = false;
    std::vector<long long> weights;     // full-length, absent columns fixed to 1
    std::vector<long long> degs;        // one per block
    std::string why;                    // reason when !ok
    std::vector<int> unconstrained;     // variable indices fixed to 1
};

bool degrees_admissible(const Subsystem& sys, std::span<const long long> degs) {
    if (sys.degrees_nonneg) {
        long long sum = 0;
        for (long long d : degs) {
            if (d < 0) return false;
            sum += d;
        }
        return sum > 0;
    }
    for (long long d : degs)
        if (d <= 0) return false;
    return true;
}

// Bounded lexicographic enumeration for under-determined systems.
SubResult enumerate_box(const Subsystem& sys, const std::vector<int>& keep, int mono_count) {
    int nk = int(keep.size());
    int box = nk <= 3 ? 24 : (nk <= 5 ? 12 : (nk <= 6 ? 8 : 0));
    SubResult best;
    if (box == 0) {
        best.why = "solution cone is multi-dimensional and too wide to enumerate";
        return best;
    }
    std::vector<long long> w(nk, 1);
    long long best_deg_sum = 0;
    for (;;) {
        long long g = 0;
        for (long long x : w) g = gcd_ll(g, x);
        if (g == 1) {
            std::vector<long long> degs;
            bool consistent = true;
            for (const auto* blk : sys.blocks) {
                long long deg = 0;
                for (int r = 0; r < mono_count && consistent; ++r) {
                    long long v = 0;
                    for (int i = 0; i < nk; ++i) v += (*blk)[r][keep[i]] * w[i];
                    if (r == 0)
                        deg = v;
                    else if (v != deg)
                        consistent = false;
                }
                degs.push_back(deg);
            }
            if (consistent && degrees_admissible(sys, degs)) {
                long long deg_sum = 0;
                for (long long d : degs) deg_sum += d;
                bool better = !best.ok || deg_sum < best_deg_sum ||
                              (deg_sum == best_deg_sum &&
                               std::lexicographical_compare(w.begin(), w.end(),
                                                            best.weights.begin(),
                                                            best.weights.end()));
                if (better) {
                    best.ok = true;
                    best.weights = w;
                    best.degs = degs;
                    best_deg_sum = deg_sum;
                }
            }
        }
        int i = nk - 1;
        while (i >= 0 && w[i] == box) w[i--] = 1;
        if (i < 0) break;
        ++w[i];
    }
    if (!best.ok && best.why.empty()) best.why = "no positive integer solution in search box";
    return best;
}

SubResult solve_subsystem(const Subsystem& sys, int nvars, int mono_count) {
    SubResult res;
    int nblocks = int(sys.blocks.size());

    // Columns that are zero in every block are unconstrained; their weight
    // is fixed to 1 so the gcd convention stays meaningful.
    std::vector<int> keep;
    for (int i = 0; i < nvars; ++i) {
        bool nonzero = false;
        for (const auto* blk : sys.blocks)
            for (int r = 0; r < mono_count && !nonzero; ++r) nonzero = (*blk)[r][i] != 0;
        if (nonzero)
            keep.push_back(i);
        else
            res.unconstrained.push_back(i);
    }
    int nk = int(keep.size());

    // Augmented homogeneous system [M | -1] over the kept columns plus one
    // degree unknown per block.
    QMat aug;
    for (int b = 0; b < nblocks; ++b)
        for (int r = 0; r < mono_count; ++r) {
            QVec row(nk + nblocks, Rational(0));
            for (int i = 0; i < nk; ++i) row[i] = Rational((*sys.blocks[b])[r][keep[i]]);
            row[nk + b] = Rational(-1);
            aug.push_back(std::move(row));
        }
    auto basis = nullspace(std::move(aug), nk + nblocks);

    std::vector<long long> kept_w;
    std::vector<long long> degs;
    if (basis.empty()) {
        res.why = "only the trivial solution";
    } else if (basis.size() == 1) {
        auto v = primitive_integer(basis[0]);
        // Orient so the weight part is positive.
        int flip = 0;
        for (int i = 0; i < nk && flip == 0; ++i) flip = v[i] > 0 ? 1 : (v[i] < 0 ? -1 : 0);
        if (flip == 0 && nk == 0) flip = 1;
        if (flip == -1)
            for (auto& x : v) x = -x;
        bool positive = true;
        for (int i = 0; i < nk; ++i) positive = positive && v[i] > 0;
        degs.assign(v.begin() + nk, v.end());
        if (!positive) {
            res.why = "no positive weight solution";
        } else if (!degrees_admissible(sys, degs)) {
            res.why = sys.degrees_nonneg ? "d and d' cannot be made nonnegative with one positive"
                                         : "degree must be positive";
        } else {
            kept_w.assign(v.begin(), v.begin() + nk);
            long long g = 0;
            for (long long x : kept_w) g = gcd_ll(g, x);
            if (g > 1) {
                for (auto& x : kept_w) x /= g;
                for (auto& dg : degs) dg /= g;  // divisibility follows from integrality
            }
            res.ok = true;
        }
    } else {
        SubResult e = enumerate_box(sys, keep, mono_count);
        if (e.ok) {
            kept_w = e.weights;
            degs = e.degs;
            res.ok = true;
        } else {
            res.why = e.why;
        }
    }

    if (nk == 0) {
        // All columns unconstrained: degrees are forced to zero.
        degs.assign(nblocks, 0);
        res.ok = degrees_admissible(sys, degs);
        if (!res.ok) res.why = sys.degrees_nonneg ? "d and d' both zero" : "degree forced to zero";
    }
    if (!res.ok) return res;

    res.weights.assign(nvars, 1);
    for (int i = 0; i < nk; ++i) res.weights[keep[i]] = kept_w[i];
    res.degs = degs;
    return res;
}

std::string var_list(const std::vector<int>& vars) {
    std::string s;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (i) s += ", ";
        s += "Z" + std::to_string(vars[i] + 1);
    }
    return s;
}

}  // namespace

WeightReport solve_weights(const DegreeSystem& d) {
    WeightReport rep;

    Subsystem radial{{&d.radial}, "radial", false};
    Subsystem polar{{&d.polar}, "polar", false};
    Subsystem cpolar{{&d.theta, &d.thetabar}, "complex_polar", true};

    auto run = [&](const Subsystem& sys) {
        SubResult r = solve_subsystem(sys, d.nvars, d.monomial_count);
        if (!r.ok) rep.diagnostics.push_back(sys.name + ": " + r.why);
        if (!r.unconstrained.empty())
            rep.unconstrained.push_back(sys.name + ": weight of " + var_list(r.unconstrained) +
                                        " unconstrained, fixed to 1");
        return r;
    };

    SubResult rr = run(radial);
    SubResult rp = run(polar);
    SubResult rc = run(cpolar);
    if (!rr.ok || !rp.ok || !rc.ok) return rep;

    rep.feasible = true;
    rep.W.t = rr.weights;
    rep.W.a = rr.degs[0];
    rep.W.p = rp.weights;
    rep.W.c = rp.degs[0];
    rep.W.u = rc.weights;
    rep.W.d = rc.degs[0];
    rep.W.dprime = rc.degs[1];
    return rep;
}

ActionTuple apply_action(const PolarActionElement& lam, const WeightSystem& w,
                         std::span<const BC> zs) {
    size_t n = zs.size();
    if (w.t.size() != n || w.p.size() != n || w.u.size() != n)
        throw std::invalid_argument("apply_action arity mismatch");
    ActionTuple out;
    out.z.resize(n);
    out.zt.resize(n);
    out.zh.resize(n);
    out.zb.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double st = std::pow(lam.s, double(w.t[i]));
        std::complex<double> phase = std::polar(1.0, double(w.p[i]) * lam.theta);
        BC ejp = exp_j(double(w.u[i]) * lam.Theta);
        BC ejm = exp_j(-double(w.u[i]) * lam.Theta);
        BC ejcp = exp_j(double(w.u[i]) * std::conj(lam.Theta));
        BC ejcm = exp_j(-double(w.u[i]) * std::conj(lam.Theta));
        out.z[i] = st * (ejp * (phase * zs[i]));
        out.zh[i] = st * (ejm * (phase * conj_hat(zs[i])));
        out.zt[i] = st * (ejcm * (std::conj(phase) * conj_tilde(zs[i])));
        out.zb[i] = st * (ejcp * (std::conj(phase) * conj_bar(zs[i])));
    }
    return out;
}

std::vector<BC> radial_scale(const WeightSystem& w, double s, std::span<const BC> zs) {
    std::vector<BC> out(zs.begin(), zs.end());
    for (size_t i = 0; i < out.size(); ++i) out[i] = std::pow(s, double(w.t[i])) * out[i];
    return out;
}

BC homogeneity_factor(const PolarActionElement& lam, const WeightSystem& w) {
    std::complex<double> scal =
        std::pow(lam.s, double(w.a)) * std::polar(1.0, double(w.c) * lam.theta);
    BC f = exp_j(double(w.d) * lam.Theta) * exp_j(double(w.dprime) * std::conj(lam.Theta));
    return scal * f;
}

namespace {

std::vector<BC> random_point(std::mt19937_64& rng, int n, double scale = 0.8) {
    std::normal_distribution<double> g(0.0, scale);
    std::vector<BC> zs(n);
    for (auto& z : zs) z = BC(g(rng), g(rng), g(rng), g(rng));
    return zs;
}

// Radial and imaginary-angle ranges shrink with the largest weight so
// s^{t_i} and cosh(u_i Im Theta) stay in a sane floating range; the real
// angles remain unrestricted.
PolarActionElement random_action(std::mt19937_64& rng, const WeightSystem& w) {
    long long tmax = 1, umax = 1;
    for (long long v : w.t) tmax = std::max(tmax, std::llabs(v));
    for (long long v : w.u) umax = std::max(umax, std::llabs(v));
    std::uniform_real_distribution<double> ls(-0.35, 0.35), uth(0.0, kTwoPi), uim(-0.35, 0.35);
    return {std::exp(ls(rng) / double(tmax)), uth(rng),
            {uth(rng), uim(rng) / double(umax)}};
}

double rel_residual(const BC& got, const BC& want) {
    return norm_euclid(got - want) / std::max(1.0, norm_euclid(want));
}

}  // namespace

CheckResult verify_homogeneity(const MPolyD& f, const WeightSystem& w, int samples, double tol,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        auto zs = random_point(rng, f.nvars());
        PolarActionElement lam = random_action(rng, w);
        ActionTuple tup = apply_action(lam, w, zs);
        BC lhs = f.eval_tuple(tup.z, tup.zt, tup.zh, tup.zb);
        BC rhs = homogeneity_factor(lam, w) * f.eval(zs);
        worst = std::max(worst, rel_residual(lhs, rhs));
    }
    return {worst <= tol, worst};
}

EulerResiduals euler_check(const MPolyD& f, const WeightSystem& w, int samples,
                           std::uint64_t seed) {
    auto polys = euler_residual_polys(f, w);
    std::mt19937_64 rng(seed);
    EulerResiduals res;
    double* out[4] = {&res.r_a, &res.r_c, &res.r_d, &res.r_dprime};
    for (int k = 0; k < samples; ++k) {
        auto zs = random_point(rng, f.nvars());
        double ref = std::max(1.0, norm_euclid(f.eval(zs)));
        for (int i = 0; i < 4; ++i)
            *out[i] = std::max(*out[i], norm_euclid(polys[i].eval(zs)) / ref);
    }
    return res;
}

JoinResult join_weights(const WeightSystem& wf, const WeightSystem& wg) {
    JoinResult out;
    auto scaled_concat = [](std::span<const long long> x, long long fx,
                            std::span<const long long> y, long long fy) {
        std::vector<long long> r;
        r.reserve(x.size() + y.size());
        for (long long v : x) r.push_back(v * fx);
        for (long long v : y) r.push_back(v * fy);
        return r;
    };

    if (wf.a <= 0 || wg.a <= 0 || wf.c <= 0 || wg.c <= 0) {
        out.diagnostics.push_back("join: input systems must have positive radial and polar degrees");
        return out;
    }
    long long a2 = wg.a / gcd_ll(wf.a, wg.a);  // scale for F's side
    long long a1 = wf.a / gcd_ll(wf.a, wg.a);  // scale for G's side
    out.W.t = scaled_concat(wf.t, a2, wg.t, a1);
    out.W.a = wf.a * a2;  // = lcm(a, a')

    long long c2 = wg.c / gcd_ll(wf.c, wg.c);
    long long c1 = wf.c / gcd_ll(wf.c, wg.c);
    out.W.p = scaled_concat(wf.p, c2, wg.p, c1);
    out.W.c = wf.c * c2;

    long long mf, mg;
    if (wf.d > 0 && wg.d > 0) {
        long long x = gcd_ll(wf.d, wg.d);
        mf = wg.d / x;
        mg = wf.d / x;
    } else if (wf.d == 0 && wg.d == 0) {
        if (wf.dprime <= 0 || wg.dprime <= 0) {
            out.diagnostics.push_back("join: complex_polar degrees of an input are all zero");
            return out;
        }
        long long x = gcd_ll(wf.dprime, wg.dprime);
        mf = wg.dprime / x;
        mg = wf.dprime / x;
    } else {
        out.diagnostics.push_back("join: Theta-degrees (" + std::to_string(wf.d) + ", " +
                                  std::to_string(wg.d) + ") cannot be scaled to a common value");
        return out;
    }
    if (wf.dprime * mf != wg.dprime * mg) {
        out.diagnostics.push_back("join: conj(Theta)-degrees are incompatible: d'*e != e'*d");
        return out;
    }
    out.W.u = scaled_concat(wf.u, mf, wg.u, mg);
    out.W.d = wf.d * mf;
    out.W.dprime = wf.dprime * mf;
    out.ok = true;
    return out;
}

}  // namespace bcmk
