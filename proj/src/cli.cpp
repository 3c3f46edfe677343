#include "bcmk/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "bcmk/json_io.hpp"
#include "bcmk/topology.hpp"

namespace bcmk {

namespace {

struct CommonOpts {
    double tol = 1e-8;
    int samples = 100;
    std::uint64_t seed = 42;
    double eps = 1.0;
    double delta = 0.5;
    double step = 1e-5;
    std::string out_path;
    std::string csv_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_csv) {
    cmd->add_option("--tol", o.tol, "numerical tolerance")->capture_default_str();
    cmd->add_option("--samples", o.samples, "sample count for randomized checks")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--eps", o.eps, "sphere radius")->capture_default_str();
    cmd->add_option("--delta", o.delta, "tube radius")->capture_default_str();
    cmd->add_option("--step", o.step, "finite-difference base step")->capture_default_str();
    cmd->add_option("--out", o.out_path, "write the JSON report to this file");
    if (with_csv) cmd->add_option("--csv", o.csv_path, "write sampled point cloud as CSV");
}

double rel_residual(const BC& got, const BC& want) {
    return norm_euclid(got - want) / std::max(1.0, norm_euclid(want));
}

double point_dist(std::span<const BC> a, std::span<const BC> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double e = norm_euclid(a[i] - b[i]);
        s += e * e;
    }
    return std::sqrt(s);
}

std::vector<BCQ> parse_at(const std::string& text, int n) {
    std::vector<BCQ> pts(n);
    std::vector<bool> given(n, false);
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = text.find(';', pos);
        if (end == std::string::npos) end = text.size();
        std::string piece = text.substr(pos, end - pos);
        pos = end + 1;
        size_t eq = piece.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--at expects Z<k>=<literal> pairs separated by ';'");
        std::string name = piece.substr(0, eq);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        if (name.size() < 2 || name[0] != 'Z')
            throw std::invalid_argument("--at variable must look like Z1");
        int idx = std::atoi(name.c_str() + 1);
        if (idx < 1 || idx > n)
            throw std::invalid_argument("--at variable " + name + " outside arity " +
                                        std::to_string(n));
        pts[idx - 1] = parse_bicomplex(piece.substr(eq + 1));
        given[idx - 1] = true;
    }
    for (int i = 0; i < n; ++i)
        if (!given[i])
            throw std::invalid_argument("--at is missing Z" + std::to_string(i + 1));
    return pts;
}

std::vector<BC> to_double(const std::vector<BCQ>& v) {
    std::vector<BC> out;
    out.reserve(v.size());
    for (const auto& z : v) out.push_back(to_double(z));
    return out;
}

struct Section {
    Json j;
    bool pass = true;
};

Section homogeneity_section(const MPolyD& fd, const WeightSystem& w, const CommonOpts& o) {
    CheckResult r = verify_homogeneity(fd, w, o.samples, o.tol, o.seed);
    return {Json{{"samples", o.samples}, {"worst_residual", r.worst}, {"pass", r.pass}}, r.pass};
}

Section euler_section(const MPolyQ& fq, const MPolyD& fd, const WeightSystem& w,
                      const CommonOpts& o) {
    auto exact = euler_check_exact(fq, w);
    EulerResiduals res = euler_check(fd, w, o.samples, o.seed);
    bool pass = res.worst() <= o.tol;
    Json j{{"exact", Json::array({exact[0], exact[1], exact[2], exact[3]})},
           {"residuals",
            Json{{"a", res.r_a}, {"c", res.r_c}, {"d", res.r_d}, {"dprime", res.r_dprime}}},
           {"pass", pass}};
    return {std::move(j), pass};
}

Section regular_section(const FibrationContext& ctx, const CommonOpts& o,
                        std::vector<std::vector<double>>* cloud) {
    RegularScanResult r = regular_value_sample(ctx, o.samples);
    if (cloud) *cloud = r.cloud;
    Json j{{"name", "regular_value_rank"},
           {"samples", r.samples},
           {"worst_margin", r.worst_margin},
           {"worst_orbit_margin", r.worst_orbit_margin},
           {"pass", r.pass}};
    return {std::move(j), r.pass};
}

Section transversality_section(const FibrationContext& ctx, const CommonOpts& o) {
    std::mt19937_64 rng(ctx.seed + 1);
    bool all = true;
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < o.samples; ++k) {
        auto zs = sample_sphere(rng, ctx.F.nvars(), ctx.eps);
        double acc = 0.0;
        for (size_t i = 0; i < zs.size(); ++i) {
            double e = norm_euclid(zs[i]);
            acc += double(ctx.W.t[i]) * e * e;
        }
        worst = std::min(worst, acc);
        all = all && radial_transversality(ctx, zs);
    }
    Json j{{"name", "radial_transversality"},
           {"samples", o.samples},
           {"worst_margin", worst},
           {"pass", all && worst > 0.0}};
    return {std::move(j), all && worst > 0.0};
}

Section trivialize_section(const FibrationContext& ctx, const CommonOpts& o) {
    std::mt19937_64 rng(ctx.seed + 2);
    std::uniform_real_distribution<double> ure(-0.3, 0.3), uim(-0.2, 0.2);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst_fiber = 0.0, worst_rt = 0.0, worst_sphere = 0.0;
    for (int k = 0; k < o.samples; ++k) {
        auto x = sample_off_VF(ctx, rng);
        FiberPoint fp = global_trivialize_inverse(ctx, x);
        // target value independent of the base point, so the check exercises
        // the homogeneity factor and not just action composition
        BC u;
        do {
            u = BC(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
        } while (is_zero_divisor(u, 1e-2) || norm_euclid(u) < 0.1);
        if (ctx.W.d == ctx.W.dprime) {
            // only targets with real Theta are reachable when d = d'
            std::complex<double> rho = norm_complex(u);
            u = rho * exp_j(std::complex<double>(arg_complex(u).theta.real(), 0.0));
        }
        auto w = global_trivialize(ctx, u, fp.point);
        worst_fiber = std::max(worst_fiber, rel_residual(ctx.F.eval(w), u));
        FiberPoint back = global_trivialize_inverse(ctx, w);
        worst_rt = std::max(worst_rt, point_dist(back.point, fp.point) /
                                          (1.0 + point_norm(fp.point)));
        std::complex<double> z(ure(rng), ctx.W.d == ctx.W.dprime ? 0.0 : uim(rng));
        auto moved = sphere_trivialize(ctx, z, x);
        BC target = exp_j(z) * phi_i(ctx, x);
        double r3 = norm_euclid(phi_i(ctx, moved) - target) +
                    std::abs(point_norm(moved) - ctx.eps);
        worst_sphere = std::max(worst_sphere, r3);
    }
    bool pass = worst_fiber <= o.tol && worst_rt <= o.tol && worst_sphere <= o.tol;
    Json j{{"samples", o.samples},
           {"worst_fiber_residual", worst_fiber},
           {"worst_roundtrip", worst_rt},
           {"worst_sphere_residual", worst_sphere},
           {"pass", pass}};
    return {std::move(j), pass};
}

Json invariants_section(const MPolyQ& fq) {
    Json j;
    BouquetResult b = bouquet_count(fq);
    if (b.ok) {
        j["bouquet"] = Json{{"sigmas", b.inv.sigmas}, {"m", b.inv.m}};
    } else {
        j["bouquet"] = nullptr;
    }
    CyclicResult c = cyclic_invariants(fq);
    if (c.ok) {
        j["cyclic"] = Json{{"m1", c.inv.m1},
                           {"m2", c.inv.m2},
                           {"m", c.inv.m},
                           {"points", c.inv.point_count}};
    } else {
        j["cyclic"] = nullptr;
    }
    return j;
}

Json cpoly_json(const ComplexMixedPoly<Rational>& p) {
    Json monos = Json::array();
    for (const auto& m : p.monomials()) {
        Json exps = Json::array();
        for (const auto& q : m.exps)
            exps.push_back(Json{{"z1", q.a}, {"z1bar", q.b}, {"z2", q.c}, {"z2bar", q.d}});
        monos.push_back(Json{{"re", m.coeff.re.str()}, {"im", m.coeff.im.str()},
                             {"exps", exps}});
    }
    return monos;
}

std::string cpoly_text(const ComplexMixedPoly<Rational>& p) {
    if (p.monomials().empty()) return "0";
    std::string out;
    bool first_mono = true;
    for (const auto& m : p.monomials()) {
        std::string factors;
        for (size_t i = 0; i < m.exps.size(); ++i) {
            const ExponentQuad& q = m.exps[i];
            auto piece = [&](const char* base, std::uint32_t e, bool conj) {
                if (e == 0) return;
                if (!factors.empty()) factors += '*';
                std::string v = std::string(base) + "_" + std::to_string(i + 1);
                factors += conj ? "conj(" + v + ")" : v;
                if (e != 1) factors += "^" + std::to_string(e);
            };
            piece("z1", q.a, false);
            piece("z1", q.b, true);
            piece("z2", q.c, false);
            piece("z2", q.d, true);
        }
        std::string coeff;
        bool one = m.coeff == CxQ(Rational(1));
        if (!one || factors.empty()) {
            bool needs_parens = !m.coeff.im.is_zero() && !m.coeff.re.is_zero();
            std::string c = m.coeff.im.is_zero()
                                ? m.coeff.re.str()
                                : (m.coeff.re.is_zero()
                                       ? m.coeff.im.str() + "i"
                                       : m.coeff.re.str() +
                                             (m.coeff.im.sign() < 0 ? "" : "+") +
                                             m.coeff.im.str() + "i");
            coeff = needs_parens ? "(" + c + ")" : c;
        }
        std::string term = coeff.empty() ? factors
                           : factors.empty() ? coeff
                                             : coeff + "*" + factors;
        out += first_mono ? term : " + " + term;
        first_mono = false;
    }
    return out;
}

Json poly_ast_json(const MPolyQ& f) {
    Json monos = Json::array();
    for (const auto& m : f.monomials()) {
        Json exps = Json::array();
        for (const auto& q : m.exps)
            exps.push_back(Json{{"a", q.a}, {"b", q.b}, {"c", q.c}, {"d", q.d}});
        monos.push_back(Json{{"coeff", to_json(m.coeff)}, {"exps", exps}});
    }
    return Json{{"nvars", f.nvars()}, {"monomials", monos}};
}

void write_csv(const std::string& path, int nvars,
               const std::vector<std::vector<double>>& cloud) {
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open CSV output file " + path);
    f << "index";
    for (int i = 1; i <= nvars; ++i)
        f << ",Z" << i << ".x,Z" << i << ".y,Z" << i << ".v,Z" << i << ".t";
    f << ",margin\n";
    for (size_t r = 0; r < cloud.size(); ++r) {
        f << r;
        for (double v : cloud[r]) f << ',' << double_to_string(v);
        f << '\n';
    }
}

void emit(const Json& j, const CommonOpts& o, std::ostream& out) {
    std::string text = j.dump(2);
    text += '\n';
    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path);
        if (!f) throw std::invalid_argument("cannot open output file " + o.out_path);
        f << text;
    } else {
        out << text;
    }
}

Json base_report(const char* command, const std::string& input, const MPolyQ& fq) {
    return Json{{"schema", "bcmk/1"},
                {"command", command},
                {"input", input},
                {"canonical", format(fq)},
                {"nvars", fq.nvars()}};
}

FibrationContext make_ctx(const MPolyD& fd, const WeightSystem& w, const CommonOpts& o) {
    FibrationContext ctx{fd, w, o.eps, o.delta, o.tol, o.seed, o.step};
    ctx.validate();
    return ctx;
}

Json tolerances_json(const CommonOpts& o) {
    return Json{{"tol", o.tol},
                {"eps", o.eps},
                {"delta", o.delta},
                {"step", o.step},
                {"samples", o.samples}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bicomplex mixed-polynomial toolkit"};
    app.require_subcommand(1);

    struct Cmd {
        CLI::App* app = nullptr;
        CommonOpts opts;
        std::string expr, expr2, at, target, variant = "ball";
    };
    std::map<std::string, Cmd> cmds;

    auto add_cmd = [&](const char* name, const char* desc, bool two_exprs = false,
                       bool with_csv = false) -> Cmd& {
        Cmd& c = cmds[name];
        c.app = app.add_subcommand(name, desc);
        c.app->add_option("expr", c.expr, "mixed polynomial expression")->required();
        if (two_exprs)
            c.app->add_option("expr2", c.expr2, "second polynomial on fresh variables")
                ->required();
        add_common(c.app, c.opts, with_csv);
        return c;
    };

    add_cmd("eval", "evaluate a polynomial at a point (exact)")
        .app->add_option("--at", cmds["eval"].at, "point, e.g. \"Z1=1+2i;Z2=j\"")
        ->required();
    add_cmd("idempotent", "idempotent representation (f1, f2)");
    add_cmd("classify", "holomorphic / tilde / hat / bar / general");
    add_cmd("weights", "solve for polar weighted homogeneity");
    add_cmd("verify", "solve weights and verify the homogeneity identity");
    add_cmd("euler", "check the four Euler identities");
    add_cmd("regular-scan", "regular-value rank margins and transversality", false, true);
    add_cmd("trivialize", "global and spherical trivialization residuals")
        .app->add_option("--target", cmds["trivialize"].target,
                         "optional explicit target value U");
    add_cmd("bouquet", "Pham-Brieskorn bouquet invariants");
    add_cmd("cyclic", "cyclic form invariants");
    add_cmd("join", "join two weight systems on disjoint variables", true);
    add_cmd("unfold", "unfold a mixed Pham-Brieskorn form to its hat target");
    {
        Cmd& c = add_cmd("tube", "tube membership of a point");
        c.app->add_option("--at", c.at, "point, e.g. \"Z1=1+2i\"")->required();
        c.app->add_option("--variant", c.variant, "ball or quadric")
            ->check(CLI::IsMember({"ball", "quadric"}))
            ->capture_default_str();
    }
    add_cmd("report", "full analysis report", false, true);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        int code = app.exit(e, os, os);
        (code == 0 ? out : err) << os.str();
        return code == 0 ? 0 : 1;
    }

    const auto run = [&](const Cmd& c, auto&& handler) -> int {
        ParseResult parsed = parse_polynomial(c.expr);
        return handler(c, parsed.poly);
    };

    try {
        for (auto& [name, c] : cmds) {
            if (!c.app->parsed()) continue;
            const CommonOpts& o = c.opts;

            if (name == "eval")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    auto pts = parse_at(cc.at, fq.nvars());
                    BCQ value = fq.eval(pts);
                    Json j = base_report("eval", cc.expr, fq);
                    Json at;
                    for (int i = 0; i < fq.nvars(); ++i)
                        at["Z" + std::to_string(i + 1)] = to_literal(pts[i]);
                    j["at"] = at;
                    j["value"] = to_json(value);
                    emit(j, o, out);
                    return 0;
                });

            if (name == "idempotent")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    auto pair = idempotent_rep(fq);
                    Json j = base_report("idempotent", cc.expr, fq);
                    j["f1"] = Json{{"text", cpoly_text(pair.f1)}, {"monomials", cpoly_json(pair.f1)}};
                    j["f2"] = Json{{"text", cpoly_text(pair.f2)}, {"monomials", cpoly_json(pair.f2)}};
                    emit(j, o, out);
                    return 0;
                });

            if (name == "classify")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    Json j = base_report("classify", cc.expr, fq);
                    j["classification"] = poly_class_name(fq.classify());
                    j["ast"] = poly_ast_json(fq);
                    emit(j, o, out);
                    return 0;
                });

            if (name == "weights")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    WeightReport rep = solve_weights(fq);
                    Json j = base_report("weights", cc.expr, fq);
                    j.update(to_json(rep));
                    emit(j, o, out);
                    return rep.feasible ? 0 : 2;
                });

            if (name == "verify")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    WeightReport rep = solve_weights(fq);
                    Json j = base_report("verify", cc.expr, fq);
                    j["weights"] = to_json(rep);
                    if (!rep.feasible) {
                        j["homogeneity"] = nullptr;
                        emit(j, o, out);
                        return 2;
                    }
                    Section s = homogeneity_section(to_double(fq), rep.W, o);
                    j["homogeneity"] = s.j;
                    emit(j, o, out);
                    return s.pass ? 0 : 2;
                });

            if (name == "euler")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    WeightReport rep = solve_weights(fq);
                    Json j = base_report("euler", cc.expr, fq);
                    j["weights"] = to_json(rep);
                    if (!rep.feasible) {
                        j["euler"] = nullptr;
                        emit(j, o, out);
                        return 2;
                    }
                    Section s = euler_section(fq, to_double(fq), rep.W, o);
                    j["euler"] = s.j;
                    emit(j, o, out);
                    return s.pass ? 0 : 2;
                });

            if (name == "regular-scan")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    WeightReport rep = solve_weights(fq);
                    Json j = base_report("regular-scan", cc.expr, fq);
                    j["weights"] = to_json(rep);
                    if (!rep.feasible) {
                        j["sampling"] = nullptr;
                        emit(j, o, out);
                        return 2;
                    }
                    FibrationContext ctx = make_ctx(to_double(fq), rep.W, o);
                    std::vector<std::vector<double>> cloud;
                    Section reg = regular_section(ctx, o, &cloud);
                    Section tr = transversality_section(ctx, o);
                    j["sampling"] = Json{{"regular", reg.j}, {"radial_transversality", tr.j}};
                    if (!o.csv_path.empty()) write_csv(o.csv_path, fq.nvars(), cloud);
                    emit(j, o, out);
                    return reg.pass && tr.pass ? 0 : 2;
                });

            if (name == "trivialize")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    WeightReport rep = solve_weights(fq);
                    Json j = base_report("trivialize", cc.expr, fq);
                    j["weights"] = to_json(rep);
                    if (!rep.feasible) {
                        j["trivialization"] = nullptr;
                        emit(j, o, out);
                        return 2;
                    }
                    FibrationContext ctx = make_ctx(to_double(fq), rep.W, o);
                    Section s = trivialize_section(ctx, o);
                    j["trivialization"] = s.j;
                    if (!cc.target.empty()) {
                        BC u = to_double(parse_bicomplex(cc.target));
                        std::mt19937_64 rng(ctx.seed + 3);
                        auto x = sample_off_VF(ctx, rng);
                        auto z0 = global_trivialize_inverse(ctx, x).point;
                        auto w = global_trivialize(ctx, u, z0);
                        j["target"] = Json{{"U", to_json(u)},
                                           {"residual", rel_residual(ctx.F.eval(w), u)}};
                    }
                    emit(j, o, out);
                    return s.pass ? 0 : 2;
                });

            if (name == "bouquet")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    BouquetResult b = bouquet_count(fq);
                    Json j = base_report("bouquet", cc.expr, fq);
                    if (!b.ok) {
                        j["feasible"] = false;
                        j["report"] = b.report;
                        emit(j, o, out);
                        return 2;
                    }
                    j["sigmas"] = b.inv.sigmas;
                    j["m"] = b.inv.m;
                    emit(j, o, out);
                    return 0;
                });

            if (name == "cyclic")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    CyclicResult r = cyclic_invariants(fq);
                    Json j = base_report("cyclic", cc.expr, fq);
                    if (!r.ok) {
                        j["feasible"] = false;
                        j["report"] = r.report;
                        emit(j, o, out);
                        return 2;
                    }
                    j["m1"] = r.inv.m1;
                    j["m2"] = r.inv.m2;
                    j["m"] = r.inv.m;
                    j["points"] = r.inv.point_count;
                    emit(j, o, out);
                    return 0;
                });

            if (name == "join")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    ParseResult g = parse_polynomial(cc.expr2);
                    WeightReport rf = solve_weights(fq);
                    WeightReport rg = solve_weights(g.poly);
                    Json j = base_report("join", cc.expr, fq);
                    j["g_input"] = cc.expr2;
                    j["g_canonical"] = format(g.poly);
                    j["f_weights"] = to_json(rf);
                    j["g_weights"] = to_json(rg);
                    if (!rf.feasible || !rg.feasible) {
                        j["joined"] = nullptr;
                        emit(j, o, out);
                        return 2;
                    }
                    JoinResult jr = join_weights(rf.W, rg.W);
                    if (!jr.ok) {
                        j["joined"] = Json{{"feasible", false}, {"diagnostics", jr.diagnostics}};
                        emit(j, o, out);
                        return 2;
                    }
                    WeightReport joined;
                    joined.feasible = true;
                    joined.W = jr.W;
                    j["joined"] = to_json(joined);
                    int total = fq.nvars() + g.poly.nvars();
                    MPolyQ h = fq.widen(total, 0) + g.poly.widen(total, fq.nvars());
                    Section s = homogeneity_section(to_double(h), jr.W, o);
                    j["homogeneity"] = s.j;
                    emit(j, o, out);
                    return s.pass ? 0 : 2;
                });

            if (name == "unfold")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    auto u = unfold(fq);
                    Json j = base_report("unfold", cc.expr, fq);
                    if (!u.ok) {
                        j["feasible"] = false;
                        j["report"] = u.report;
                        emit(j, o, out);
                        return 2;
                    }
                    Json ks = Json::array();
                    for (auto& [k1, k2] : u.k)
                        ks.push_back(Json{{"k1", k1.str()}, {"k2", k2.str()}});
                    j["k"] = ks;
                    j["target"] = format(u.target);
                    if (!u.warning.empty()) j["warning"] = u.warning;
                    MPolyD fd = to_double(fq), gd = to_double(u.target);
                    std::mt19937_64 rng(o.seed);
                    std::normal_distribution<double> gauss(0.0, 0.8);
                    double worst_id = 0.0, worst_rt = 0.0;
                    for (int k = 0; k < o.samples; ++k) {
                        std::vector<BC> zs(fq.nvars());
                        for (auto& z : zs) {
                            do {
                                z = BC(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
                            } while (is_zero_divisor(z, 5e-2) || norm_euclid(z) < 1e-2);
                        }
                        auto w = u.map(zs);
                        worst_id = std::max(worst_id, rel_residual(fd.eval(w), gd.eval(zs)));
                        auto back = u.map_inv(w);
                        worst_rt = std::max(worst_rt,
                                            point_dist(back, zs) / (1.0 + point_norm(zs)));
                    }
                    bool pass = worst_id <= o.tol && worst_rt <= o.tol;
                    j["checks"] = Json{{"samples", o.samples},
                                       {"worst_identity", worst_id},
                                       {"worst_roundtrip", worst_rt},
                                       {"pass", pass}};
                    emit(j, o, out);
                    return pass ? 0 : 2;
                });

            if (name == "tube")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    auto pts = to_double(parse_at(cc.at, fq.nvars()));
                    FibrationContext ctx{to_double(fq), {}, o.eps, o.delta, o.tol, o.seed, o.step};
                    ctx.validate();
                    TubeVariant v = cc.variant == "quadric" ? TubeVariant::QuadricTarget
                                                            : TubeVariant::BallTarget;
                    Json j = base_report("tube", cc.expr, fq);
                    j["variant"] = cc.variant;
                    j["member"] = tube_membership(ctx, pts, v);
                    emit(j, o, out);
                    return 0;
                });

            if (name == "report")
                return run(c, [&](const Cmd& cc, const MPolyQ& fq) {
                    WeightReport rep = solve_weights(fq);
                    Json j = base_report("report", cc.expr, fq);
                    j["classification"] = poly_class_name(fq.classify());
                    j["weights"] = to_json(rep);
                    bool pass = rep.feasible;
                    if (rep.feasible) {
                        MPolyD fd = to_double(fq);
                        Section hom = homogeneity_section(fd, rep.W, o);
                        Section eul = euler_section(fq, fd, rep.W, o);
                        FibrationContext ctx = make_ctx(fd, rep.W, o);
                        std::vector<std::vector<double>> cloud;
                        Section reg = regular_section(ctx, o, &cloud);
                        Section tr = transversality_section(ctx, o);
                        Section triv = trivialize_section(ctx, o);
                        j["homogeneity"] = hom.j;
                        j["euler"] = eul.j;
                        j["sampling"] = Json{{"regular", reg.j}, {"radial_transversality", tr.j}};
                        j["trivialization"] = triv.j;
                        if (!o.csv_path.empty()) write_csv(o.csv_path, fq.nvars(), cloud);
                        pass = hom.pass && eul.pass && reg.pass && tr.pass && triv.pass;
                    } else {
                        j["homogeneity"] = nullptr;
                        j["euler"] = nullptr;
                        j["sampling"] = nullptr;
                        j["trivialization"] = nullptr;
                    }
                    j["invariants"] = invariants_section(fq);
                    j["seed"] = o.seed;
                    j["tolerances"] = tolerances_json(o);
                    emit(j, o, out);
                    return pass ? 0 : 2;
                });
        }
        err << "error: no subcommand selected\n";
        return 1;
    } catch (const SyntaxError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace bcmk
