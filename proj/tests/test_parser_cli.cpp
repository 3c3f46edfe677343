#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "bcmk/cli.hpp"
#include "support.hpp"

using namespace bcmk;
using namespace bcmk::testing;

TEST_CASE("parser: worked examples") {
    ParseResult r = parse_polynomial("Z1^2 + Z2^2");
    CHECK(r.arity == 2);
    REQUIRE(r.poly.monomials().size() == 2);
    CHECK(r.poly.monomials()[0].exps[0] == ExponentQuad{2, 0, 0, 0});
    CHECK(r.poly.monomials()[1].exps[1] == ExponentQuad{2, 0, 0, 0});
    CHECK(format(r.poly) == "Z1^2 + Z2^2");

    ParseResult lit = parse_polynomial("(1+2i+3j+4k)*Z1*bar(Z1)");
    REQUIRE(lit.poly.monomials().size() == 1);
    const auto& m = lit.poly.monomials()[0];
    CHECK(m.coeff == BCQ(Rational(1), Rational(2), Rational(3), Rational(4)));
    CHECK(m.exps[0] == ExponentQuad{1, 0, 0, 1});

    try {
        parse_polynomial("Z1^");
        FAIL("expected syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 1);
        CHECK(e.col() == 4);
    }
}

TEST_CASE("parser: conjugation towers compose") {
    CHECK(parse_q("tilde(hat(Z1))") == parse_q("bar(Z1)"));
    CHECK(parse_q("hat(bar(Z1))") == parse_q("tilde(Z1)"));
    CHECK(parse_q("tilde(tilde(Z1))") == parse_q("Z1"));
    CHECK(parse_q("bar(tilde(hat(Z1)))") == parse_q("Z1"));
}

TEST_CASE("parser: literals, units, fractions") {
    CHECK(parse_bicomplex("1+2i+3j+4k") == BCQ(Rational(1), Rational(2), Rational(3), Rational(4)));
    CHECK(parse_bicomplex("-1/2+3/4i") == BCQ(Rational(-1, 2), Rational(3, 4), Rational(0), Rational(0)));
    CHECK(parse_bicomplex("2.5k") == BCQ(Rational(0), Rational(0), Rational(0), Rational(5, 2)));
    CHECK(parse_bicomplex("j") == BCQ::unit_j());
    CHECK(parse_bicomplex("0") == BCQ{});
    CHECK_THROWS_AS(parse_bicomplex("Z1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_polynomial("1/0"), SyntaxError);
}

TEST_CASE("parser: error paths") {
    CHECK_THROWS_AS(parse_polynomial("2 Z1"), SyntaxError);       // implicit multiplication
    CHECK_THROWS_AS(parse_polynomial("2Z1"), SyntaxError);        // glued variable
    CHECK_THROWS_AS(parse_polynomial("Z0"), SyntaxError);         // indices start at 1
    CHECK_THROWS_AS(parse_polynomial("tilde(Z1+Z2)"), SyntaxError);
    CHECK_THROWS_AS(parse_polynomial("foo(Z1)"), SyntaxError);
    CHECK_THROWS_AS(parse_polynomial("Z1^1000"), SyntaxError);    // exponent cap
    // nested powers cannot wrap the exponent storage
    CHECK_THROWS_AS(parse_polynomial("Z1^64^64^64^64^64^64"), std::overflow_error);
    CHECK_THROWS_AS(parse_polynomial("(Z1"), SyntaxError);
    CHECK_THROWS_AS(parse_polynomial(""), SyntaxError);
    CHECK_THROWS_AS(parse_polynomial(std::string(2000, '(')), SyntaxError);  // depth cap
}

TEST_CASE("format: zero and canonical monomials") {
    CHECK(format(MPolyQ::zero(1)) == "0");
    CHECK(format(parse_q("Z1^2*bar(Z2)")) == "Z1^2*bar(Z2)");
    // canonical order puts the Z1 power first regardless of input order
    CHECK(format(parse_q("1/2*tilde(Z2) - Z1")) == "-Z1 + 1/2*tilde(Z2)");
    CHECK(format(parse_q("(1+2i)*Z1")) == "(1+2i)*Z1");
    CHECK(format(parse_q("-2i*Z1")) == "-2i*Z1");
}

TEST_CASE("format/parse round trip on random canonical polynomials") {
    Rng rng(71);
    for (int k = 0; k < 300; ++k) {
        int n = 1 + int(rng() % 3);
        MPolyQ f = random_poly(rng, n, 4, 5);
        MPolyQ g = parse_polynomial(format(f)).poly;
        if (f.is_zero()) {
            CHECK(g.is_zero());
            continue;
        }
        g = g.widen(f.nvars(), 0);
        CHECK(f == g);
        // projection property: format(parse(format)) == format
        CHECK(format(g) == format(f));
    }
}

TEST_CASE("parser: fuzzing never crashes") {
    Rng rng(72);
    std::uniform_int_distribution<int> len(0, 40), byte(0, 255);
    const std::string alphabet = "Z123+-*^()tildehatbarijk/. ";
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    int parsed_ok = 0;
    for (int k = 0; k < 2000; ++k) {
        std::string s;
        int L = len(rng);
        bool structured = k % 2 == 0;
        for (int i = 0; i < L; ++i)
            s.push_back(structured ? alphabet[pick(rng)] : char(byte(rng)));
        try {
            parse_polynomial(s);
            ++parsed_ok;
        } catch (const SyntaxError&) {
        } catch (const std::overflow_error&) {
        }
    }
    CHECK(parsed_ok >= 0);  // reaching here means no crash / no unexpected throw
}

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: weights of the quadratic example") {
    CliRun r = cli({"weights", "Z1^2+Z2^2"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "bcmk/1");
    CHECK(j["feasible"] == true);
    CHECK(j["radial"]["a"] == 2);
    CHECK(j["radial"]["t"] == nlohmann::json::array({1, 1}));
}

TEST_CASE("cli: bouquet output and exit codes") {
    CliRun r = cli({"bouquet", "Z1^3"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["sigmas"] == nlohmann::json::array({8}));
    CHECK(j["m"] == 8);

    CliRun bad = cli({"bouquet", "Z1^2*tilde(Z1)"});
    CHECK(bad.code == 2);

    CliRun infeasible = cli({"weights", "bar(Z1)"});
    CHECK(infeasible.code == 2);
    auto ji = nlohmann::json::parse(infeasible.out);
    CHECK(ji["feasible"] == false);
    CHECK(!ji["diagnostics"].empty());

    CliRun syntax = cli({"weights", "Z1^"});
    CHECK(syntax.code == 1);
    CHECK(syntax.err.find("column 4") != std::string::npos);

    CliRun usage = cli({"no-such-command"});
    CHECK(usage.code == 1);
}

TEST_CASE("cli: eval and tube") {
    CliRun r = cli({"eval", "Z1*hat(Z1)", "--at", "Z1=1+j"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"]["x"] == 2.0);
    CHECK(j["value"]["literal"] == "2");

    CliRun t = cli({"tube", "Z1", "--at", "Z1=1", "--variant", "quadric", "--eps", "2.0"});
    CHECK(t.code == 0);
    CHECK(nlohmann::json::parse(t.out)["member"] == true);

    CliRun tb = cli({"tube", "Z1", "--at", "Z1=0.1", "--variant", "ball"});
    CHECK(tb.code == 0);
    CHECK(nlohmann::json::parse(tb.out)["member"] == true);
}

TEST_CASE("cli: verify, euler, classify, idempotent") {
    CHECK(cli({"verify", "Z1^2+Z2^2", "--samples", "50"}).code == 0);
    CHECK(cli({"euler", "Z1^2+Z2^2", "--samples", "50"}).code == 0);

    CliRun c = cli({"classify", "Z1*tilde(Z1)"});
    CHECK(nlohmann::json::parse(c.out)["classification"] == "tilde");

    CliRun idem = cli({"idempotent", "Z1*tilde(Z1)"});
    auto j = nlohmann::json::parse(idem.out);
    CHECK(j["f1"]["text"] == "z1_1*conj(z1_1)");
    CHECK(j["f2"]["text"] == "z2_1*conj(z2_1)");
}

TEST_CASE("cli: join and unfold") {
    CliRun j = cli({"join", "Z1^2", "Z1^3", "--samples", "40"});
    CHECK(j.code == 0);
    auto jj = nlohmann::json::parse(j.out);
    CHECK(jj["joined"]["radial"]["t"] == nlohmann::json::array({3, 2}));
    CHECK(jj["joined"]["radial"]["a"] == 6);
    CHECK(jj["homogeneity"]["pass"] == true);

    CliRun u = cli({"unfold", "Z1^4*tilde(Z1)*hat(Z1)^2*bar(Z1)", "--samples", "40"});
    CHECK(u.code == 0);
    auto ju = nlohmann::json::parse(u.out);
    CHECK(ju["k"][0]["k1"] == "1/2");
    CHECK(ju["target"] == "Z1^3*hat(Z1)");
    CHECK(ju["checks"]["pass"] == true);

    // b != d: the composite identity cannot hold bicomplex-exactly; the
    // command reports the failed check and the warning honestly.
    CliRun uw = cli({"unfold", "Z1^2*tilde(Z1)*hat(Z1)", "--samples", "20"});
    CHECK(uw.code == 2);
    auto jw = nlohmann::json::parse(uw.out);
    CHECK(jw["k"][0]["k1"] == "1");
    CHECK(jw["target"] == "Z1*hat(Z1)");
    CHECK(jw.contains("warning"));
}

TEST_CASE("cli: file outputs, explicit target, infeasible report") {
    std::string out_path = "/tmp/bcmk_test_report.json";
    std::string csv_path = "/tmp/bcmk_test_cloud.csv";
    CliRun r = cli({"regular-scan", "Z1^2+Z2^2", "--samples", "10", "--out", out_path,
                    "--csv", csv_path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream jf(out_path), cf(csv_path);
    REQUIRE(jf.good());
    REQUIRE(cf.good());
    auto j = nlohmann::json::parse(jf);
    CHECK(j["sampling"]["regular"]["pass"] == true);
    std::string header;
    std::getline(cf, header);
    CHECK(header == "index,Z1.x,Z1.y,Z1.v,Z1.t,Z2.x,Z2.y,Z2.v,Z2.t,margin");
    int lines = 0;
    for (std::string line; std::getline(cf, line);) ++lines;
    CHECK(lines == 10);

    CliRun t = cli({"trivialize", "Z1^2", "--samples", "10", "--target", "4"});
    CHECK(t.code == 0);
    auto jt = nlohmann::json::parse(t.out);
    CHECK(jt["target"]["residual"] <= 1e-8);

    CliRun inf = cli({"report", "bar(Z1)", "--samples", "10"});
    CHECK(inf.code == 2);
    auto ji = nlohmann::json::parse(inf.out);
    CHECK(ji["weights"]["feasible"] == false);
    CHECK(ji["homogeneity"].is_null());
}

TEST_CASE("cli: deterministic reports") {
    std::vector<std::string> args{"report", "Z1^2+Z2^2", "--samples", "25", "--seed", "7"};
    CliRun a = cli(args);
    CliRun b = cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());

    auto j = nlohmann::json::parse(a.out);
    CHECK(j["classification"] == "holomorphic");
    CHECK(j["homogeneity"]["pass"] == true);
    CHECK(j["euler"]["pass"] == true);
    CHECK(j["sampling"]["regular"]["pass"] == true);
    CHECK(j["trivialization"]["pass"] == true);
    CHECK(j["seed"] == 7);
}
