#include "bcmk/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace bcmk {

namespace {

constexpr unsigned kMaxExponent = 64;
constexpr int kMaxVarIndex = 64;
constexpr int kMaxDepth = 256;

struct Token {
    enum class Kind { End, Plus, Minus, Star, Caret, LParen, RParen, Number, Var, ConjFn };
    Kind kind = Kind::End;
    int line = 1;
    int col = 1;
    std::string text;

    Rational value;     // Number
    int unit = 0;       // Number: 0 none, 1 i, 2 j, 3 k
    bool plain_uint = false;
    unsigned uint_value = 0;

    int var = 0;        // Var
    ConjKind conj{};    // ConjFn
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : s_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_ws();
            Token t;
            t.line = line_;
            t.col = col_;
            if (eof()) {
                t.kind = Token::Kind::End;
                out.push_back(t);
                return out;
            }
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                lex_number(t);
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                lex_ident(t);
            } else {
                switch (c) {
                    case '+': t.kind = Token::Kind::Plus; break;
                    case '-': t.kind = Token::Kind::Minus; break;
                    case '*': t.kind = Token::Kind::Star; break;
                    case '^': t.kind = Token::Kind::Caret; break;
                    case '(': t.kind = Token::Kind::LParen; break;
                    case ')': t.kind = Token::Kind::RParen; break;
                    default:
                        throw SyntaxError(line_, col_, "a token",
                                          "unexpected character '" + std::string(1, c) + "'");
                }
                t.text = std::string(1, c);
                advance();
            }
            out.push_back(std::move(t));
        }
    }

private:
    bool eof() const { return pos_ >= s_.size(); }
    char peek(size_t ahead = 0) const {
        return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
    }
    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    std::string take_digits() {
        std::string d;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            d.push_back(peek());
            advance();
        }
        return d;
    }

    void lex_number(Token& t) {
        t.kind = Token::Kind::Number;
        std::string text = take_digits();
        bool plain = true;
        if (peek() == '.' || peek() == '/') {
            plain = false;
            char sep = peek();
            text.push_back(sep);
            advance();
            std::string frac = take_digits();
            if (frac.empty())
                throw SyntaxError(line_, col_, "digits",
                                  std::string("malformed number after '") + sep + "'");
            if (sep == '/' && frac.find_first_not_of('0') == std::string::npos)
                throw SyntaxError(line_, col_, "a nonzero denominator", "'" + frac + "'");
            text += frac;
        }
        try {
            t.value = Rational::from_string(text);
        } catch (const std::invalid_argument&) {
            throw SyntaxError(t.line, t.col, "a number", "'" + text + "'");
        }
        t.text = text;
        // glued unit suffix: "2i", "3/4j", "1.5k"
        char c = peek();
        if ((c == 'i' || c == 'j' || c == 'k') &&
            !std::isalnum(static_cast<unsigned char>(peek(1))) && peek(1) != '_') {
            t.unit = c == 'i' ? 1 : (c == 'j' ? 2 : 3);
            t.text.push_back(c);
            advance();
        }
        if (plain && t.unit == 0) {
            unsigned v = 0;
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec == std::errc() && p == t.text.data() + t.text.size()) {
                t.plain_uint = true;
                t.uint_value = v;
            }
        }
    }

    void lex_ident(Token& t) {
        std::string id;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            id.push_back(peek());
            advance();
        }
        t.text = id;
        if (id == "tilde") {
            t.kind = Token::Kind::ConjFn;
            t.conj = ConjKind::Tilde;
        } else if (id == "hat") {
            t.kind = Token::Kind::ConjFn;
            t.conj = ConjKind::Hat;
        } else if (id == "bar") {
            t.kind = Token::Kind::ConjFn;
            t.conj = ConjKind::Bar;
        } else if (id == "i" || id == "j" || id == "k") {
            t.kind = Token::Kind::Number;
            t.value = Rational(1);
            t.unit = id == "i" ? 1 : (id == "j" ? 2 : 3);
        } else if (id[0] == 'Z') {
            if (id.size() < 2 || id.find_first_not_of("0123456789", 1) != std::string::npos)
                throw SyntaxError(t.line, t.col, "a variable like Z1", "'" + id + "'");
            long idx = std::strtol(id.c_str() + 1, nullptr, 10);
            if (idx < 1)
                throw SyntaxError(t.line, t.col, "a variable index starting at 1", "'" + id + "'");
            if (idx > kMaxVarIndex)
                throw SyntaxError(t.line, t.col,
                                  "a variable index at most " + std::to_string(kMaxVarIndex),
                                  "'" + id + "'");
            t.kind = Token::Kind::Var;
            t.var = int(idx);
        } else {
            throw SyntaxError(t.line, t.col, "tilde, hat, bar, i, j, k, or a variable",
                              "'" + id + "'");
        }
    }

    std::string_view s_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ExprPtr run() {
        ExprPtr e = parse_expr(0);
        expect(Token::Kind::End, "end of input or an operator");
        return e;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    bool at(Token::Kind k) const { return cur().kind == k; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = cur();
        std::string found =
            t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(t.line, t.col, expected, found);
    }

    void expect(Token::Kind k, const std::string& what) {
        if (!at(k)) fail(what);
        ++pos_;
    }

    static ExprPtr node(Expr::Kind k) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        return e;
    }

    void check_depth(int depth) const {
        if (depth > kMaxDepth) {
            const Token& t = cur();
            throw SyntaxError(t.line, t.col, "a shallower expression", "nesting too deep");
        }
    }

    ExprPtr parse_expr(int depth) {
        check_depth(depth);
        bool lead_neg = at(Token::Kind::Minus);
        if (lead_neg) ++pos_;
        ExprPtr first = parse_term(depth + 1);
        if (lead_neg) {
            auto n = node(Expr::Kind::Neg);
            n->kids.push_back(std::move(first));
            first = std::move(n);
        }
        if (!at(Token::Kind::Plus) && !at(Token::Kind::Minus)) return first;
        auto sum = node(Expr::Kind::Add);
        sum->kids.push_back(std::move(first));
        while (at(Token::Kind::Plus) || at(Token::Kind::Minus)) {
            bool neg = take().kind == Token::Kind::Minus;
            ExprPtr t = parse_term(depth + 1);
            if (neg) {
                auto n = node(Expr::Kind::Neg);
                n->kids.push_back(std::move(t));
                t = std::move(n);
            }
            sum->kids.push_back(std::move(t));
        }
        return sum;
    }

    ExprPtr parse_term(int depth) {
        check_depth(depth);
        ExprPtr first = parse_factor(depth + 1);
        if (!at(Token::Kind::Star)) return first;
        auto prod = node(Expr::Kind::Mul);
        prod->kids.push_back(std::move(first));
        while (at(Token::Kind::Star)) {
            ++pos_;
            prod->kids.push_back(parse_factor(depth + 1));
        }
        return prod;
    }

    ExprPtr parse_factor(int depth) {
        check_depth(depth);
        if (at(Token::Kind::Minus)) {
            ++pos_;
            auto n = node(Expr::Kind::Neg);
            n->kids.push_back(parse_factor(depth + 1));
            return n;
        }
        ExprPtr base = parse_primary(depth + 1);
        while (at(Token::Kind::Caret)) {
            ++pos_;
            if (!at(Token::Kind::Number) || !cur().plain_uint || cur().uint_value > kMaxExponent)
                fail("an integer exponent between 0 and " + std::to_string(kMaxExponent));
            auto p = node(Expr::Kind::Pow);
            p->exponent = take().uint_value;
            p->kids.push_back(std::move(base));
            base = std::move(p);
        }
        return base;
    }

    ExprPtr parse_conj_arg(int depth) {
        check_depth(depth);
        if (at(Token::Kind::Var)) {
            auto v = node(Expr::Kind::Var);
            v->var = take().var;
            return v;
        }
        if (at(Token::Kind::ConjFn)) return parse_conj(depth + 1);
        fail("a variable or conjugation inside tilde/hat/bar(...)");
    }

    ExprPtr parse_conj(int depth) {
        auto c = node(Expr::Kind::Conj);
        c->conj = take().conj;
        expect(Token::Kind::LParen, "'('");
        c->kids.push_back(parse_conj_arg(depth + 1));
        expect(Token::Kind::RParen, "')'");
        return c;
    }

    ExprPtr parse_primary(int depth) {
        check_depth(depth);
        switch (cur().kind) {
            case Token::Kind::Number: {
                const Token& t = take();
                auto lit = node(Expr::Kind::Literal);
                Rational v = t.value;
                switch (t.unit) {
                    case 0: lit->literal = BCQ(v, Rational(0), Rational(0), Rational(0)); break;
                    case 1: lit->literal = BCQ(Rational(0), v, Rational(0), Rational(0)); break;
                    case 2: lit->literal = BCQ(Rational(0), Rational(0), v, Rational(0)); break;
                    default: lit->literal = BCQ(Rational(0), Rational(0), Rational(0), v); break;
                }
                return lit;
            }
            case Token::Kind::Var: {
                auto v = node(Expr::Kind::Var);
                v->var = take().var;
                return v;
            }
            case Token::Kind::ConjFn: return parse_conj(depth + 1);
            case Token::Kind::LParen: {
                ++pos_;
                ExprPtr e = parse_expr(depth + 1);
                expect(Token::Kind::RParen, "')'");
                return e;
            }
            default: fail("a literal, variable, conjugation, or '('");
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

int max_var(const Expr& e) {
    int m = e.kind == Expr::Kind::Var ? e.var : 0;
    for (const auto& k : e.kids) m = std::max(m, max_var(*k));
    return m;
}

MPolyQ lower(const Expr& e, int n) {
    switch (e.kind) {
        case Expr::Kind::Literal: return MPolyQ::constant(n, e.literal);
        case Expr::Kind::Var: return MPolyQ::variable(n, e.var - 1, Wirt::Z);
        case Expr::Kind::Conj: {
            // Collapse the conjugation tower over the variable into one slot.
            std::optional<ConjKind> acc;
            const Expr* cur = &e;
            while (cur->kind == Expr::Kind::Conj) {
                ConjKind k = cur->conj;
                if (!acc)
                    acc = k;
                else if (*acc == k)
                    acc.reset();
                else
                    acc = compose(*acc, k);
                cur = cur->kids[0].get();
            }
            Wirt slot = acc ? to_wirt(*acc) : Wirt::Z;
            return MPolyQ::variable(n, cur->var - 1, slot);
        }
        case Expr::Kind::Pow: return lower(*e.kids[0], n).pow(e.exponent);
        case Expr::Kind::Mul: {
            MPolyQ p = lower(*e.kids[0], n);
            for (size_t i = 1; i < e.kids.size(); ++i) p = p * lower(*e.kids[i], n);
            return p;
        }
        case Expr::Kind::Add: {
            MPolyQ p = lower(*e.kids[0], n);
            for (size_t i = 1; i < e.kids.size(); ++i) p = p + lower(*e.kids[i], n);
            return p;
        }
        case Expr::Kind::Neg: return -lower(*e.kids[0], n);
    }
    throw std::logic_error("bad Expr kind");
}

}  // namespace

ExprPtr parse_expression(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

ParseResult parse_polynomial(std::string_view text) {
    ExprPtr ast = parse_expression(text);
    int n = max_var(*ast);
    return {lower(*ast, n), n};
}

BCQ parse_bicomplex(std::string_view text) {
    ParseResult r = parse_polynomial(text);
    if (r.arity != 0)
        throw std::invalid_argument("expected a constant bicomplex literal, got variables");
    if (r.poly.is_zero()) return BCQ{};
    return r.poly.monomials()[0].coeff;
}

// ---- canonical rendering ----

namespace {

std::string rational_str(const Rational& r) { return r.str(); }

bool is_one(const Rational& r) { return r == Rational(1); }
bool is_one(double v) { return v == 1.0; }
bool negative(const Rational& r) { return r.sign() < 0; }
bool negative(double v) { return v < 0.0; }

std::string scalar_str(const Rational& r) { return rational_str(r); }
std::string scalar_str(double v) { return double_to_string(v); }

template <class S>
std::string factors_string(const std::vector<ExponentQuad>& exps) {
    static const char* wrap[4] = {"", "tilde(", "hat(", "bar("};
    std::string out;
    for (size_t i = 0; i < exps.size(); ++i) {
        std::uint32_t e[4] = {exps[i].a, exps[i].b, exps[i].c, exps[i].d};
        for (int s = 0; s < 4; ++s) {
            if (e[s] == 0) continue;
            if (!out.empty()) out += '*';
            out += wrap[s];
            out += 'Z';
            out += std::to_string(i + 1);
            if (s != 0) out += ')';
            if (e[s] != 1) out += '^' + std::to_string(e[s]);
        }
    }
    return out;
}

// One literal component like "2", "i", "3/4j"; `unit` indexes 1, i, j, k.
template <class S>
std::string component_str(const S& v, int unit) {
    static const char* suffix[4] = {"", "i", "j", "k"};
    if (unit != 0 && is_one(v)) return suffix[unit];
    return scalar_str(v) + suffix[unit];
}

// sign-extracted monomial body; multi-component coefficients keep their
// sign inside the parenthesized literal.
template <class S>
std::pair<int, std::string> monomial_body(const MixedMonomial<S>& m) {
    std::string factors = factors_string<S>(m.exps);
    S comp[4] = {m.coeff.x(), m.coeff.y(), m.coeff.v(), m.coeff.t()};
    int nonzero = 0, first = -1;
    for (int i = 0; i < 4; ++i)
        if (!scalar_is_zero(comp[i])) {
            ++nonzero;
            if (first < 0) first = i;
        }
    if (nonzero == 1) {
        int sign = negative(comp[first]) ? -1 : 1;
        S mag = sign < 0 ? S(-comp[first]) : comp[first];
        std::string num = component_str(mag, first);
        if (factors.empty()) return {sign, num};
        if (first == 0 && is_one(mag)) return {sign, factors};
        return {sign, num + "*" + factors};
    }
    std::string lit = "(";
    bool started = false;
    for (int i = 0; i < 4; ++i) {
        if (scalar_is_zero(comp[i])) continue;
        bool neg = negative(comp[i]);
        S mag = neg ? S(-comp[i]) : comp[i];
        if (started)
            lit += neg ? '-' : '+';
        else if (neg)
            lit += '-';
        lit += component_str(mag, i);
        started = true;
    }
    lit += ')';
    if (factors.empty()) return {1, lit};
    return {1, lit + "*" + factors};
}

template <class S>
std::string format_impl(const MixedPolynomial<S>& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& m : f.monomials()) {
        auto [sign, body] = monomial_body(m);
        if (first) {
            if (sign < 0) out += '-';
        } else {
            out += sign < 0 ? " - " : " + ";
        }
        out += body;
        first = false;
    }
    return out;
}

template <class S>
std::string literal_impl(const Bicomplex<S>& z) {
    S comp[4] = {z.x(), z.y(), z.v(), z.t()};
    std::string out;
    for (int i = 0; i < 4; ++i) {
        if (scalar_is_zero(comp[i])) continue;
        bool neg = negative(comp[i]);
        S mag = neg ? S(-comp[i]) : comp[i];
        if (!out.empty())
            out += neg ? '-' : '+';
        else if (neg)
            out += '-';
        out += component_str(mag, i);
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string double_to_string(double v) {
    if (v == 0.0) return "0";  // also normalizes -0
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string format(const MPolyQ& f) { return format_impl(f); }
std::string format(const MPolyD& f) { return format_impl(f); }
std::string to_literal(const BCQ& z) { return literal_impl(z); }
std::string to_literal(const BC& z) { return literal_impl(z); }

}  // namespace bcmk
