#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bcmk/mixed_poly.hpp"

namespace bcmk {

// Structured parse failure: position plus the token set that was expected.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(int line, int col, std::string expected, const std::string& found)
        : std::runtime_error("syntax error at line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ": expected " + expected + ", found " + found),
          line_(line),
          col_(col),
          expected_(std::move(expected)) {}

    int line() const { return line_; }
    int col() const { return col_; }
    const std::string& expected() const { return expected_; }

private:
    int line_;
    int col_;
    std::string expected_;
};

// Surface syntax tree. Conjugations apply only to variables or other
// conjugation nodes, so lowering to exponent quadruples always succeeds.
struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind { Literal, Var, Conj, Pow, Mul, Add, Neg };
    Kind kind;
    BCQ literal{};           // Literal
    int var = 0;             // Var, 1-based index
    ConjKind conj{};         // Conj
    unsigned exponent = 0;   // Pow
    std::vector<ExprPtr> kids;
};

// Grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := ['-'] primary ('^' uint)*
//   primary:= literal | var | conjfn '(' var-or-conj ')' | '(' expr ')'
//   conjfn := 'tilde' | 'hat' | 'bar';  var := 'Z' uint
// Literals are unsigned numerals ("2", "1.5", "3/4") with an optional
// glued unit suffix i, j, k, or a bare unit. Multiplication is always
// explicit. Leading '-' is accepted so canonical forms
// with negative coefficients round-trip.
ExprPtr parse_expression(std::string_view text);

struct ParseResult {
    MPolyQ poly;
    int arity = 0;  // highest variable index used
};

ParseResult parse_polynomial(std::string_view text);

// Constant expressions only: the bicomplex literal form "a+bi+cj+dk"
// (any subset of terms, signs allowed).
BCQ parse_bicomplex(std::string_view text);

// Canonical text rendering; parse(format(F)) == F on canonical forms.
std::string format(const MPolyQ& f);
std::string format(const MPolyD& f);

// Bicomplex literal text form.
std::string to_literal(const BCQ& z);
std::string to_literal(const BC& z);

// Shortest round-trip decimal form of a double.
std::string double_to_string(double v);

}  // namespace bcmk
