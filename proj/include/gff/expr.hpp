#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gff/chart.hpp"

namespace gff {

// ---------------------------------------------------------------------------
// Arithmetic expression grammar for chart component functions:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-')* base
//   base   := primary ('^' integer)?
//   primary:= number | name | '(' expr ')' | sin(e) | cos(e) | exp(e)
//           | pow(e, integer)
// Names are the chart's coordinate names; pow exponents must be integer
// literals so every expression stays smooth on the whole box.
// ---------------------------------------------------------------------------

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Number, Coordinate, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp, Pow };
    Kind kind = Kind::Number;
    double number = 0.0;
    int coordinate = 0;  // index into the coordinate list
    int exponent = 0;    // for Pow
    ExprPtr a, b;
};

template <class S>
S eval_expr(const ExprNode& n, const S* x) {
    using Kind = ExprNode::Kind;
    switch (n.kind) {
        case Kind::Number: return S(n.number);
        case Kind::Coordinate: return x[n.coordinate];
        case Kind::Add: return eval_expr(*n.a, x) + eval_expr(*n.b, x);
        case Kind::Sub: return eval_expr(*n.a, x) - eval_expr(*n.b, x);
        case Kind::Mul: return eval_expr(*n.a, x) * eval_expr(*n.b, x);
        case Kind::Div: return eval_expr(*n.a, x) / eval_expr(*n.b, x);
        case Kind::Neg: return -eval_expr(*n.a, x);
        case Kind::Sin: return sin(eval_expr(*n.a, x));
        case Kind::Cos: return cos(eval_expr(*n.a, x));
        case Kind::Exp: return exp(eval_expr(*n.a, x));
        case Kind::Pow: return ipow(eval_expr(*n.a, x), n.exponent);
    }
    return S(0.0);
}

// Throws ParseError with position information on malformed input.
ExprPtr parse_expression(const std::string& text,
                         const std::vector<std::string>& coordinates);

ScalarField compile_expression(const std::string& text,
                               const std::vector<std::string>& coordinates);

// ---------------------------------------------------------------------------
// Declarative chart files (JSON): coordinate names, component expressions,
// eps signs and the domain box. Exact schema documented in the README.
// ---------------------------------------------------------------------------

ChartStructure load_chart_file(const std::string& path);
ChartStructure load_chart_json_text(const std::string& text);

}  // namespace gff
