#include "gff/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gff {

// ---------------------------------------------------------------------------
// Recursive-descent parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
  public:
    Parser(const std::string& text, const std::vector<std::string>& coords)
        : text_(text), coords_(coords) {}

    ExprPtr parse() {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    const std::string& text_;
    const std::vector<std::string>& coords_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("expression parse error at offset " + std::to_string(pos_) + ": " +
                         what + " in \"" + text_ + "\"");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static ExprPtr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }
    static ExprPtr binary(ExprNode::Kind k, ExprPtr a, ExprPtr b) {
        ExprNode n;
        n.kind = k;
        n.a = std::move(a);
        n.b = std::move(b);
        return node(std::move(n));
    }

    ExprPtr expr() {
        auto lhs = term();
        while (true) {
            if (eat('+')) lhs = binary(ExprNode::Kind::Add, lhs, term());
            else if (eat('-')) lhs = binary(ExprNode::Kind::Sub, lhs, term());
            else return lhs;
        }
    }

    ExprPtr term() {
        auto lhs = factor();
        while (true) {
            if (eat('*')) lhs = binary(ExprNode::Kind::Mul, lhs, factor());
            else if (eat('/')) lhs = binary(ExprNode::Kind::Div, lhs, factor());
            else return lhs;
        }
    }

    ExprPtr factor() {
        bool neg = false;
        while (true) {
            if (eat('-')) neg = !neg;
            else if (eat('+')) continue;
            else break;
        }
        auto b = base();
        if (!neg) return b;
        ExprNode n;
        n.kind = ExprNode::Kind::Neg;
        n.a = std::move(b);
        return node(std::move(n));
    }

    ExprPtr base() {
        auto p = primary();
        if (eat('^')) {
            ExprNode n;
            n.kind = ExprNode::Kind::Pow;
            n.a = std::move(p);
            n.exponent = integer_literal();
            return node(std::move(n));
        }
        return p;
    }

    int integer_literal() {
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected integer exponent");
        int v = std::atoi(text_.substr(start, pos_ - start).c_str());
        return neg ? -v : v;
    }

    ExprPtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];

        if (c == '(') {
            ++pos_;
            auto e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            pos_ += static_cast<std::size_t>(end - begin);
            ExprNode n;
            n.kind = ExprNode::Kind::Number;
            n.number = v;
            return node(std::move(n));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);

            if (peek() == '(') {
                ++pos_;  // consume '('
                if (name == "pow") {
                    auto a = expr();
                    if (!eat(',')) fail("pow expects (expr, integer)");
                    int k = integer_literal();
                    if (!eat(')')) fail("expected ')'");
                    ExprNode n;
                    n.kind = ExprNode::Kind::Pow;
                    n.a = std::move(a);
                    n.exponent = k;
                    return node(std::move(n));
                }
                ExprNode::Kind k;
                if (name == "sin") k = ExprNode::Kind::Sin;
                else if (name == "cos") k = ExprNode::Kind::Cos;
                else if (name == "exp") k = ExprNode::Kind::Exp;
                else fail("unknown function '" + name + "'");
                auto a = expr();
                if (!eat(')')) fail("expected ')'");
                ExprNode n;
                n.kind = k;
                n.a = std::move(a);
                return node(std::move(n));
            }

            for (std::size_t i = 0; i < coords_.size(); ++i)
                if (coords_[i] == name) {
                    ExprNode n;
                    n.kind = ExprNode::Kind::Coordinate;
                    n.coordinate = static_cast<int>(i);
                    return node(std::move(n));
                }
            fail("unknown coordinate '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

ExprPtr parse_expression(const std::string& text, const std::vector<std::string>& coordinates) {
    return Parser(text, coordinates).parse();
}

ScalarField compile_expression(const std::string& text,
                               const std::vector<std::string>& coordinates) {
    ExprPtr root = parse_expression(text, coordinates);
    return ScalarField::make([root](const auto* x) { return eval_expr(*root, x); });
}

// ---------------------------------------------------------------------------
// Chart files
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

std::vector<ScalarField> compile_matrix(const json& rows, int nrow, int ncol,
                                        const std::vector<std::string>& coords,
                                        const std::string& what) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != nrow)
        throw ParseError("chart file: '" + what + "' must be an array of " +
                         std::to_string(nrow) + " rows");
    std::vector<ScalarField> out(static_cast<std::size_t>(nrow) * ncol);
    for (int i = 0; i < nrow; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != ncol)
            throw ParseError("chart file: '" + what + "' row " + std::to_string(i) +
                             " must have " + std::to_string(ncol) + " entries");
        for (int j = 0; j < ncol; ++j)
            out[static_cast<std::size_t>(i) * ncol + j] =
                compile_expression(row[static_cast<std::size_t>(j)].get<std::string>(), coords);
    }
    return out;
}

}  // namespace

ChartStructure load_chart_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("chart file: invalid JSON: ") + e.what());
    }
    for (const char* key : {"n", "s", "eps", "coordinates", "domain", "g", "phi", "xi", "eta"})
        if (!doc.contains(key)) throw ParseError(std::string("chart file: missing '") + key + "'");

    int n = doc["n"].get<int>();
    int s = doc["s"].get<int>();
    auto eps = doc["eps"].get<std::vector<int>>();
    auto coords = doc["coordinates"].get<std::vector<std::string>>();
    const int d = 2 * n + s;
    if (static_cast<int>(coords.size()) != d)
        throw ParseError("chart file: need exactly 2n+s coordinate names");
    for (int e : eps)
        if (e != 1 && e != -1) throw ParseError("chart file: eps entries must be ±1");

    ChartBox box;
    box.lo = doc["domain"]["lo"].get<std::vector<double>>();
    box.hi = doc["domain"]["hi"].get<std::vector<double>>();
    if (static_cast<int>(box.lo.size()) != d || static_cast<int>(box.hi.size()) != d)
        throw ParseError("chart file: domain lo/hi must each have 2n+s entries");

    auto g = compile_matrix(doc["g"], d, d, coords, "g");
    auto phi = compile_matrix(doc["phi"], d, d, coords, "phi");
    auto xi = compile_matrix(doc["xi"], s, d, coords, "xi");
    auto eta = compile_matrix(doc["eta"], s, d, coords, "eta");
    return ChartStructure(n, s, std::move(eps), MetricChart(d, std::move(g), std::move(box)),
                          std::move(phi), std::move(xi), std::move(eta));
}

ChartStructure load_chart_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open chart file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_chart_json_text(ss.str());
}

}  // namespace gff
