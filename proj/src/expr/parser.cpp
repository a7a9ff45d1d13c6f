// Recursive-descent parser for the expression grammar in docs/expression-grammar.md.

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "isokit/expr.hpp"

namespace isokit {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t pos = 0;
    std::string_view text;
    double number = 0.0;
};

const char* describe(Tok t)
{
    switch (t) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
    }
    return "token";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        Token t;
        t.pos = pos_;
        if (pos_ >= text_.size()) {
            t.kind = Tok::End;
            return t;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
                ++end;
            }
            t.kind = Tok::Ident;
            t.text = text_.substr(pos_, end - pos_);
            pos_ = end;
            return t;
        }
        ++pos_;
        switch (c) {
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '/': t.kind = Tok::Slash; break;
        case '^': t.kind = Tok::Caret; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        default:
            throw ParseError(t.pos, std::string("unexpected character '") + c + "'");
        }
        return t;
    }

private:
    Token number()
    {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) {
            throw ParseError(start, "malformed number");
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                ++pos_;
            }
            if (digits() == 0) {
                pos_ = save; // not an exponent; leave 'e' for the next token
            }
        }
        Token t;
        t.kind = Tok::Number;
        t.pos = start;
        t.text = text_.substr(start, pos_ - start);
        const auto* first = t.text.data();
        const auto* last = first + t.text.size();
        auto [ptr, ec] = std::from_chars(first, last, t.number);
        if (ec != std::errc() || ptr != last || !std::isfinite(t.number)) {
            throw ParseError(start, "malformed number '" + std::string(t.text) + "'");
        }
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

bool function_op(std::string_view name, Op& out)
{
    if (name == "sin") out = Op::Sin;
    else if (name == "cos") out = Op::Cos;
    else if (name == "exp") out = Op::Exp;
    else if (name == "ln") out = Op::Ln;
    else if (name == "sqrt") out = Op::Sqrt;
    else return false;
    return true;
}

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text), text_size_(text.size())
    {
        advance();
    }

    Expr parse_all()
    {
        if (cur_.kind == Tok::End) {
            throw ParseError(0, "empty expression");
        }
        Expr e = parse_expr();
        if (cur_.kind == Tok::RParen) {
            throw ParseError(cur_.pos, "unbalanced ')'");
        }
        if (cur_.kind != Tok::End) {
            throw ParseError(cur_.pos, std::string("unexpected ") + describe(cur_.kind));
        }
        return e;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    Expr parse_expr()
    {
        Expr lhs = parse_term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const Op op = cur_.kind == Tok::Plus ? Op::Sum : Op::Difference;
            advance();
            lhs = Expr::binary(op, lhs, parse_term());
        }
        return lhs;
    }

    Expr parse_term()
    {
        Expr lhs = parse_unary();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            const Op op = cur_.kind == Tok::Star ? Op::Product : Op::Quotient;
            advance();
            lhs = Expr::binary(op, lhs, parse_unary());
        }
        return lhs;
    }

    Expr parse_unary()
    {
        if (cur_.kind == Tok::Minus) {
            advance();
            return Expr::negate(parse_unary());
        }
        return parse_power();
    }

    Expr parse_power()
    {
        Expr base = parse_primary();
        if (cur_.kind != Tok::Caret) {
            return base;
        }
        advance();
        const std::size_t where = cur_.pos;
        // Right-associative: the exponent is itself a unary/power expression.
        Expr exponent = parse_unary();
        if (!free_variables(exponent).empty()) {
            throw ParseError(where, "exponent must be a constant");
        }
        double p = 0.0;
        try {
            p = evaluate(exponent, Env{});
        } catch (const DomainError& err) {
            throw ParseError(where, "exponent is undefined: " + err.detail());
        }
        return Expr::power(base, p);
    }

    Expr parse_primary()
    {
        switch (cur_.kind) {
        case Tok::Number: {
            const double v = cur_.number;
            advance();
            return Expr::constant(v);
        }
        case Tok::Ident: {
            const Token id = cur_;
            advance();
            Op fn{};
            const bool known = function_op(id.text, fn);
            if (cur_.kind == Tok::LParen) {
                if (!known) {
                    throw ParseError(id.pos, "unknown function '" + std::string(id.text) + "'");
                }
                const std::size_t open = cur_.pos;
                advance();
                Expr arg = parse_expr();
                expect_close(open);
                return Expr::function(fn, arg);
            }
            if (known) {
                throw ParseError(id.pos, "function '" + std::string(id.text) + "' needs an argument");
            }
            return Expr::variable(std::string(id.text));
        }
        case Tok::LParen: {
            const std::size_t open = cur_.pos;
            advance();
            Expr inner = parse_expr();
            expect_close(open);
            return inner;
        }
        case Tok::End:
            throw ParseError(text_size_, "expected an operand");
        case Tok::RParen:
            throw ParseError(cur_.pos, "expected an operand before ')'");
        default:
            throw ParseError(cur_.pos, std::string("expected an operand, got ") + describe(cur_.kind));
        }
    }

    void expect_close(std::size_t open)
    {
        if (cur_.kind != Tok::RParen) {
            if (cur_.kind == Tok::End) {
                throw ParseError(open, "unbalanced '('");
            }
            throw ParseError(cur_.pos, std::string("expected ')', got ") + describe(cur_.kind));
        }
        advance();
    }

    Lexer lexer_;
    std::size_t text_size_;
    Token cur_;
};

} // namespace

Expr parse(std::string_view text)
{
    return Parser(text).parse_all();
}

} // namespace isokit
