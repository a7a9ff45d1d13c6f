#include <charconv>
#include <cmath>
#include <string>

#include "isokit/expr.hpp"

namespace isokit {

namespace {

// Binding strength; higher binds tighter.
constexpr int kAdditive = 1;
constexpr int kMultiplicative = 2;
constexpr int kUnary = 3;
constexpr int kPower = 4;
constexpr int kAtom = 5;

int precedence(const Expr& e)
{
    switch (e.op()) {
    case Op::Sum:
    case Op::Difference: return kAdditive;
    case Op::Product:
    case Op::Quotient: return kMultiplicative;
    case Op::Negate: return kUnary;
    case Op::Power: return kPower;
    case Op::Constant: return std::signbit(e.value()) ? kUnary : kAtom;
    default: return kAtom;
    }
}

void append_number(std::string& out, double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, ptr);
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out)
{
    if (wrap) {
        out += '(';
        print(e, out);
        out += ')';
    } else {
        print(e, out);
    }
}

void print(const Expr& e, std::string& out)
{
    switch (e.op()) {
    case Op::Constant:
        if (std::signbit(e.value())) {
            out += '-';
            append_number(out, -e.value());
        } else {
            append_number(out, e.value());
        }
        return;
    case Op::Variable:
        out += e.name();
        return;
    case Op::Negate:
        out += '-';
        print_wrapped(e.arg(), precedence(e.arg()) < kUnary, out);
        return;
    case Op::Power:
        print_wrapped(e.arg(), precedence(e.arg()) <= kPower, out);
        out += '^';
        if (std::signbit(e.exponent())) {
            out += '-';
            append_number(out, -e.exponent());
        } else {
            append_number(out, e.exponent());
        }
        return;
    case Op::Sum:
    case Op::Difference:
    case Op::Product:
    case Op::Quotient: {
        const int p = precedence(e);
        print_wrapped(e.lhs(), precedence(e.lhs()) < p, out);
        out += ' ';
        out += op_name(e.op());
        out += ' ';
        print_wrapped(e.rhs(), precedence(e.rhs()) <= p, out);
        return;
    }
    default:
        out += op_name(e.op());
        out += '(';
        print(e.arg(), out);
        out += ')';
        return;
    }
}

} // namespace

std::string to_string(const Expr& e)
{
    if (e.empty()) {
        return "<empty>";
    }
    std::string out;
    print(e, out);
    return out;
}

} // namespace isokit
