#include <cstdio>
#include <cmath>
#include <string>

#include "isokit/expr.hpp"

namespace isokit {

namespace {

std::string excerpt(const Expr& e)
{
    std::string s = to_string(e);
    if (s.size() > 60) {
        s.resize(57);
        s += "...";
    }
    return s;
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

bool is_integer(double p) { return std::isfinite(p) && std::floor(p) == p; }

double eval(const Expr& e, const Env& env)
{
    const Expr::Node& n = *e.get();
    switch (n.op) {
    case Op::Constant:
        return n.number;
    case Op::Variable:
        if (const double* v = env.find(n.name)) {
            return *v;
        }
        throw DomainError("unbound variable '" + n.name + "'");
    case Op::Negate:
        return -eval(n.lhs, env);
    case Op::Sum:
        return eval(n.lhs, env) + eval(n.rhs, env);
    case Op::Difference:
        return eval(n.lhs, env) - eval(n.rhs, env);
    case Op::Product:
        return eval(n.lhs, env) * eval(n.rhs, env);
    case Op::Quotient: {
        const double num_v = eval(n.lhs, env);
        const double den = eval(n.rhs, env);
        if (den == 0.0) {
            throw DomainError("division by zero in " + excerpt(e));
        }
        return num_v / den;
    }
    case Op::Power: {
        const double b = eval(n.lhs, env);
        const double p = n.number;
        if (!is_integer(p)) {
            if (!(b > 0.0)) {
                throw DomainError("non-integer power of non-positive base " + num(b) + " in " +
                                  excerpt(e));
            }
        } else if (p < 0.0 && b == 0.0) {
            throw DomainError("negative power of zero in " + excerpt(e));
        }
        return std::pow(b, p);
    }
    case Op::Sin:
        return std::sin(eval(n.lhs, env));
    case Op::Cos:
        return std::cos(eval(n.lhs, env));
    case Op::Exp:
        return std::exp(eval(n.lhs, env));
    case Op::Ln: {
        const double a = eval(n.lhs, env);
        if (!(a > 0.0)) {
            throw DomainError("ln of non-positive argument " + num(a) + " in " + excerpt(e));
        }
        return std::log(a);
    }
    case Op::Sqrt: {
        const double a = eval(n.lhs, env);
        if (!(a >= 0.0)) {
            throw DomainError("sqrt of negative argument " + num(a) + " in " + excerpt(e));
        }
        return std::sqrt(a);
    }
    }
    throw DomainError("unknown node");
}

} // namespace

double evaluate(const Expr& e, const Env& env)
{
    if (e.empty()) {
        throw std::logic_error("evaluate: empty expression");
    }
    const double v = eval(e, env);
    if (!std::isfinite(v)) {
        throw DomainError("non-finite value of " + excerpt(e));
    }
    return v;
}

} // namespace isokit
