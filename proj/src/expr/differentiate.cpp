#include <cmath>

#include "isokit/expr.hpp"

namespace isokit {

namespace {

bool is_integer(double p) { return std::isfinite(p) && std::floor(p) == p; }

/// Builds `e` from already-simplified children, returning its constant value
/// when the node folds to a finite number.
Expr fold_or(const Expr& e)
{
    try {
        const double v = evaluate(e, Env{});
        return Expr::constant(v == 0.0 ? 0.0 : v);
    } catch (const DomainError&) {
        return e;
    }
}

// Local rewrites. Each assumes its operands are already simplified.

Expr mk_neg(const Expr& a)
{
    if (a.is_constant()) {
        return Expr::constant(a.value() == 0.0 ? 0.0 : -a.value());
    }
    if (a.op() == Op::Negate) {
        return a.arg();
    }
    return Expr::negate(a);
}

Expr mk_sum(const Expr& a, const Expr& b)
{
    if (a.is_constant() && b.is_constant()) {
        return fold_or(a + b);
    }
    if (a.is_constant(0.0)) return b;
    if (b.is_constant(0.0)) return a;
    return a + b;
}

Expr mk_diff(const Expr& a, const Expr& b)
{
    if (a.is_constant() && b.is_constant()) {
        return fold_or(a - b);
    }
    if (b.is_constant(0.0)) return a;
    if (a.is_constant(0.0)) return mk_neg(b);
    return a - b;
}

Expr mk_mul(const Expr& a, const Expr& b)
{
    if (a.is_constant() && b.is_constant()) {
        return fold_or(a * b);
    }
    if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
    if (a.is_constant(1.0)) return b;
    if (b.is_constant(1.0)) return a;
    if (a.is_constant(-1.0)) return mk_neg(b);
    if (b.is_constant(-1.0)) return mk_neg(a);
    return a * b;
}

Expr mk_div(const Expr& a, const Expr& b)
{
    if (a.is_constant() && b.is_constant()) {
        return fold_or(a / b);
    }
    if (a.is_constant(0.0)) return Expr::constant(0.0);
    if (b.is_constant(1.0)) return a;
    return a / b;
}

Expr mk_pow(const Expr& base, double p)
{
    if (p == 1.0) return base;
    if (p == 0.0) return Expr::constant(1.0);
    if (base.is_constant()) {
        return fold_or(Expr::power(base, p));
    }
    return Expr::power(base, p);
}

Expr mk_fn(Op fn, const Expr& a)
{
    if (a.is_constant()) {
        return fold_or(Expr::function(fn, a));
    }
    return Expr::function(fn, a);
}

Expr simplify_node(const Expr& e)
{
    switch (e.op()) {
    case Op::Constant:
    case Op::Variable:
        return e;
    case Op::Negate:
        return mk_neg(simplify_node(e.arg()));
    case Op::Sum:
        return mk_sum(simplify_node(e.lhs()), simplify_node(e.rhs()));
    case Op::Difference:
        return mk_diff(simplify_node(e.lhs()), simplify_node(e.rhs()));
    case Op::Product:
        return mk_mul(simplify_node(e.lhs()), simplify_node(e.rhs()));
    case Op::Quotient:
        return mk_div(simplify_node(e.lhs()), simplify_node(e.rhs()));
    case Op::Power:
        return mk_pow(simplify_node(e.arg()), e.exponent());
    default:
        return mk_fn(e.op(), simplify_node(e.arg()));
    }
}

Expr derive(const Expr& e, std::string_view var)
{
    if (!depends_on(e, var)) {
        return Expr::constant(0.0);
    }
    switch (e.op()) {
    case Op::Constant:
        return Expr::constant(0.0);
    case Op::Variable:
        return Expr::constant(e.name() == var ? 1.0 : 0.0);
    case Op::Negate:
        return mk_neg(derive(e.arg(), var));
    case Op::Sum:
        return mk_sum(derive(e.lhs(), var), derive(e.rhs(), var));
    case Op::Difference:
        return mk_diff(derive(e.lhs(), var), derive(e.rhs(), var));
    case Op::Product: {
        const Expr& a = e.lhs();
        const Expr& b = e.rhs();
        return mk_sum(mk_mul(derive(a, var), b), mk_mul(a, derive(b, var)));
    }
    case Op::Quotient: {
        const Expr& a = e.lhs();
        const Expr& b = e.rhs();
        const Expr da = derive(a, var);
        const Expr db = derive(b, var);
        if (db.is_constant(0.0)) {
            return mk_div(da, b);
        }
        return mk_div(mk_diff(mk_mul(da, b), mk_mul(a, db)), mk_pow(b, 2.0));
    }
    case Op::Power: {
        const Expr& b = e.arg();
        const double p = e.exponent();
        const Expr db = derive(b, var);
        if (is_integer(p)) {
            return mk_mul(mk_mul(Expr::constant(p), mk_pow(b, p - 1.0)), db);
        }
        // b^p = exp(p ln b), so d(b^p) = exp(p ln b) * p * b'/b.
        const Expr value = mk_fn(Op::Exp, mk_mul(Expr::constant(p), mk_fn(Op::Ln, b)));
        return mk_mul(value, mk_mul(Expr::constant(p), mk_div(db, b)));
    }
    case Op::Sin:
        return mk_mul(mk_fn(Op::Cos, e.arg()), derive(e.arg(), var));
    case Op::Cos:
        return mk_mul(mk_neg(mk_fn(Op::Sin, e.arg())), derive(e.arg(), var));
    case Op::Exp:
        return mk_mul(e, derive(e.arg(), var));
    case Op::Ln:
        return mk_div(derive(e.arg(), var), e.arg());
    case Op::Sqrt:
        return mk_div(derive(e.arg(), var), mk_mul(Expr::constant(2.0), e));
    }
    return Expr::constant(0.0);
}

} // namespace

Expr simplify(const Expr& e)
{
    return simplify_node(e);
}

Expr differentiate(const Expr& e, std::string_view var)
{
    return derive(e, var);
}

Expr differentiate(const Expr& e, std::string_view var, int times)
{
    Expr out = e;
    for (int k = 0; k < times; ++k) {
        out = derive(out, var);
    }
    return out;
}

} // namespace isokit
