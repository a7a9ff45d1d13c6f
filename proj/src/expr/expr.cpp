#include "isokit/expr.hpp"

#include <bit>
#include <cstdint>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace isokit {

std::string_view op_name(Op op) noexcept
{
    switch (op) {
    case Op::Constant: return "constant";
    case Op::Variable: return "variable";
    case Op::Negate: return "negate";
    case Op::Sum: return "+";
    case Op::Difference: return "-";
    case Op::Product: return "*";
    case Op::Quotient: return "/";
    case Op::Power: return "^";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Exp: return "exp";
    case Op::Ln: return "ln";
    case Op::Sqrt: return "sqrt";
    }
    return "?";
}

bool is_function(Op op) noexcept
{
    return op == Op::Sin || op == Op::Cos || op == Op::Exp || op == Op::Ln || op == Op::Sqrt;
}

bool is_binary(Op op) noexcept
{
    return op == Op::Sum || op == Op::Difference || op == Op::Product || op == Op::Quotient;
}

Expr Expr::constant(double value)
{
    auto n = std::make_shared<Node>();
    n->op = Op::Constant;
    n->number = value;
    return Expr(std::move(n));
}

Expr Expr::variable(std::string name)
{
    if (!is_identifier(name)) {
        throw std::invalid_argument("invalid variable name '" + name + "'");
    }
    auto n = std::make_shared<Node>();
    n->op = Op::Variable;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::negate(Expr arg)
{
    auto n = std::make_shared<Node>();
    n->op = Op::Negate;
    n->lhs = std::move(arg);
    return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs)
{
    if (!is_binary(op)) {
        throw std::invalid_argument("Expr::binary: not a binary operator");
    }
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, double exponent)
{
    auto n = std::make_shared<Node>();
    n->op = Op::Power;
    n->number = exponent;
    n->lhs = std::move(base);
    return Expr(std::move(n));
}

Expr Expr::function(Op fn, Expr arg)
{
    if (!is_function(fn)) {
        throw std::invalid_argument("Expr::function: not a function");
    }
    auto n = std::make_shared<Node>();
    n->op = fn;
    n->lhs = std::move(arg);
    return Expr(std::move(n));
}

namespace {

const Expr::Node& checked(const Expr::Node* n)
{
    if (n == nullptr) {
        throw std::logic_error("access to an empty Expr");
    }
    return *n;
}

} // namespace

Op Expr::op() const { return checked(node_.get()).op; }

double Expr::value() const
{
    const auto& n = checked(node_.get());
    if (n.op != Op::Constant) {
        throw std::logic_error("Expr::value on a non-constant node");
    }
    return n.number;
}

double Expr::exponent() const
{
    const auto& n = checked(node_.get());
    if (n.op != Op::Power) {
        throw std::logic_error("Expr::exponent on a non-power node");
    }
    return n.number;
}

const std::string& Expr::name() const { return checked(node_.get()).name; }
const Expr& Expr::arg() const { return checked(node_.get()).lhs; }
const Expr& Expr::rhs() const { return checked(node_.get()).rhs; }

bool Expr::is_constant() const noexcept { return node_ && node_->op == Op::Constant; }

bool Expr::is_constant(double v) const noexcept
{
    return is_constant() && node_->number == v;
}

std::size_t Expr::node_count() const
{
    if (!node_) {
        return 0;
    }
    return 1 + node_->lhs.node_count() + node_->rhs.node_count();
}

bool structurally_equal(const Expr& a, const Expr& b)
{
    if (a.empty() || b.empty()) {
        return a.empty() == b.empty();
    }
    if (a.get() == b.get()) {
        return true;
    }
    const auto& x = *a.get();
    const auto& y = *b.get();
    if (x.op != y.op) {
        return false;
    }
    switch (x.op) {
    case Op::Constant:
        return std::bit_cast<std::uint64_t>(x.number) == std::bit_cast<std::uint64_t>(y.number);
    case Op::Variable:
        return x.name == y.name;
    case Op::Power:
        return std::bit_cast<std::uint64_t>(x.number) == std::bit_cast<std::uint64_t>(y.number) &&
               structurally_equal(x.lhs, y.lhs);
    default:
        return structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
    }
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Op::Sum, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Op::Difference, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Op::Product, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(Op::Quotient, a, b); }
Expr operator-(const Expr& a) { return Expr::negate(a); }
Expr operator*(double a, const Expr& b) { return Expr::constant(a) * b; }
Expr operator+(const Expr& a, double b) { return a + Expr::constant(b); }
Expr pow(const Expr& base, double exponent) { return Expr::power(base, exponent); }
Expr sin(const Expr& e) { return Expr::function(Op::Sin, e); }
Expr cos(const Expr& e) { return Expr::function(Op::Cos, e); }
Expr exp(const Expr& e) { return Expr::function(Op::Exp, e); }
Expr ln(const Expr& e) { return Expr::function(Op::Ln, e); }
Expr sqrt(const Expr& e) { return Expr::function(Op::Sqrt, e); }

Env::Env(std::initializer_list<std::pair<std::string, double>> init)
{
    for (const auto& [name, value] : init) {
        set(name, value);
    }
}

Env& Env::set(std::string_view name, double value)
{
    for (auto& entry : entries_) {
        if (entry.first == name) {
            entry.second = value;
            return *this;
        }
    }
    entries_.emplace_back(std::string(name), value);
    return *this;
}

const double* Env::find(std::string_view name) const noexcept
{
    for (const auto& entry : entries_) {
        if (entry.first == name) {
            return &entry.second;
        }
    }
    return nullptr;
}

double Env::at(std::string_view name) const
{
    if (const double* v = find(name)) {
        return *v;
    }
    throw DomainError("unbound variable '" + std::string(name) + "'");
}

namespace {

void collect_variables(const Expr& e, std::set<std::string, std::less<>>& out)
{
    if (e.empty()) {
        return;
    }
    if (e.op() == Op::Variable) {
        out.insert(e.name());
        return;
    }
    collect_variables(e.lhs(), out);
    collect_variables(e.rhs(), out);
}

} // namespace

std::set<std::string, std::less<>> free_variables(const Expr& e)
{
    std::set<std::string, std::less<>> out;
    collect_variables(e, out);
    return out;
}

bool depends_on(const Expr& e, std::string_view var)
{
    if (e.empty()) {
        return false;
    }
    if (e.op() == Op::Variable) {
        return e.name() == var;
    }
    return depends_on(e.lhs(), var) || depends_on(e.rhs(), var);
}

Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& replacements)
{
    switch (e.op()) {
    case Op::Constant:
        return e;
    case Op::Variable: {
        auto it = replacements.find(e.name());
        return it == replacements.end() ? e : it->second;
    }
    case Op::Negate:
        return Expr::negate(substitute(e.arg(), replacements));
    case Op::Power:
        return Expr::power(substitute(e.arg(), replacements), e.exponent());
    case Op::Sum:
    case Op::Difference:
    case Op::Product:
    case Op::Quotient:
        return Expr::binary(e.op(), substitute(e.lhs(), replacements),
                            substitute(e.rhs(), replacements));
    default:
        return Expr::function(e.op(), substitute(e.arg(), replacements));
    }
}

bool is_identifier(std::string_view name) noexcept
{
    if (name.empty()) {
        return false;
    }
    const auto head = static_cast<unsigned char>(name.front());
    if (!(std::isalpha(head) || head == '_')) {
        return false;
    }
    for (char c : name) {
        const auto uc = static_cast<unsigned char>(c);
        if (!(std::isalnum(uc) || uc == '_')) {
            return false;
        }
    }
    return true;
}

} // namespace isokit
