#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isokit/errors.hpp"

namespace isokit {

enum class Op {
    Constant,
    Variable,
    Negate,
    Sum,
    Difference,
    Product,
    Quotient,
    Power,
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
};

[[nodiscard]] std::string_view op_name(Op op) noexcept;
[[nodiscard]] bool is_function(Op op) noexcept;
[[nodiscard]] bool is_binary(Op op) noexcept;

/// Immutable expression tree over one or more real variables.
///
/// Nodes are shared, so copying an Expr is cheap and subtrees may appear in
/// several parents. A default-constructed Expr is empty and may only be
/// assigned to or tested with `empty()`.
class Expr {
public:
    struct Node;

    Expr() = default;

    static Expr constant(double value);
    static Expr variable(std::string name);
    static Expr negate(Expr arg);
    static Expr binary(Op op, Expr lhs, Expr rhs);
    /// `exponent` is a plain real; integer-valued exponents are differentiated
    /// with the integer power rule.
    static Expr power(Expr base, double exponent);
    static Expr function(Op fn, Expr arg);

    [[nodiscard]] bool empty() const noexcept { return node_ == nullptr; }
    [[nodiscard]] Op op() const;
    /// Constant value (Constant nodes only).
    [[nodiscard]] double value() const;
    /// Exponent (Power nodes only).
    [[nodiscard]] double exponent() const;
    [[nodiscard]] const std::string& name() const;
    /// Operand of Negate, Power and the function nodes; left operand of binaries.
    [[nodiscard]] const Expr& arg() const;
    [[nodiscard]] const Expr& lhs() const { return arg(); }
    [[nodiscard]] const Expr& rhs() const;

    [[nodiscard]] bool is_constant() const noexcept;
    [[nodiscard]] bool is_constant(double v) const noexcept;
    [[nodiscard]] std::size_t node_count() const;

    [[nodiscard]] const Node* get() const noexcept { return node_.get(); }

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct Expr::Node {
    Op op = Op::Constant;
    double number = 0.0; // Constant value or Power exponent
    std::string name;    // Variable name
    Expr lhs;
    Expr rhs;
};

/// Structural identity: same node kinds, names, and bit-identical numbers.
[[nodiscard]] bool structurally_equal(const Expr& a, const Expr& b);

// Raw builders. They do not simplify; `simplify` does.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(double a, const Expr& b);
Expr operator+(const Expr& a, double b);
[[nodiscard]] Expr pow(const Expr& base, double exponent);
[[nodiscard]] Expr sin(const Expr& e);
[[nodiscard]] Expr cos(const Expr& e);
[[nodiscard]] Expr exp(const Expr& e);
[[nodiscard]] Expr ln(const Expr& e);
[[nodiscard]] Expr sqrt(const Expr& e);

/// Variable bindings for evaluation. Lookup is linear; environments hold a
/// handful of names.
class Env {
public:
    Env() = default;
    Env(std::initializer_list<std::pair<std::string, double>> init);

    Env& set(std::string_view name, double value);
    [[nodiscard]] const double* find(std::string_view name) const noexcept;
    [[nodiscard]] double at(std::string_view name) const;
    [[nodiscard]] const std::vector<std::pair<std::string, double>>& entries() const noexcept
    {
        return entries_;
    }

private:
    std::vector<std::pair<std::string, double>> entries_;
};

/// Parses infix text. Precedence from loosest: `+ -`, `* /`, unary `-`, `^`
/// (right-associative). The right operand of `^` must fold to a constant.
/// Throws ParseError.
[[nodiscard]] Expr parse(std::string_view text);

/// Prints in a form that `parse` maps back to a structurally identical tree
/// for trees whose constants are non-negative (parse never creates negative
/// constants; `-2` parses as Negate(2)).
[[nodiscard]] std::string to_string(const Expr& e);

/// Exact symbolic derivative, locally simplified.
[[nodiscard]] Expr differentiate(const Expr& e, std::string_view var);
[[nodiscard]] Expr differentiate(const Expr& e, std::string_view var, int times);

/// Constant folding, 0/1 identities, double-negation removal. Value-preserving
/// wherever the input is defined.
[[nodiscard]] Expr simplify(const Expr& e);

/// Throws DomainError on ln/sqrt/power/quotient domain violations and on
/// unbound variables.
[[nodiscard]] double evaluate(const Expr& e, const Env& env);

/// Simultaneous substitution of variables by expressions.
[[nodiscard]] Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& replacements);

[[nodiscard]] std::set<std::string, std::less<>> free_variables(const Expr& e);
[[nodiscard]] bool depends_on(const Expr& e, std::string_view var);

[[nodiscard]] bool is_identifier(std::string_view name) noexcept;

} // namespace isokit
