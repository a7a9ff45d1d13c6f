#pragma once

#include <array>
#include <string_view>

#include "isokit/expr.hpp"

namespace isokit {

inline constexpr int kMaxJetOrder = 4;

/// Value and derivatives 1..order of a univariate function at a point.
struct Jet {
    int order = 0;
    std::array<double, kMaxJetOrder + 1> derivs{};

    [[nodiscard]] double operator[](int k) const { return derivs.at(static_cast<std::size_t>(k)); }
};

/// Evaluates e and its derivatives in `var` at `point` by truncated Taylor
/// arithmetic. Other variables of `e` are read from `env` and held fixed.
/// Throws DomainError where a node or one of its derivatives is undefined.
[[nodiscard]] Jet jet_eval(const Expr& e, std::string_view var, double point, int order,
                           const Env& env = {});

} // namespace isokit
