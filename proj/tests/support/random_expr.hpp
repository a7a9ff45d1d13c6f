#pragma once

// Seeded random expression trees for property tests.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "isokit/expr.hpp"

namespace isokit::testing {

class ExprGenerator {
public:
    explicit ExprGenerator(std::uint64_t seed, std::vector<std::string> vars = {"x"})
        : rng_(seed), vars_(std::move(vars))
    {
    }

    /// Tree of depth at most `depth`; constants are non-negative so the
    /// printed form re-parses to the same tree.
    Expr tree(int depth)
    {
        if (depth <= 0 || chance(0.2)) {
            return leaf();
        }
        switch (pick(11)) {
        case 0: return Expr::negate(tree(depth - 1));
        case 1: return tree(depth - 1) + tree(depth - 1);
        case 2: return tree(depth - 1) - tree(depth - 1);
        case 3: return tree(depth - 1) * tree(depth - 1);
        case 4: return tree(depth - 1) / tree(depth - 1);
        case 5: {
            static constexpr std::array<double, 6> exps{2.0, 3.0, -1.0, 0.5, 1.5, -2.0};
            return Expr::power(tree(depth - 1), exps[pick(exps.size())]);
        }
        case 6: return isokit::sin(tree(depth - 1));
        case 7: return isokit::cos(tree(depth - 1));
        case 8: return isokit::exp(tree(depth - 1));
        case 9: return isokit::ln(tree(depth - 1));
        default: return isokit::sqrt(tree(depth - 1));
        }
    }

    /// Smooth expression in one variable on (0, inf): no sqrt/ln of
    /// sign-changing arguments.
    Expr smooth(int depth, const std::string& var)
    {
        const Expr x = Expr::variable(var);
        if (depth <= 0 || chance(0.25)) {
            return chance(0.5) ? x : Expr::constant(uniform(0.5, 2.0));
        }
        switch (pick(7)) {
        case 0: return smooth(depth - 1, var) + smooth(depth - 1, var);
        case 1: return smooth(depth - 1, var) * smooth(depth - 1, var);
        case 2: return isokit::sin(smooth(depth - 1, var));
        case 3: return isokit::cos(smooth(depth - 1, var));
        case 4: return isokit::exp(Expr::constant(0.3) * smooth(depth - 1, var));
        case 5: return isokit::ln(Expr::constant(1.0) + x * x);
        default: return Expr::power(x + Expr::constant(1.0), 2.0);
        }
    }

    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    }

    std::size_t pick(std::size_t n)
    {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
    }

    bool chance(double p) { return uniform(0.0, 1.0) < p; }

private:
    Expr leaf()
    {
        if (chance(0.5)) {
            return Expr::variable(vars_[pick(vars_.size())]);
        }
        // A few digits so printed constants stay readable.
        return Expr::constant(std::round(uniform(0.0, 4.0) * 100.0) / 100.0);
    }

    std::mt19937_64 rng_;
    std::vector<std::string> vars_;
};

} // namespace isokit::testing
