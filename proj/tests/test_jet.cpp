#include <gtest/gtest.h>

#include <cmath>

#include "isokit/jet.hpp"
#include "support/random_expr.hpp"

namespace isokit {
namespace {

void expect_jet(const Jet& j, std::initializer_list<double> expected, double tol)
{
    ASSERT_EQ(j.order + 1, static_cast<int>(expected.size()));
    int k = 0;
    for (double v : expected) {
        EXPECT_NEAR(j[k], v, tol * std::max(1.0, std::fabs(v))) << "entry " << k;
        ++k;
    }
}

TEST(Jet, Logarithm) { expect_jet(jet_eval(parse("ln(u)"), "u", 5.0, 3), {std::log(5.0), 0.2, -0.04, 0.016}, 1e-15); }

TEST(Jet, Cosine) { expect_jet(jet_eval(parse("cos(u)"), "u", 0.0, 3), {1, 0, -1, 0}, 1e-15); }

TEST(Jet, Square) { expect_jet(jet_eval(parse("u^2"), "u", 3.0, 3), {9, 6, 2, 0}, 1e-15); }

TEST(Jet, FourthOrder)
{
    expect_jet(jet_eval(parse("exp(2*u)"), "u", 0.0, 4), {1, 2, 4, 8, 16}, 1e-14);
    expect_jet(jet_eval(parse("u^-1"), "u", 2.0, 4), {0.5, -0.25, 0.25, -0.375, 0.75}, 1e-14);
}

TEST(Jet, OtherVariablesHeldFixed)
{
    const Jet j = jet_eval(parse("x*y^2"), "x", 1.5, 2, Env{{"y", 3.0}});
    expect_jet(j, {13.5, 9.0, 0.0}, 1e-15);
}

TEST(Jet, DomainErrors)
{
    EXPECT_THROW((void)jet_eval(parse("ln(u)"), "u", -1.0, 2), DomainError);
    EXPECT_THROW((void)jet_eval(parse("sqrt(u)"), "u", 0.0, 1), DomainError);
    EXPECT_THROW((void)jet_eval(parse("1/u"), "u", 0.0, 1), DomainError);
    EXPECT_THROW((void)jet_eval(parse("u^1.5"), "u", -1.0, 1), DomainError);
    EXPECT_THROW((void)jet_eval(parse("u"), "u", 1.0, 5), std::invalid_argument);
}

TEST(JetProperties, MatchesRepeatedSymbolicDifferentiation)
{
    testing::ExprGenerator gen(99, {"u"});
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const Expr e = gen.smooth(4, "u");
        std::array<Expr, kMaxJetOrder + 1> d{e};
        for (int k = 1; k <= kMaxJetOrder; ++k) {
            d[k] = differentiate(d[k - 1], "u");
        }
        for (int s = 0; s < 5; ++s) {
            const double u = gen.uniform(0.1, 3.0);
            const Jet j = jet_eval(e, "u", u, kMaxJetOrder);
            for (int k = 0; k <= kMaxJetOrder; ++k) {
                const double sym = evaluate(d[k], Env{{"u", u}});
                if (std::fabs(sym) > 1e8) {
                    continue;
                }
                EXPECT_NEAR(j[k], sym, 1e-12 * std::max(1.0, std::fabs(sym)))
                    << to_string(e) << " order " << k << " at " << u;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 4000);
}

} // namespace
} // namespace isokit
