#include <gtest/gtest.h>

#include <cmath>

#include "isokit/expr.hpp"
#include "support/random_expr.hpp"

namespace isokit {
namespace {

Expr var(const char* n) { return Expr::variable(n); }
Expr num(double v) { return Expr::constant(v); }

void expect_same(const Expr& actual, const Expr& expected)
{
    EXPECT_TRUE(structurally_equal(actual, expected))
        << "actual:   " << to_string(actual) << "\nexpected: " << to_string(expected);
}

TEST(Parse, SingleFunction) { expect_same(parse("cos(u)"), cos(var("u"))); }

TEST(Parse, IntegerPower) { expect_same(parse("v^2"), pow(var("v"), 2.0)); }

TEST(Parse, LogarithmicHeight)
{
    const Expr x = var("x");
    const Expr y = var("y");
    expect_same(parse("ln(2*x+y)+ln(x-y)"), ln(num(2) * x + y) + ln(x - y));
}

TEST(Parse, Precedence)
{
    const Expr x = var("x");
    const Expr y = var("y");
    expect_same(parse("-x^2"), -pow(x, 2.0));
    expect_same(parse("x-y-1"), (x - y) - num(1));
    expect_same(parse("x/y*2"), (x / y) * num(2));
    expect_same(parse("x+y*2"), x + y * num(2));
    expect_same(parse("--x"), -(-x));
    expect_same(parse("x * -y"), x * (-y));
    expect_same(parse("(x+y)^3"), pow(x + y, 3.0));
}

TEST(Parse, PowerIsRightAssociativeWithConstantExponent)
{
    expect_same(parse("x^2^3"), pow(var("x"), 8.0));
    expect_same(parse("x^-2"), pow(var("x"), -2.0));
    expect_same(parse("x^(1/2)"), pow(var("x"), 0.5));
}

TEST(Parse, NumberForms)
{
    EXPECT_DOUBLE_EQ(parse("1.5e3").value(), 1500.0);
    EXPECT_DOUBLE_EQ(parse(".25").value(), 0.25);
    EXPECT_DOUBLE_EQ(parse("2E-2").value(), 0.02);
}

struct BadInput {
    const char* text;
    std::size_t position;
};

class ParseErrors : public ::testing::TestWithParam<BadInput> {};

TEST_P(ParseErrors, ReportsPosition)
{
    const auto& c = GetParam();
    try {
        (void)parse(c.text);
        FAIL() << "expected ParseError for '" << c.text << "'";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), c.position) << c.text << ": " << e.what();
        EXPECT_LE(e.position(), std::string_view(c.text).size());
    }
}

INSTANTIATE_TEST_SUITE_P(Cases, ParseErrors,
                         ::testing::Values(BadInput{"(x+1", 0}, BadInput{"x+1)", 3},
                                           BadInput{"sin((x)", 3}, BadInput{"foo(x)", 0},
                                           BadInput{"x+", 2}, BadInput{"x*/y", 2},
                                           BadInput{"", 0}, BadInput{"x^y", 2},
                                           BadInput{"2x", 1}, BadInput{"x $ y", 2},
                                           BadInput{"sin", 0}, BadInput{"()", 1}),
                         [](const auto& info) { return "case" + std::to_string(info.index); });

TEST(Differentiate, Cosine) { expect_same(differentiate(parse("cos(u)"), "u"), -sin(var("u"))); }

TEST(Differentiate, Square) { expect_same(differentiate(parse("v^2"), "v"), num(2) * var("v")); }

TEST(Differentiate, FreeExpressionGivesZero)
{
    const Expr d = differentiate(parse("sin(y)*exp(y^2) + ln(3)"), "x");
    ASSERT_TRUE(d.is_constant());
    EXPECT_EQ(d.value(), 0.0);
}

TEST(Differentiate, ThirdDerivativeOfLog)
{
    const Expr d3 = differentiate(parse("ln(u)"), "u", 3);
    const double value = evaluate(d3, Env{{"u", 5.0}});
    EXPECT_NEAR(value, 2.0 / 125.0, 1e-15);
    // Independent check: 5-point stencil for the third derivative.
    const auto f = [](double u) { return std::log(u); };
    const double h = 0.0625;
    const double fd = (f(5 + 2 * h) - 2 * f(5 + h) + 2 * f(5 - h) - f(5 - 2 * h)) / (2 * h * h * h);
    EXPECT_NEAR(fd, 0.016, 1e-4);
}

TEST(Differentiate, RealExponent)
{
    const Expr d = differentiate(parse("x^1.5"), "x");
    EXPECT_NEAR(evaluate(d, Env{{"x", 4.0}}), 1.5 * 2.0, 1e-14);
}

TEST(Evaluate, Examples)
{
    EXPECT_EQ(evaluate(parse("cos(u)"), Env{{"u", 0.0}}), 1.0);
    EXPECT_NEAR(evaluate(parse("ln(2*x+y)+ln(x-y)"), Env{{"x", 2.0}, {"y", 1.0}}), std::log(5.0),
                1e-15);
    EXPECT_EQ(evaluate(parse("v^2"), Env{{"v", -3.0}}), 9.0);
}

TEST(Evaluate, DomainViolations)
{
    EXPECT_THROW((void)evaluate(parse("ln(x)"), Env{{"x", -1.0}}), DomainError);
    EXPECT_THROW((void)evaluate(parse("1/x"), Env{{"x", 0.0}}), DomainError);
    EXPECT_THROW((void)evaluate(parse("sqrt(x)"), Env{{"x", -0.5}}), DomainError);
    EXPECT_THROW((void)evaluate(parse("x^0.5"), Env{{"x", -2.0}}), DomainError);
    EXPECT_THROW((void)evaluate(parse("x^-1"), Env{{"x", 0.0}}), DomainError);
    EXPECT_THROW((void)evaluate(parse("x+y"), Env{{"x", 1.0}}), DomainError);
    EXPECT_NO_THROW((void)evaluate(parse("sqrt(x)"), Env{{"x", 0.0}}));

    try {
        (void)evaluate(parse("1 + ln(x - y)"), Env{{"x", 1.0}, {"y", 2.0}});
        FAIL();
    } catch (const DomainError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("ln"), std::string::npos) << msg;
        EXPECT_NE(msg.find("x - y"), std::string::npos) << msg;
        EXPECT_NE(msg.find("-1"), std::string::npos) << msg;
    }
}

TEST(Simplify, Identities)
{
    expect_same(simplify(num(0) + var("u")), var("u"));
    expect_same(simplify(num(1) * cos(var("u"))), cos(var("u")));
    expect_same(simplify(num(2) * num(3)), num(6));
    expect_same(simplify(-(-var("u"))), var("u"));
    expect_same(simplify(var("u") - num(0)), var("u"));
    expect_same(simplify(pow(var("u"), 1.0)), var("u"));
    expect_same(simplify(var("u") * num(0) + sin(num(0))), num(0));
}

TEST(Simplify, KeepsUndefinedConstantsUnfolded)
{
    const Expr e = simplify(ln(num(-1)));
    EXPECT_EQ(e.op(), Op::Ln);
    EXPECT_THROW((void)evaluate(e, Env{}), DomainError);
}

TEST(Print, Readable)
{
    EXPECT_EQ(to_string(parse("ln(2*x+y)+ln(x-y)")), "ln(2 * x + y) + ln(x - y)");
    EXPECT_EQ(to_string(parse("-(x+y)^2")), "-(x + y)^2");
    EXPECT_EQ(to_string(parse("x-(y-1)")), "x - (y - 1)");
    EXPECT_EQ(to_string(pow(var("x"), -0.5)), "x^-0.5");
}

// --- properties -----------------------------------------------------------

TEST(ExprProperties, PrintParseRoundTrip)
{
    testing::ExprGenerator gen(20240611, {"x", "y", "u"});
    for (int i = 0; i < 1000; ++i) {
        const Expr e = gen.tree(5);
        const std::string text = to_string(e);
        Expr back;
        ASSERT_NO_THROW(back = parse(text)) << text;
        ASSERT_TRUE(structurally_equal(e, back)) << text << "\n -> " << to_string(back);
    }
}

/// Values at random points where both sides are defined and moderate.
template <class Compare>
int sample_points(testing::ExprGenerator& gen, const Expr& a, const Expr& b, Compare cmp)
{
    int used = 0;
    for (int attempt = 0; attempt < 400 && used < 100; ++attempt) {
        const Env env{{"x", gen.uniform(-2.0, 2.0)}};
        double va = 0.0;
        double vb = 0.0;
        try {
            va = evaluate(a, env);
            vb = evaluate(b, env);
        } catch (const DomainError&) {
            continue;
        }
        if (std::fabs(va) > 1e6 || std::fabs(vb) > 1e6) {
            continue;
        }
        cmp(va, vb, env);
        ++used;
    }
    return used;
}

TEST(ExprProperties, DifferentiationIsLinear)
{
    testing::ExprGenerator gen(7);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        const Expr e1 = gen.tree(3);
        const Expr e2 = gen.tree(3);
        const double alpha = gen.uniform(-3.0, 3.0);
        const double beta = gen.uniform(-3.0, 3.0);
        const Expr lhs = differentiate(num(alpha) * e1 + num(beta) * e2, "x");
        const Expr d1 = differentiate(e1, "x");
        const Expr d2 = differentiate(e2, "x");
        checked += sample_points(gen, lhs, num(alpha) * d1 + num(beta) * d2,
                                 [&](double va, double vb, const Env& env) {
                                     const double scale =
                                         1.0 + std::fabs(alpha * evaluate(d1, env)) +
                                         std::fabs(beta * evaluate(d2, env));
                                     EXPECT_NEAR(va, vb, 1e-12 * scale);
                                 });
    }
    EXPECT_GT(checked, 1000);
}

TEST(ExprProperties, ProductRule)
{
    testing::ExprGenerator gen(11);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        const Expr e1 = gen.tree(3);
        const Expr e2 = gen.tree(3);
        const Expr lhs = differentiate(e1 * e2, "x");
        const Expr d1 = differentiate(e1, "x");
        const Expr d2 = differentiate(e2, "x");
        checked += sample_points(gen, lhs, d1 * e2 + e1 * d2,
                                 [&](double va, double vb, const Env& env) {
                                     const double scale =
                                         1.0 + std::fabs(evaluate(d1 * e2, env)) +
                                         std::fabs(evaluate(e1 * d2, env));
                                     EXPECT_NEAR(va, vb, 1e-12 * scale);
                                 });
    }
    EXPECT_GT(checked, 1000);
}

TEST(ExprProperties, SimplifyPreservesValues)
{
    testing::ExprGenerator gen(3);
    for (int i = 0; i < 300; ++i) {
        const Expr e = gen.tree(5);
        const Expr s = simplify(e);
        EXPECT_LE(s.node_count(), e.node_count());
        sample_points(gen, e, s, [&](double va, double vb, const Env&) {
            EXPECT_NEAR(va, vb, 1e-14 * std::max(1.0, std::fabs(va))) << to_string(e);
        });
    }
}

} // namespace
} // namespace isokit
