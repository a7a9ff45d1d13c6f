// Taylor-mode evaluation. Coefficients are normalised (c_k = f^(k)/k!) while
// propagating and scaled back to derivatives at the end.

#include <cmath>
#include <stdexcept>
#include <string>

#include "isokit/jet.hpp"

namespace isokit {

namespace {

using Series = std::array<double, kMaxJetOrder + 1>;

struct Context {
    std::string_view var;
    double point;
    int order;
    const Env& env;
};

std::string excerpt(const Expr& e)
{
    std::string s = to_string(e);
    if (s.size() > 60) {
        s.resize(57);
        s += "...";
    }
    return s;
}

Series constant(double v)
{
    Series s{};
    s[0] = v;
    return s;
}

Series mul(const Series& a, const Series& b, int n)
{
    Series c{};
    for (int k = 0; k <= n; ++k) {
        double acc = 0.0;
        for (int i = 0; i <= k; ++i) {
            acc += a[i] * b[k - i];
        }
        c[k] = acc;
    }
    return c;
}

Series div(const Series& a, const Series& b, int n)
{
    Series c{};
    for (int k = 0; k <= n; ++k) {
        double acc = a[k];
        for (int i = 1; i <= k; ++i) {
            acc -= b[i] * c[k - i];
        }
        c[k] = acc / b[0];
    }
    return c;
}

Series exp_series(const Series& a, int n)
{
    Series e{};
    e[0] = std::exp(a[0]);
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) {
            acc += j * a[j] * e[k - j];
        }
        e[k] = acc / k;
    }
    return e;
}

Series ln_series(const Series& a, int n)
{
    Series l{};
    l[0] = std::log(a[0]);
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 1; j < k; ++j) {
            acc += j * l[j] * a[k - j];
        }
        l[k] = (a[k] - acc / k) / a[0];
    }
    return l;
}

void sin_cos_series(const Series& a, int n, Series& s, Series& c)
{
    s = Series{};
    c = Series{};
    s[0] = std::sin(a[0]);
    c[0] = std::cos(a[0]);
    for (int k = 1; k <= n; ++k) {
        double as = 0.0;
        double ac = 0.0;
        for (int j = 1; j <= k; ++j) {
            as += j * a[j] * c[k - j];
            ac += j * a[j] * s[k - j];
        }
        s[k] = as / k;
        c[k] = -ac / k;
    }
}

Series sqrt_series(const Series& a, int n)
{
    Series r{};
    r[0] = std::sqrt(a[0]);
    for (int k = 1; k <= n; ++k) {
        double acc = a[k];
        for (int j = 1; j < k; ++j) {
            acc -= r[j] * r[k - j];
        }
        r[k] = acc / (2.0 * r[0]);
    }
    return r;
}

/// a^p for real p with a[0] > 0: w_k = 1/(k a_0) * sum_{j=1..k} ((p+1) j - k) a_j w_{k-j}.
Series real_power_series(const Series& a, double p, int n)
{
    Series w{};
    w[0] = std::pow(a[0], p);
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) {
            acc += ((p + 1.0) * j - k) * a[j] * w[k - j];
        }
        w[k] = acc / (k * a[0]);
    }
    return w;
}

Series integer_power_series(const Series& a, long long p, int n)
{
    const bool invert = p < 0;
    unsigned long long m = invert ? static_cast<unsigned long long>(-p) : static_cast<unsigned long long>(p);
    Series result = constant(1.0);
    Series base = a;
    while (m > 0) {
        if (m & 1ULL) {
            result = mul(result, base, n);
        }
        m >>= 1ULL;
        if (m > 0) {
            base = mul(base, base, n);
        }
    }
    return invert ? div(constant(1.0), result, n) : result;
}

Series eval(const Expr& e, const Context& ctx)
{
    const int n = ctx.order;
    switch (e.op()) {
    case Op::Constant:
        return constant(e.value());
    case Op::Variable: {
        if (e.name() == ctx.var) {
            Series s{};
            s[0] = ctx.point;
            if (n >= 1) {
                s[1] = 1.0;
            }
            return s;
        }
        if (const double* v = ctx.env.find(e.name())) {
            return constant(*v);
        }
        throw DomainError("unbound variable '" + e.name() + "'");
    }
    case Op::Negate: {
        Series s = eval(e.arg(), ctx);
        for (auto& c : s) {
            c = -c;
        }
        return s;
    }
    case Op::Sum:
    case Op::Difference: {
        Series a = eval(e.lhs(), ctx);
        const Series b = eval(e.rhs(), ctx);
        const double sign = e.op() == Op::Sum ? 1.0 : -1.0;
        for (int k = 0; k <= n; ++k) {
            a[k] += sign * b[k];
        }
        return a;
    }
    case Op::Product:
        return mul(eval(e.lhs(), ctx), eval(e.rhs(), ctx), n);
    case Op::Quotient: {
        const Series a = eval(e.lhs(), ctx);
        const Series b = eval(e.rhs(), ctx);
        if (b[0] == 0.0) {
            throw DomainError("division by zero in " + excerpt(e));
        }
        return div(a, b, n);
    }
    case Op::Power: {
        const Series a = eval(e.arg(), ctx);
        const double p = e.exponent();
        if (std::floor(p) == p && std::fabs(p) < 9.0e15) {
            if (p < 0.0 && a[0] == 0.0) {
                throw DomainError("negative power of zero in " + excerpt(e));
            }
            return integer_power_series(a, static_cast<long long>(p), n);
        }
        if (!(a[0] > 0.0)) {
            throw DomainError("non-integer power of non-positive base in " + excerpt(e));
        }
        return real_power_series(a, p, n);
    }
    case Op::Sin:
    case Op::Cos: {
        Series s;
        Series c;
        sin_cos_series(eval(e.arg(), ctx), n, s, c);
        return e.op() == Op::Sin ? s : c;
    }
    case Op::Exp:
        return exp_series(eval(e.arg(), ctx), n);
    case Op::Ln: {
        const Series a = eval(e.arg(), ctx);
        if (!(a[0] > 0.0)) {
            throw DomainError("ln of non-positive argument in " + excerpt(e));
        }
        return ln_series(a, n);
    }
    case Op::Sqrt: {
        const Series a = eval(e.arg(), ctx);
        if (a[0] < 0.0 || (a[0] == 0.0 && n > 0)) {
            throw DomainError("sqrt not differentiable at its argument in " + excerpt(e));
        }
        return sqrt_series(a, n);
    }
    }
    throw DomainError("unknown node");
}

} // namespace

Jet jet_eval(const Expr& e, std::string_view var, double point, int order, const Env& env)
{
    if (order < 0 || order > kMaxJetOrder) {
        throw std::invalid_argument("jet_eval: order must be in [0, " +
                                    std::to_string(kMaxJetOrder) + "]");
    }
    if (e.empty()) {
        throw std::logic_error("jet_eval: empty expression");
    }
    const Context ctx{var, point, order, env};
    const Series s = eval(e, ctx);
    Jet jet;
    jet.order = order;
    double factorial = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            factorial *= k;
        }
        jet.derivs[k] = s[k] * factorial;
        if (!std::isfinite(jet.derivs[k])) {
            throw DomainError("non-finite derivative of order " + std::to_string(k) + " of " +
                              excerpt(e));
        }
    }
    return jet;
}

} // namespace isokit
