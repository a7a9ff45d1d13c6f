#include "isokit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isokit {

std::size_t Sampler::index(std::size_t n)
{
    return std::min(n - 1, static_cast<std::size_t>(unit() * static_cast<double>(n)));
}

AffineCoords Sampler::coords()
{
    for (;;) {
        const double a = range(-3, 3), b = range(-3, 3), c = range(-3, 3), d = range(-3, 3);
        if (std::fabs(a * d - b * c) >= 0.1) {
            return {a, b, c, d};
        }
    }
}

namespace {

Expr num(double v) { return Expr::constant(v); }

/// One term in t, defined for |t| <= reach.
Expr vocabulary_term(Sampler& s, const Expr& t, double reach)
{
    const double p = s.sign() * s.range(0.5, 2.0);
    const double q = s.range(0.2, 1.0);
    const double shift = reach + s.range(0.5, 2.0);
    switch (s.index(9)) {
    case 0: return num(p) * pow(t, 3.0) + num(q) * pow(t, 2.0);
    case 1: return num(p) * sin(num(q) * t) + num(q) * pow(t, 2.0);
    case 2: return num(p) * cos(num(q) * t) * exp(num(0.2 * q) * t);
    case 3: return num(p) * exp(num(q) * t);
    case 4: return num(p) * ln(t + num(shift));
    case 5: return num(p) * sqrt(t + num(shift));
    case 6: return num(p) * pow(t + num(shift), 1.5);
    case 7: return num(p) / (t + num(shift));
    default: return num(p) * pow(t, 2.0) + num(q) * t;
    }
}

/// Log, exp or trig term with |second derivative| >= about 2e-3 for |t| <= reach.
Expr nondegenerate_term(Sampler& s, const Expr& t, double reach)
{
    const double p = s.sign() * s.range(0.5, 1.5);
    const double q = s.range(0.3, 1.0);
    switch (s.index(3)) {
    case 0: return num(p) * exp(num(q) * t);
    case 1: return num(p) * ln(t + num(reach + s.range(0.5, 2.0)));
    default: {
        // 2|r| >= 2 exceeds |p| q^2 <= 1.5, so the quadratic dominates f''.
        const double r = s.sign() * s.range(1.0, 2.0);
        return num(p) * cos(num(q) * t) + num(r) * pow(t, 2.0);
    }
    }
}

} // namespace

AffineTranslationSurface random_affine_surface(std::uint64_t seed, ProfileStyle style)
{
    Sampler s(seed);
    const AffineCoords k = s.coords();
    const Expr u = Expr::variable("u");
    const Expr v = Expr::variable("v");
    const double ru = std::fabs(k.a()) + std::fabs(k.b());
    const double rv = std::fabs(k.c()) + std::fabs(k.d());
    Expr f, g;
    if (style == ProfileStyle::Vocabulary) {
        f = vocabulary_term(s, u, ru) + vocabulary_term(s, u, ru);
        g = vocabulary_term(s, v, rv) + vocabulary_term(s, v, rv);
    } else {
        f = nondegenerate_term(s, u, ru);
        g = nondegenerate_term(s, v, rv);
    }
    return {f, g, k, Domain::xy({-1.0, 1.0}, {-1.0, 1.0})};
}

IsotropicMotion random_motion(std::uint64_t seed)
{
    Sampler s(seed);
    IsotropicMotion m;
    m.a1 = s.range(-2, 2);
    m.a2 = s.range(-2, 2);
    m.a3 = s.range(-2, 2);
    m.a4 = s.range(-2, 2);
    m.a5 = s.range(-2, 2);
    m.phi = s.range(-std::numbers::pi, std::numbers::pi);
    return m;
}

std::vector<Point2> random_points(const Domain& domain, std::size_t count, std::uint64_t seed)
{
    Sampler s(seed);
    std::vector<Point2> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double a = s.range(domain.first.lo, domain.first.hi);
        const double b = s.range(domain.second.lo, domain.second.hi);
        out.push_back(domain.map(a, b));
    }
    return out;
}

} // namespace isokit
