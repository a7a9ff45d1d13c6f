#include <cmath>
#include <string>

#include "isokit/geometry.hpp"

namespace isokit {

AffineCoords::AffineCoords(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d), det_(a * d - b * c)
{
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d))) {
        throw SpecError("coords", "entries must be finite");
    }
    if (!(std::fabs(det_) > kDeterminantTolerance)) {
        throw SpecError("coords", "ad-bc = 0 (degenerate affine change)");
    }
}

namespace {

void check_interval(const Interval& r, const char* field)
{
    if (!(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo < r.hi)) {
        throw SpecError(field, "range must satisfy lo < hi (got [" + std::to_string(r.lo) + ", " +
                                   std::to_string(r.hi) + "])");
    }
}

} // namespace

Domain Domain::xy(Interval x, Interval y)
{
    check_interval(x, "domain.x");
    check_interval(y, "domain.y");
    return Domain{x, y, std::nullopt};
}

Domain Domain::over_uv(Interval u, Interval v, const AffineCoords& coords)
{
    check_interval(u, "domainUV.u");
    check_interval(v, "domainUV.v");
    return Domain{u, v, coords};
}

GraphSurface::GraphSurface(Expr z, Domain domain) : z_(std::move(z)), domain_(std::move(domain))
{
    if (z_.empty()) {
        throw SpecError("z", "empty expression");
    }
    for (const auto& name : free_variables(z_)) {
        if (name != "x" && name != "y") {
            throw SpecError("z", "unexpected variable '" + name + "' (expected x, y)");
        }
    }
    auto table = std::make_shared<std::array<Expr, 10>>();
    auto& t = *table;
    t[0] = z_;
    t[1] = differentiate(z_, "x");
    t[2] = differentiate(z_, "y");
    t[3] = differentiate(t[1], "x");
    t[4] = differentiate(t[1], "y");
    t[5] = differentiate(t[2], "y");
    t[6] = differentiate(t[3], "x");
    t[7] = differentiate(t[3], "y");
    t[8] = differentiate(t[4], "y");
    t[9] = differentiate(t[5], "y");
    table_ = std::move(table);
}

HeightPartials GraphSurface::partials(Point2 p, int order) const
{
    const Env env{{"x", p.x}, {"y", p.y}};
    const auto& t = *table_;
    HeightPartials out;
    out.order = order;
    try {
        out.z = evaluate(t[0], env);
        if (order >= 1) {
            out.zx = evaluate(t[1], env);
            out.zy = evaluate(t[2], env);
        }
        if (order >= 2) {
            out.zxx = evaluate(t[3], env);
            out.zxy = evaluate(t[4], env);
            out.zyy = evaluate(t[5], env);
        }
        if (order >= 3) {
            out.zxxx = evaluate(t[6], env);
            out.zxxy = evaluate(t[7], env);
            out.zxyy = evaluate(t[8], env);
            out.zyyy = evaluate(t[9], env);
        }
    } catch (const DomainError& e) {
        throw e.at(p);
    }
    return out;
}

AffineTranslationSurface::AffineTranslationSurface(Expr f, Expr g, AffineCoords coords,
                                                   Domain domain)
    : f_(std::move(f)), g_(std::move(g)), coords_(coords), domain_(std::move(domain))
{
    if (f_.empty()) {
        throw SpecError("f", "empty expression");
    }
    if (g_.empty()) {
        throw SpecError("g", "empty expression");
    }
    for (const auto& name : free_variables(f_)) {
        if (name != "u") {
            throw SpecError("f", "unexpected variable '" + name + "' (f depends on u only)");
        }
    }
    for (const auto& name : free_variables(g_)) {
        if (name != "v") {
            throw SpecError("g", "unexpected variable '" + name + "' (g depends on v only)");
        }
    }
}

ProfileJets AffineTranslationSurface::jets(Point2 p, int order) const
{
    const Point2 q = coords_.to_uv(p);
    try {
        return ProfileJets{q.x, q.y, jet_eval(f_, "u", q.x, order), jet_eval(g_, "v", q.y, order)};
    } catch (const DomainError& e) {
        throw e.at(p);
    }
}

Expr AffineTranslationSurface::height_expr() const
{
    const Expr x = Expr::variable("x");
    const Expr y = Expr::variable("y");
    const Expr u = Expr::constant(coords_.a()) * x + Expr::constant(coords_.b()) * y;
    const Expr v = Expr::constant(coords_.c()) * x + Expr::constant(coords_.d()) * y;
    return substitute(f_, {{"u", u}}) + substitute(g_, {{"v", v}});
}

GraphSurface AffineTranslationSurface::as_graph() const
{
    return GraphSurface(height_expr(), domain_);
}

const Domain& domain_of(const Surface& s) noexcept
{
    return std::visit([](const auto& surface) -> const Domain& { return surface.domain(); }, s);
}

Expr height_expr(const Surface& s)
{
    if (const auto* g = std::get_if<GraphSurface>(&s)) {
        return g->z();
    }
    return std::get<AffineTranslationSurface>(s).height_expr();
}

HeightPartials affine_partials(const AffineTranslationSurface& s, Point2 p, int order)
{
    const ProfileJets j = s.jets(p, order);
    const double a = s.coords().a();
    const double b = s.coords().b();
    const double c = s.coords().c();
    const double d = s.coords().d();
    HeightPartials out;
    out.order = order;
    out.z = j.f[0] + j.g[0];
    if (order >= 1) {
        out.zx = a * j.f[1] + c * j.g[1];
        out.zy = b * j.f[1] + d * j.g[1];
    }
    if (order >= 2) {
        out.zxx = a * a * j.f[2] + c * c * j.g[2];
        out.zxy = a * b * j.f[2] + c * d * j.g[2];
        out.zyy = b * b * j.f[2] + d * d * j.g[2];
    }
    if (order >= 3) {
        out.zxxx = a * a * a * j.f[3] + c * c * c * j.g[3];
        out.zxxy = a * a * b * j.f[3] + c * c * d * j.g[3];
        out.zxyy = a * b * b * j.f[3] + c * d * d * j.g[3];
        out.zyyy = b * b * b * j.f[3] + d * d * d * j.g[3];
    }
    return out;
}

HeightPartials height_partials(const Surface& s, Point2 p, int order)
{
    if (const auto* g = std::get_if<GraphSurface>(&s)) {
        return g->partials(p, order);
    }
    return affine_partials(std::get<AffineTranslationSurface>(s), p, order);
}

namespace {

double det3(const Point3& a, const Point3& b, const Point3& c)
{
    return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) +
           a.z * (b.x * c.y - b.y * c.x);
}

} // namespace

FundamentalForms fundamental_forms_from_frame(const Point3& rx, const Point3& ry, const Point3& rxx,
                                              const Point3& rxy, const Point3& ryy)
{
    FundamentalForms ff;
    // Isotropic metric: only the projection onto the xy-plane is measured.
    ff.E = rx.x * rx.x + rx.y * rx.y;
    ff.F = rx.x * ry.x + rx.y * ry.y;
    ff.G = ry.x * ry.x + ry.y * ry.y;
    ff.W = ff.E * ff.G - ff.F * ff.F;
    if (!(ff.W > 0.0)) {
        throw SpecError("surface", "EG-F^2 <= 0 (isotropic tangent plane)");
    }
    const double root = std::sqrt(ff.W);
    ff.L = det3(rxx, rx, ry) / root;
    ff.M = det3(rxy, rx, ry) / root;
    ff.N = det3(ryy, rx, ry) / root;
    ff.w = ff.L * ff.N - ff.M * ff.M;
    return ff;
}

FundamentalForms fundamental_forms(const Surface& s, Point2 p)
{
    const HeightPartials zp = height_partials(s, p, 2);
    return fundamental_forms_from_frame({1.0, 0.0, zp.zx}, {0.0, 1.0, zp.zy}, {0.0, 0.0, zp.zxx},
                                        {0.0, 0.0, zp.zxy}, {0.0, 0.0, zp.zyy});
}

} // namespace isokit
