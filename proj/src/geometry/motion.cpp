#include <algorithm>
#include <array>
#include <cmath>

#include "isokit/geometry.hpp"

namespace isokit {

Point3 apply_isotropic_motion(const IsotropicMotion& m, const Point3& q) noexcept
{
    const double c = std::cos(m.phi);
    const double s = std::sin(m.phi);
    return {m.a1 + q.x * c - q.y * s, m.a2 + q.x * s + q.y * c, m.a3 + m.a4 * q.x + m.a5 * q.y + q.z};
}

GraphSurface motion_image(const GraphSurface& surface, const IsotropicMotion& m)
{
    const double c = std::cos(m.phi);
    const double s = std::sin(m.phi);
    const Expr X = Expr::variable("x");
    const Expr Y = Expr::variable("y");
    const Expr dx = X - Expr::constant(m.a1);
    const Expr dy = Y - Expr::constant(m.a2);
    // Inverse rotation gives the preimage of (x', y').
    const Expr px = Expr::constant(c) * dx + Expr::constant(s) * dy;
    const Expr py = Expr::constant(-s) * dx + Expr::constant(c) * dy;

    const Expr moved = substitute(surface.z(), {{"x", px}, {"y", py}});
    const Expr image = Expr::constant(m.a3) + Expr::constant(m.a4) * px +
                       Expr::constant(m.a5) * py + moved;

    // Bounding box of the image of the source domain.
    const Domain& dom = surface.domain();
    const std::array<Point2, 4> corners{dom.map(dom.first.lo, dom.second.lo),
                                        dom.map(dom.first.hi, dom.second.lo),
                                        dom.map(dom.first.lo, dom.second.hi),
                                        dom.map(dom.first.hi, dom.second.hi)};
    double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
    for (const Point2& q : corners) {
        const Point3 r = apply_isotropic_motion(m, {q.x, q.y, 0.0});
        xlo = std::min(xlo, r.x);
        xhi = std::max(xhi, r.x);
        ylo = std::min(ylo, r.y);
        yhi = std::max(yhi, r.y);
    }
    return GraphSurface(simplify(image), Domain::xy({xlo, xhi}, {ylo, yhi}));
}

Curvatures motion_image_curvatures(const GraphSurface& s, const IsotropicMotion& m, Point2 p)
{
    const GraphSurface image = motion_image(s, m);
    const Point3 q = apply_isotropic_motion(m, {p.x, p.y, 0.0});
    return curvatures(image, Point2{q.x, q.y});
}

} // namespace isokit
