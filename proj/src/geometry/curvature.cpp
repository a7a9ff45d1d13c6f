#include "isokit/geometry.hpp"

namespace isokit {

Curvatures curvatures_from_hessian(const HeightPartials& zp) noexcept
{
    return {zp.zxx * zp.zyy - zp.zxy * zp.zxy, 0.5 * (zp.zxx + zp.zyy)};
}

Curvatures curvatures(const AffineTranslationSurface& s, Point2 p)
{
    const ProfileJets j = s.jets(p, 2);
    const AffineCoords& k = s.coords();
    const double det = k.det();
    return {det * det * j.f[2] * j.g[2], 0.5 * (k.u_norm() * j.f[2] + k.v_norm() * j.g[2])};
}

Curvatures curvatures(const GraphSurface& s, Point2 p)
{
    return curvatures_from_hessian(s.partials(p, 2));
}

Curvatures curvatures(const Surface& s, Point2 p)
{
    return std::visit([p](const auto& surface) { return curvatures(surface, p); }, s);
}

CurvatureSample curvature_gradients(const AffineTranslationSurface& s, Point2 p)
{
    const ProfileJets j = s.jets(p, 3);
    const AffineCoords& k = s.coords();
    const double a = k.a(), b = k.b(), c = k.c(), d = k.d();
    const double d2 = k.det() * k.det();
    const double A = k.u_norm();
    const double C = k.v_norm();
    const double f2 = j.f[2], f3 = j.f[3], g2 = j.g[2], g3 = j.g[3];

    CurvatureSample out;
    out.point = p;
    out.K = d2 * f2 * g2;
    out.H = 0.5 * (A * f2 + C * g2);
    // d/dx f(u) = a f', d/dy f(u) = b f'; likewise c, d for g(v).
    out.Kx = d2 * (a * f3 * g2 + c * f2 * g3);
    out.Ky = d2 * (b * f3 * g2 + d * f2 * g3);
    out.Hx = 0.5 * (A * a * f3 + C * c * g3);
    out.Hy = 0.5 * (A * b * f3 + C * d * g3);
    return out;
}

CurvatureSample curvature_gradients(const GraphSurface& s, Point2 p)
{
    const HeightPartials z = s.partials(p, 3);
    CurvatureSample out;
    out.point = p;
    const Curvatures kh = curvatures_from_hessian(z);
    out.K = kh.K;
    out.H = kh.H;
    out.Kx = z.zxxx * z.zyy + z.zxx * z.zxyy - 2.0 * z.zxy * z.zxxy;
    out.Ky = z.zxxy * z.zyy + z.zxx * z.zyyy - 2.0 * z.zxy * z.zxyy;
    out.Hx = 0.5 * (z.zxxx + z.zxyy);
    out.Hy = 0.5 * (z.zxxy + z.zyyy);
    return out;
}

CurvatureSample curvature_gradients(const Surface& s, Point2 p)
{
    return std::visit([p](const auto& surface) { return curvature_gradients(surface, p); }, s);
}

} // namespace isokit
