#include <cmath>

#include "isokit/geometry.hpp"

namespace isokit {

ScalarField::ScalarField(Expr phi) : phi_(std::move(phi))
{
    if (phi_.empty()) {
        throw SpecError("phi", "empty expression");
    }
    for (const auto& name : free_variables(phi_)) {
        if (name != "x" && name != "y") {
            throw SpecError("phi", "unexpected variable '" + name + "' (expected x, y)");
        }
    }
    auto table = std::make_shared<std::array<Expr, 6>>();
    auto& t = *table;
    t[0] = phi_;
    t[1] = differentiate(phi_, "x");
    t[2] = differentiate(phi_, "y");
    t[3] = differentiate(t[1], "x");
    t[4] = differentiate(t[1], "y");
    t[5] = differentiate(t[2], "y");
    table_ = std::move(table);
}

PhiPartials ScalarField::at(Point2 p) const
{
    const Env env{{"x", p.x}, {"y", p.y}};
    const auto& t = *table_;
    try {
        return {evaluate(t[0], env), evaluate(t[1], env), evaluate(t[2], env),
                evaluate(t[3], env), evaluate(t[4], env), evaluate(t[5], env)};
    } catch (const DomainError& e) {
        throw e.at(p);
    }
}

PhiPartials coordinate_partials(Coordinate c, Point2 p, const HeightPartials& zp)
{
    switch (c) {
    case Coordinate::X: return {p.x, 1.0, 0.0, 0.0, 0.0, 0.0};
    case Coordinate::Y: return {p.y, 0.0, 1.0, 0.0, 0.0, 0.0};
    case Coordinate::Z: return {zp.z, zp.zx, zp.zy, zp.zxx, zp.zxy, zp.zyy};
    }
    return {};
}

PhiPartials phi_partials(const Phi& phi, Point2 p, const HeightPartials& zp)
{
    if (const auto* c = std::get_if<Coordinate>(&phi)) {
        return coordinate_partials(*c, p, zp);
    }
    return std::get<ScalarField>(phi).at(p);
}

double laplacian_I_general(const FirstFormJet& form, const PhiPartials& q)
{
    const double W = form.E * form.G - form.F * form.F;
    const double s = std::sqrt(std::fabs(W));
    const double sign = W < 0.0 ? -1.0 : 1.0;
    const double Wx = form.Ex * form.G + form.E * form.Gx - 2.0 * form.F * form.Fx;
    const double Wy = form.Ey * form.G + form.E * form.Gy - 2.0 * form.F * form.Fy;
    const double sx = sign * Wx / (2.0 * s);
    const double sy = sign * Wy / (2.0 * s);

    const double A = form.G * q.x - form.F * q.y;
    const double Ax = form.Gx * q.x + form.G * q.xx - form.Fx * q.y - form.F * q.xy;
    const double B = form.F * q.x - form.E * q.y;
    const double By = form.Fy * q.x + form.F * q.xy - form.Ey * q.y - form.E * q.yy;

    const double dA = (Ax * s - A * sx) / (s * s);
    const double dB = (By * s - B * sy) / (s * s);
    return (dA - dB) / s;
}

double laplacian_I(const Surface& s, const Phi& phi, Point2 p)
{
    const bool needs_height = std::holds_alternative<Coordinate>(phi) &&
                              std::get<Coordinate>(phi) == Coordinate::Z;
    const HeightPartials zp = needs_height ? height_partials(s, p, 2) : HeightPartials{};
    const PhiPartials q = phi_partials(phi, p, zp);
    return q.xx + q.yy;
}

double laplacian_II_from_partials(const HeightPartials& zp, const PhiPartials& q, Point2 p)
{
    const double L = zp.zxx, M = zp.zxy, N = zp.zyy;
    const double Lx = zp.zxxx, Ly = zp.zxxy;
    const double Mx = zp.zxxy, My = zp.zxyy;
    const double Nx = zp.zxyy, Ny = zp.zyyy;

    const double w = L * N - M * M;
    if (!(std::fabs(w) > kParabolicTolerance)) {
        throw ParabolicPointError(p, w);
    }
    const double sign = w < 0.0 ? -1.0 : 1.0;
    const double s = std::sqrt(std::fabs(w));
    const double wx = Lx * N + L * Nx - 2.0 * M * Mx;
    const double wy = Ly * N + L * Ny - 2.0 * M * My;
    const double sx = sign * wx / (2.0 * s);
    const double sy = sign * wy / (2.0 * s);

    const double P = N * q.x - M * q.y;
    const double Px = Nx * q.x + N * q.xx - Mx * q.y - M * q.xy;
    const double Q = M * q.x - L * q.y;
    const double Qy = My * q.x + M * q.xy - Ly * q.y - L * q.yy;

    // d/dx(sign P / s) and d/dy(sign Q / s)
    const double dP = sign * (Px * s - P * sx) / (s * s);
    const double dQ = sign * (Qy * s - Q * sy) / (s * s);
    return -(dP - dQ) / s;
}

double laplacian_II_general(const Surface& s, const Phi& phi, Point2 p)
{
    const HeightPartials zp = height_partials(s, p, 3);
    return laplacian_II_from_partials(zp, phi_partials(phi, p, zp), p);
}

double laplacian_II_affine(const AffineTranslationSurface& s, const Phi& phi, Point2 p)
{
    const ProfileJets j = s.jets(p, 3);
    const AffineCoords& k = s.coords();
    const double a = k.a(), b = k.b(), c = k.c(), d = k.d();
    const double det = k.det();
    const double f2 = j.f[2], f3 = j.f[3];
    const double g2 = j.g[2], g3 = j.g[3];

    const double prod = f2 * g2;
    if (prod == 0.0) {
        throw VanishingSecondDerivativeError(p);
    }
    const double w = det * det * prod;
    if (!(std::fabs(w) > kParabolicTolerance)) {
        throw ParabolicPointError(p, w);
    }

    HeightPartials zp;
    if (std::holds_alternative<Coordinate>(phi) && std::get<Coordinate>(phi) == Coordinate::Z) {
        zp = affine_partials(s, p, 2);
    }
    const PhiPartials q = phi_partials(phi, p, zp);

    const double first = (-b * q.x + a * q.y) * f2 * f2 * g3 + (d * q.x - c * q.y) * f3 * g2 * g2;
    const double second = (2.0 * a * b * q.xy - b * b * q.xx - a * a * q.yy) * f2 +
                          (2.0 * c * d * q.xy - d * d * q.xx - c * c * q.yy) * g2;
    return first / (prod * prod * 2.0 * det) + second / (prod * det * det);
}

} // namespace isokit
