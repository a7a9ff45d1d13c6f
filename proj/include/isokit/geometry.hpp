#pragma once

#include <array>
#include <memory>
#include <optional>
#include <variant>

#include "isokit/errors.hpp"
#include "isokit/expr.hpp"
#include "isokit/jet.hpp"

namespace isokit {

/// |LN - M^2| at or below this is treated as a parabolic point.
inline constexpr double kParabolicTolerance = 1e-10;
/// Smallest admissible |ad - bc|.
inline constexpr double kDeterminantTolerance = 1e-12;

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double width() const noexcept { return hi - lo; }
};

/// The affine parameter change u = a x + b y, v = c x + d y.
class AffineCoords {
public:
    /// Throws SpecError when |ad - bc| <= kDeterminantTolerance.
    AffineCoords(double a, double b, double c, double d);

    [[nodiscard]] static AffineCoords identity() { return {1.0, 0.0, 0.0, 1.0}; }

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double c() const noexcept { return c_; }
    [[nodiscard]] double d() const noexcept { return d_; }
    [[nodiscard]] double det() const noexcept { return det_; }
    /// a^2 + b^2
    [[nodiscard]] double u_norm() const noexcept { return a_ * a_ + b_ * b_; }
    /// c^2 + d^2
    [[nodiscard]] double v_norm() const noexcept { return c_ * c_ + d_ * d_; }

    [[nodiscard]] Point2 to_uv(Point2 p) const noexcept
    {
        return {a_ * p.x + b_ * p.y, c_ * p.x + d_ * p.y};
    }
    [[nodiscard]] Point2 to_xy(Point2 q) const noexcept
    {
        return {(d_ * q.x - b_ * q.y) / det_, (a_ * q.y - c_ * q.x) / det_};
    }

    friend bool operator==(const AffineCoords&, const AffineCoords&) = default;

private:
    double a_, b_, c_, d_, det_;
};

/// Sampling region: an axis-aligned rectangle in (x, y), or a rectangle in the
/// affine parameters (u, v) whose image in (x, y) is a parallelogram.
struct Domain {
    Interval first;
    Interval second;
    std::optional<AffineCoords> uv;

    /// Throws SpecError for empty or non-finite ranges.
    [[nodiscard]] static Domain xy(Interval x, Interval y);
    [[nodiscard]] static Domain over_uv(Interval u, Interval v, const AffineCoords& coords);

    [[nodiscard]] bool is_uv() const noexcept { return uv.has_value(); }
    /// Maps (s, t) in first x second to (x, y).
    [[nodiscard]] Point2 map(double s, double t) const noexcept
    {
        return uv ? uv->to_xy({s, t}) : Point2{s, t};
    }
};

/// Height z and its partials up to third order at a point. Entries above
/// `order` are zero.
struct HeightPartials {
    int order = 3;
    double z = 0.0;
    double zx = 0.0, zy = 0.0;
    double zxx = 0.0, zxy = 0.0, zyy = 0.0;
    double zxxx = 0.0, zxxy = 0.0, zxyy = 0.0, zyyy = 0.0;
};

/// Graph r(x, y) = (x, y, z(x, y)). Partials come from symbolic derivatives
/// of z, built once at construction.
class GraphSurface {
public:
    /// z must be an expression in x and y only.
    GraphSurface(Expr z, Domain domain);

    [[nodiscard]] const Expr& z() const noexcept { return z_; }
    [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
    [[nodiscard]] HeightPartials partials(Point2 p, int order = 3) const;

private:
    Expr z_;
    Domain domain_;
    // z, zx, zy, zxx, zxy, zyy, zxxx, zxxy, zxyy, zyyy
    std::shared_ptr<const std::array<Expr, 10>> table_;
};

/// Jets of both profiles at the image (u, v) of a point.
struct ProfileJets {
    double u = 0.0;
    double v = 0.0;
    Jet f;
    Jet g;
};

/// Graph of z(x, y) = f(a x + b y) + g(c x + d y).
class AffineTranslationSurface {
public:
    /// f must depend on u only, g on v only.
    AffineTranslationSurface(Expr f, Expr g, AffineCoords coords, Domain domain);

    [[nodiscard]] const Expr& f() const noexcept { return f_; }
    [[nodiscard]] const Expr& g() const noexcept { return g_; }
    [[nodiscard]] const AffineCoords& coords() const noexcept { return coords_; }
    [[nodiscard]] const Domain& domain() const noexcept { return domain_; }

    [[nodiscard]] ProfileJets jets(Point2 p, int order = 3) const;
    /// f(a x + b y) + g(c x + d y) as a single expression in x, y.
    [[nodiscard]] Expr height_expr() const;
    [[nodiscard]] GraphSurface as_graph() const;

private:
    Expr f_;
    Expr g_;
    AffineCoords coords_;
    Domain domain_;
};

using Surface = std::variant<GraphSurface, AffineTranslationSurface>;

[[nodiscard]] const Domain& domain_of(const Surface& s) noexcept;
[[nodiscard]] Expr height_expr(const Surface& s);

/// Chain-rule partials: z_x = a f' + c g', z_xx = a^2 f'' + c^2 g'', ...
[[nodiscard]] HeightPartials affine_partials(const AffineTranslationSurface& s, Point2 p,
                                             int order = 3);
[[nodiscard]] HeightPartials height_partials(const Surface& s, Point2 p, int order = 3);

struct FundamentalForms {
    double E = 1.0, F = 0.0, G = 1.0;
    double L = 0.0, M = 0.0, N = 0.0;
    double W = 1.0; ///< EG - F^2
    double w = 0.0; ///< LN - M^2
};

/// First form from the projection metric dx^2 + dy^2, second form from the
/// determinant formulas L = det(r_xx, r_x, r_y)/sqrt(W), etc.
/// Throws SpecError when W <= 0.
[[nodiscard]] FundamentalForms fundamental_forms_from_frame(const Point3& rx, const Point3& ry,
                                                            const Point3& rxx, const Point3& rxy,
                                                            const Point3& ryy);
[[nodiscard]] FundamentalForms fundamental_forms(const Surface& s, Point2 p);

struct Curvatures {
    double K = 0.0; ///< relative curvature
    double H = 0.0; ///< isotropic mean curvature
};

/// K = det Hess z, H = trace Hess z / 2.
[[nodiscard]] Curvatures curvatures_from_hessian(const HeightPartials& zp) noexcept;
/// K = (ad-bc)^2 f'' g'', 2H = (a^2+b^2) f'' + (c^2+d^2) g''.
[[nodiscard]] Curvatures curvatures(const AffineTranslationSurface& s, Point2 p);
[[nodiscard]] Curvatures curvatures(const GraphSurface& s, Point2 p);
[[nodiscard]] Curvatures curvatures(const Surface& s, Point2 p);

struct CurvatureSample {
    Point2 point;
    double K = 0.0, H = 0.0;
    double Kx = 0.0, Ky = 0.0, Hx = 0.0, Hy = 0.0;
};

[[nodiscard]] CurvatureSample curvature_gradients(const AffineTranslationSurface& s, Point2 p);
[[nodiscard]] CurvatureSample curvature_gradients(const GraphSurface& s, Point2 p);
[[nodiscard]] CurvatureSample curvature_gradients(const Surface& s, Point2 p);

/// A function phi on the surface, with partials up to second order.
struct PhiPartials {
    double v = 0.0;
    double x = 0.0, y = 0.0;
    double xx = 0.0, xy = 0.0, yy = 0.0;
};

enum class Coordinate { X, Y, Z };

/// Scalar field phi(x, y) with symbolic partials built once.
class ScalarField {
public:
    explicit ScalarField(Expr phi);

    [[nodiscard]] const Expr& expr() const noexcept { return phi_; }
    [[nodiscard]] PhiPartials at(Point2 p) const;

private:
    Expr phi_;
    std::shared_ptr<const std::array<Expr, 6>> table_;
};

/// Either a coordinate function r_i of the position vector or an explicit field.
using Phi = std::variant<Coordinate, ScalarField>;

[[nodiscard]] PhiPartials coordinate_partials(Coordinate c, Point2 p, const HeightPartials& zp);
[[nodiscard]] PhiPartials phi_partials(const Phi& phi, Point2 p, const HeightPartials& zp);

/// First form and its first partials, for the general first Laplacian.
struct FirstFormJet {
    double E = 1.0, F = 0.0, G = 1.0;
    double Ex = 0.0, Ey = 0.0, Fx = 0.0, Fy = 0.0, Gx = 0.0, Gy = 0.0;
};

/// (1/sqrt|W|) { d/dx((G phi_x - F phi_y)/sqrt|W|) - d/dy((F phi_x - E phi_y)/sqrt|W|) }
[[nodiscard]] double laplacian_I_general(const FirstFormJet& form, const PhiPartials& q);
/// phi_xx + phi_yy (graph metric dx^2 + dy^2).
[[nodiscard]] double laplacian_I(const Surface& s, const Phi& phi, Point2 p);

/// Second Laplacian from the Hessian route:
///   -(1/sqrt|w|) { d/dx(s (N phi_x - M phi_y)/sqrt|w|) - d/dy(s (M phi_x - L phi_y)/sqrt|w|) }
/// with s = sign(w), the Laplace-Beltrami operator of the (possibly indefinite)
/// second form. For w > 0 this is the printed operator verbatim.
/// Throws ParabolicPointError when |w| <= kParabolicTolerance.
[[nodiscard]] double laplacian_II_from_partials(const HeightPartials& zp, const PhiPartials& q,
                                                Point2 p);
[[nodiscard]] double laplacian_II_general(const Surface& s, const Phi& phi, Point2 p);

/// Closed form of the second Laplacian for affine translation surfaces in terms
/// of f', f'', f''', g', g'', g'''. Throws VanishingSecondDerivativeError when
/// f''g'' = 0 and ParabolicPointError when |w| <= kParabolicTolerance.
[[nodiscard]] double laplacian_II_affine(const AffineTranslationSurface& s, const Phi& phi,
                                         Point2 p);

struct IsotropicMotion {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0, a5 = 0.0;
    double phi = 0.0;
};

[[nodiscard]] Point3 apply_isotropic_motion(const IsotropicMotion& m, const Point3& q) noexcept;
/// The image surface z'(x', y') = a3 + a4 x + a5 y + z(x, y), where (x, y) is
/// the rotated-back preimage of (x', y').
[[nodiscard]] GraphSurface motion_image(const GraphSurface& s, const IsotropicMotion& m);
/// K, H of the image surface at the image of p.
[[nodiscard]] Curvatures motion_image_curvatures(const GraphSurface& s, const IsotropicMotion& m,
                                                 Point2 p);

} // namespace isokit
