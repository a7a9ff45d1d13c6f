#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isokit/families.hpp"
#include "isokit/geometry.hpp"

namespace isokit {

inline constexpr int kDefaultGridSize = 33;
inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr double kFdTolerance = 1e-5;
inline constexpr std::size_t kMaxGridPoints = 10'000'000;

/// nx x ny samples over a Domain, endpoints included. Point (i, j) sits at
/// index j * nx + i (row-major, x fastest). For uv-domains the samples are
/// uniform in (u, v) and mapped to (x, y).
class Grid {
public:
    /// Throws SpecError when nx or ny < 2 or nx * ny exceeds kMaxGridPoints.
    Grid(Domain domain, int nx = kDefaultGridSize, int ny = kDefaultGridSize);

    [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
    [[nodiscard]] int nx() const noexcept { return nx_; }
    [[nodiscard]] int ny() const noexcept { return ny_; }
    [[nodiscard]] std::size_t size() const noexcept
    {
        return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
    }
    /// Sample coordinates (s, t) in the domain's own parameters.
    [[nodiscard]] Point2 parameter(std::size_t index) const noexcept;
    [[nodiscard]] Point2 point(std::size_t index) const noexcept;
    [[nodiscard]] Point2 point(int i, int j) const noexcept;

private:
    Domain domain_;
    int nx_;
    int ny_;
};

/// Worker count for grid loops: ISOKIT_THREADS if set to a positive integer,
/// else the hardware concurrency.
[[nodiscard]] unsigned worker_count();

/// Runs body(k) for k in [0, n) on up to worker_count() threads. If any call
/// throws, the exception from the smallest k is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

struct VerificationReport {
    std::string check;
    double maxResidual = 0.0;
    Point2 argmaxPoint;
    std::vector<std::pair<std::string, double>> fitted;
    bool rankDeficient = false;
    bool passed = false;
    /// Effective tolerance, already multiplied by the scale factor.
    double tolerance = 0.0;
    /// Requested tolerance before scaling.
    double baseTolerance = 0.0;
    /// 1 + max(|K|, |H|, |z|) over the grid.
    double scale = 1.0;
    std::vector<std::string> notes;

    [[nodiscard]] std::optional<double> value(std::string_view name) const;
};

/// 1 + max(|K|, |H|, |z|) over the grid.
[[nodiscard]] double grid_scale(const Surface& s, const Grid& grid);

/// max |K_x H_y - K_y H_x|.
[[nodiscard]] VerificationReport weingarten_residual(const Surface& s, const Grid& grid,
                                                     double tol = kDefaultTolerance);

enum class WeingartenFactor { BalancedSecondDerivs, FVanishingThird, GVanishingThird, NotWeingarten };

[[nodiscard]] std::string_view factor_name(WeingartenFactor f) noexcept;

/// First factor of [(a^2+b^2) f'' - (c^2+d^2) g''] f''' g''' whose sup-norm
/// over the grid is at most 1e-8 (1 + scale).
[[nodiscard]] WeingartenFactor weingarten_classify(const AffineTranslationSurface& s,
                                                   const Grid& grid);

/// max |K + 2 m0 H - n0|.
[[nodiscard]] VerificationReport linear_weingarten_check(const Surface& s, double m0, double n0,
                                                         const Grid& grid,
                                                         double tol = kDefaultTolerance);

/// Least squares for K = -2 m0 H + n0. When H is constant on the grid the
/// system is rank deficient and the minimal-norm solution is returned.
[[nodiscard]] VerificationReport linear_weingarten_fit(const Surface& s, const Grid& grid,
                                                       double tol = kDefaultTolerance);

/// Rayleigh-quotient estimate of lambda_i in Delta r_i = lambda_i r_i for
/// r = (x, y, z). Throws ParabolicPointError for the second Laplacian on a
/// grid that meets K = 0.
[[nodiscard]] VerificationReport eigen_estimate(const Surface& s, Laplacian which,
                                                const Grid& grid, double tol = kDefaultTolerance);

/// max_i max_j |Delta r_i - lambda_i r_i| for given lambdas.
[[nodiscard]] VerificationReport eigen_check(const Surface& s, Laplacian which,
                                             const std::array<double, 3>& lambda,
                                             const Grid& grid, double tol = kDefaultTolerance);

/// Second Laplacian of a coordinate function: the closed form for affine
/// translation surfaces, the Hessian route for graphs.
[[nodiscard]] double laplacian_of_coordinate(const Surface& s, Laplacian which, Coordinate c,
                                             Point2 p);

struct FdOptions {
    /// Explicit step for every axis. Unset: per-order default scaled by
    /// max(1, |coordinate|) and rounded to a power of two.
    std::optional<double> h;
    /// One Richardson step (h against h/2).
    bool richardson = true;
};

/// Central 5-point differences per axis, nested for mixed partials.
/// order = {k_x, k_y}, each in [0, 4].
[[nodiscard]] double fd_partial(const Expr& e, Point2 p, std::array<int, 2> order,
                                const FdOptions& options = {});
/// Univariate form for an expression in `var`.
[[nodiscard]] double fd_derivative(const Expr& e, std::string_view var, double point, int order,
                                   const FdOptions& options = {});

/// Max relative deviation |ad - fd| / max(1, |ad|) over the grid and every
/// partial of z up to third order.
[[nodiscard]] VerificationReport ad_vs_fd_report(const Surface& s, const Grid& grid,
                                                 double tol = kFdTolerance);

/// Runs the check behind each expected class of a certificate.
[[nodiscard]] std::vector<VerificationReport> check_certificate(const Surface& s,
                                                                const Certificate& cert,
                                                                const Grid& grid);

} // namespace isokit
