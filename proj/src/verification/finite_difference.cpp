#include <cmath>

#include "isokit/verification.hpp"

namespace isokit {

namespace {

// Central 5-point stencils on offsets -2..2, one row per derivative order, as
// integer numerators over a common denominator. Orders 1 and 2 are
// fourth-order accurate, 3 and 4 second-order. Integer weights keep the sums
// exact for low-degree polynomials sampled at dyadic points.
constexpr std::array<std::array<double, 5>, 5> kWeights{{
    {0.0, 0.0, 1.0, 0.0, 0.0},
    {1.0, -8.0, 0.0, 8.0, -1.0},
    {-1.0, 16.0, -30.0, 16.0, -1.0},
    {-1.0, 2.0, 0.0, -2.0, 1.0},
    {1.0, -4.0, 6.0, -4.0, 1.0},
}};
constexpr std::array<double, 5> kDenominator{1.0, 12.0, 12.0, 2.0, 1.0};

constexpr std::array<double, 5> kBaseStep{0.0, 1e-4, 1e-3, 1e-2, 2e-2};

double default_step(int total_order, double coordinate)
{
    const double h = kBaseStep[static_cast<std::size_t>(total_order)] * std::max(1.0, std::fabs(coordinate));
    // A power of two keeps p +- k h exact when p is dyadic.
    return std::exp2(std::round(std::log2(h)));
}

template <class F>
double stencil2(const F& f, Point2 p, std::array<int, 2> k, double hx, double hy)
{
    const auto& wx = kWeights[static_cast<std::size_t>(k[0])];
    const auto& wy = kWeights[static_cast<std::size_t>(k[1])];
    double sum = 0.0;
    for (int j = 0; j < 5; ++j) {
        if (wy[static_cast<std::size_t>(j)] == 0.0) {
            continue;
        }
        double row = 0.0;
        for (int i = 0; i < 5; ++i) {
            if (wx[static_cast<std::size_t>(i)] == 0.0) {
                continue;
            }
            row += wx[static_cast<std::size_t>(i)] * f(p.x + (i - 2) * hx, p.y + (j - 2) * hy);
        }
        sum += wy[static_cast<std::size_t>(j)] * row;
    }
    const double denominator = kDenominator[static_cast<std::size_t>(k[0])] *
                               kDenominator[static_cast<std::size_t>(k[1])];
    return sum / denominator / (std::pow(hx, k[0]) * std::pow(hy, k[1]));
}

void check_order(std::array<int, 2> k)
{
    if (k[0] < 0 || k[1] < 0 || k[0] > 4 || k[1] > 4 || k[0] + k[1] > 4) {
        throw std::invalid_argument("fd_partial: orders must be in [0, 4] with total at most 4");
    }
}

template <class F>
double differentiate_numerically(const F& f, Point2 p, std::array<int, 2> k, const FdOptions& o)
{
    check_order(k);
    if (k[0] == 0 && k[1] == 0) {
        return f(p.x, p.y);
    }
    const int total = k[0] + k[1];
    const double hx = o.h ? *o.h : default_step(total, p.x);
    const double hy = o.h ? *o.h : default_step(total, p.y);
    const double coarse = stencil2(f, p, k, hx, hy);
    if (!o.richardson) {
        return coarse;
    }
    const double fine = stencil2(f, p, k, hx / 2, hy / 2);
    const double gain = (k[0] >= 3 || k[1] >= 3) ? 4.0 : 16.0;
    return (gain * fine - coarse) / (gain - 1.0);
}

} // namespace

double fd_partial(const Expr& e, Point2 p, std::array<int, 2> order, const FdOptions& options)
{
    const auto f = [&e](double x, double y) { return evaluate(e, Env{{"x", x}, {"y", y}}); };
    try {
        return differentiate_numerically(f, p, order, options);
    } catch (const DomainError& err) {
        throw err.at(p);
    }
}

double fd_derivative(const Expr& e, std::string_view var, double point, int order,
                     const FdOptions& options)
{
    const std::string name(var);
    const auto f = [&](double t, double) { return evaluate(e, Env{{name, t}}); };
    return differentiate_numerically(f, {point, 0.0}, {order, 0}, options);
}

VerificationReport ad_vs_fd_report(const Surface& s, const Grid& grid, double tol)
{
    static constexpr std::array<std::array<int, 2>, 9> kOrders{
        {{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}}};
    const Expr z = height_expr(s);

    std::vector<double> deviation(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) {
        const Point2 p = grid.point(k);
        const HeightPartials a = height_partials(s, p, 3);
        const std::array<double, 9> exact{a.zx,  a.zy,   a.zxx,  a.zxy, a.zyy,
                                          a.zxxx, a.zxxy, a.zxyy, a.zyyy};
        double worst = 0.0;
        for (std::size_t m = 0; m < kOrders.size(); ++m) {
            const double fd = fd_partial(z, p, kOrders[m]);
            const double dev = std::fabs(exact[m] - fd) / std::max(1.0, std::fabs(exact[m]));
            worst = std::isnan(dev) ? INFINITY : std::max(worst, dev);
        }
        deviation[k] = worst;
    });

    VerificationReport r;
    r.check = "ad-vs-fd";
    r.baseTolerance = tol;
    r.tolerance = tol;
    r.argmaxPoint = grid.point(0);
    for (std::size_t k = 0; k < deviation.size(); ++k) {
        if (k == 0 || deviation[k] > r.maxResidual) {
            r.maxResidual = deviation[k];
            r.argmaxPoint = grid.point(k);
        }
    }
    r.passed = r.maxResidual <= r.tolerance;
    return r;
}

} // namespace isokit
