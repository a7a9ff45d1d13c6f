#include "isokit/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "isokit/families.hpp"
#include "isokit/sampling.hpp"
#include "isokit/verification.hpp"

namespace isokit {

namespace {

struct Verdict {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Family example(FamilyKind kind)
{
    FamilySpec spec;
    spec.kind = kind;
    return build(spec);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict example1()
{
    const auto t0 = std::chrono::steady_clock::now();
    const Family fam = example(FamilyKind::Example1);
    const Surface s = fam.surface;
    const Grid grid(fam.surface.domain());
    const VerificationReport w = weingarten_residual(s, grid);
    const VerificationReport fit = linear_weingarten_fit(s, grid);
    const double elapsed = seconds_since(t0);
    const double m0 = *fit.value("m0");
    const double n0 = *fit.value("n0");
    const bool ok = w.maxResidual <= 1e-9 && std::fabs(m0 + 4.0) <= 1e-6 &&
                    std::fabs(n0 + 16.0) <= 1e-6 && fit.maxResidual <= 1e-9 && elapsed < 0.1;
    return {ok, fmt("weingarten residual %.3g, fit m0 = %.12g n0 = %.12g residual %.3g, %.4f s",
                    w.maxResidual, m0, n0, fit.maxResidual, elapsed)};
}

bool lambdas_match(const VerificationReport& r, const std::array<double, 3>& expected, double tol)
{
    for (std::size_t i = 0; i < 3; ++i) {
        const auto got = r.value("lambda" + std::to_string(i + 1));
        if (!got || std::fabs(*got - expected[i]) > tol) {
            return false;
        }
    }
    return true;
}

std::string lambdas(const VerificationReport& r)
{
    std::string out = "(";
    for (int i = 1; i <= 3; ++i) {
        const auto got = r.value("lambda" + std::to_string(i));
        out += got ? fmt("%.12g", *got) : std::string("none");
        out += i < 3 ? ", " : ")";
    }
    return out;
}

Verdict eigen_example(FamilyKind kind, Laplacian which, const std::array<double, 3>& expected,
                      double tol)
{
    const Family fam = example(kind);
    const VerificationReport r = eigen_estimate(fam.surface, which, Grid(fam.surface.domain()));
    const bool ok = lambdas_match(r, expected, tol) && r.maxResidual <= tol;
    return {ok, fmt("lambda %s, residual %.3g", lambdas(r).c_str(), r.maxResidual)};
}

Verdict family_round_trip()
{
    const auto t0 = std::chrono::steady_clock::now();
    int specs = 0;
    int failures = 0;
    std::string first_failure;
    for (const FamilyKind kind : theorem_kinds()) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            ++specs;
            try {
                const Family fam = build(random_family(kind, seed));
                const Grid grid(fam.surface.domain());
                bool ok = true;
                for (const auto& r : check_certificate(fam.surface, fam.certificate, grid)) {
                    ok = ok && r.passed;
                }
                if (!ok) {
                    ++failures;
                }
                if (!ok && first_failure.empty()) {
                    first_failure = fmt(", first failure %s seed %d", std::string(kind_name(kind)).c_str(),
                                        static_cast<int>(seed));
                }
            } catch (const std::exception& e) {
                ++failures;
                if (first_failure.empty()) {
                    first_failure = fmt(", %s seed %d threw: %s", std::string(kind_name(kind)).c_str(),
                                        static_cast<int>(seed), e.what());
                }
            }
        }
    }
    const double elapsed = seconds_since(t0);
    return {failures == 0 && elapsed < 5.0,
            fmt("%d specs, %d failed%s, %.2f s", specs, failures, first_failure.c_str(), elapsed)};
}

Verdict formula_equivalence()
{
    double worst_k = 0.0;
    double worst_h = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const AffineTranslationSurface s = random_affine_surface(1000 + seed, ProfileStyle::Vocabulary);
        const GraphSurface graph = s.as_graph();
        for (const Point2 p : random_points(s.domain(), 100, 5000 + seed)) {
            const Curvatures closed = curvatures(s, p);
            const HeightPartials h = graph.partials(p, 2);
            const Curvatures hess = curvatures_from_hessian(h);
            // Relative to the operand size: the Hessian determinant cancels.
            const double kscale = std::max({1.0, std::fabs(h.zxx * h.zyy), h.zxy * h.zxy});
            const double hscale = std::max({1.0, std::fabs(h.zxx), std::fabs(h.zyy)});
            worst_k = std::max(worst_k, std::fabs(closed.K - hess.K) / kscale);
            worst_h = std::max(worst_h, std::fabs(closed.H - hess.H) / hscale);
        }
    }
    return {worst_k <= 1e-12 && worst_h <= 1e-12,
            fmt("10000 samples, max relative deviation K %.3g, H %.3g", worst_k, worst_h)};
}

Verdict operator_equivalence()
{
    double worst = 0.0;
    int samples = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const AffineTranslationSurface s = random_affine_surface(2000 + seed, ProfileStyle::Nondegenerate);
        const Surface graph = s.as_graph();
        for (const Point2 p : random_points(s.domain(), 50, 6000 + seed)) {
            for (const Coordinate c : {Coordinate::X, Coordinate::Y, Coordinate::Z}) {
                const double closed = laplacian_II_affine(s, c, p);
                const double general = laplacian_II_general(graph, c, p);
                const double rel =
                    std::fabs(closed - general) / std::max({1.0, std::fabs(closed), std::fabs(general)});
                worst = std::max(worst, rel);
                ++samples;
            }
        }
    }
    return {worst <= 1e-8, fmt("%d samples, max relative deviation %.3g", samples, worst)};
}

Verdict motion_invariance()
{
    const Family fam = example(FamilyKind::Example1);
    const GraphSurface graph = fam.surface.as_graph();
    double worst = 0.0;
    for (std::uint64_t m = 0; m < 50; ++m) {
        const IsotropicMotion motion = random_motion(3000 + m);
        const GraphSurface image = motion_image(graph, motion);
        for (const Point2 p : random_points(graph.domain(), 50, 7000 + m)) {
            const Curvatures before = curvatures(fam.surface, p);
            const Point3 q = apply_isotropic_motion(motion, {p.x, p.y, 0.0});
            const Curvatures after = curvatures(image, {q.x, q.y});
            worst = std::max({worst, std::fabs(before.K - after.K), std::fabs(before.H - after.H)});
        }
    }
    return {worst <= 1e-9, fmt("2500 samples, max deviation %.3g", worst)};
}

Verdict oracle_agreement()
{
    std::string detail;
    bool ok = true;
    for (const FamilyKind kind : {FamilyKind::Example1, FamilyKind::Example2, FamilyKind::Example3}) {
        const Family fam = example(kind);
        const VerificationReport r = ad_vs_fd_report(fam.surface, Grid(fam.surface.domain()));
        ok = ok && r.passed;
        detail += fmt("%s%s %.3g", detail.empty() ? "" : ", ", std::string(kind_name(kind)).c_str(),
                      r.maxResidual);
    }
    return {ok, "max relative deviation " + detail};
}

Verdict negative_controls()
{
    const Domain square = Domain::xy({-1.0, 1.0}, {-1.0, 1.0});
    const Surface perturbed = GraphSurface(parse("x^4 + y^4 + x^2*y"), square);
    const VerificationReport w = weingarten_residual(perturbed, Grid(square));

    const Surface quadric = GraphSurface(parse("x^2/2 + y^2/2"), square);
    const Grid grid(square);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        worst = std::max(worst, std::fabs(laplacian_II_general(quadric, Coordinate::Z, grid.point(k)) + 2.0));
    }
    return {w.maxResidual > 1e-3 && !w.passed && worst == 0.0,
            fmt("perturbed graph residual %.4g at (%.4g, %.4g); quadric max |Delta z + 2| = %.3g",
                w.maxResidual, w.argmaxPoint.x, w.argmaxPoint.y, worst)};
}

} // namespace

std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& progress)
{
    struct Entry {
        const char* name;
        Verdict (*run)();
    };
    static const std::array<Entry, 9> entries{{
        {"example 1: weingarten and linear weingarten (-4, -16)", &example1},
        {"example 2: first Laplacian eigenvalues (0, 0, -2)",
         [] { return eigen_example(FamilyKind::Example2, Laplacian::I, {0.0, 0.0, -2.0}, 1e-9); }},
        {"example 3: second Laplacian eigenvalues (1, 1, 0)",
         [] { return eigen_example(FamilyKind::Example3, Laplacian::II, {1.0, 1.0, 0.0}, 1e-8); }},
        {"family round-trip: 11 kinds x 100 seeds", &family_round_trip},
        {"curvature formula vs Hessian", &formula_equivalence},
        {"second Laplacian closed form vs general", &operator_equivalence},
        {"motion invariance on example 1", &motion_invariance},
        {"chain-rule partials vs finite differences", &oracle_agreement},
        {"negative controls", &negative_controls},
    }};

    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        CriterionResult r;
        r.id = static_cast<int>(i + 1);
        r.name = entries[i].name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Verdict v = entries[i].run();
            r.passed = v.passed;
            r.detail = v.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("threw: ") + e.what();
        }
        r.seconds = seconds_since(t0);
        if (progress) {
            progress(r);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_criterion(const CriterionResult& r)
{
    return fmt("%s  %2d  %s  (%s; %.3f s)", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
               r.detail.c_str(), r.seconds);
}

} // namespace isokit
