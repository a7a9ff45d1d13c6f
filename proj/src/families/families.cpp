#include "isokit/families.hpp"
#include "isokit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isokit {

namespace {

using K = FamilyKind;

constexpr std::array<FamilyKind, 11> kTheoremKinds{
    K::Thm1Quadric,      K::Thm1SemiQuadricU, K::Thm1SemiQuadricV, K::Thm2Quadric,
    K::Thm2SemiQuadricU, K::Thm2SemiQuadricV, K::Thm3Harmonic,     K::Thm3ExpPositive,
    K::Thm3TrigNegative, K::Thm4AxisLog,      K::Thm4AffineLog,
};

constexpr std::array<FamilyKind, 14> kAllKinds{
    K::Thm1Quadric,      K::Thm1SemiQuadricU, K::Thm1SemiQuadricV, K::Thm2Quadric,
    K::Thm2SemiQuadricU, K::Thm2SemiQuadricV, K::Thm3Harmonic,     K::Thm3ExpPositive,
    K::Thm3TrigNegative, K::Thm4AxisLog,      K::Thm4AffineLog,    K::Example1,
    K::Example2,         K::Example3,
};

struct KindInfo {
    FamilyKind kind;
    std::string_view name;
    std::vector<std::string> accepted;
    std::vector<std::string> required;
};

const std::vector<KindInfo>& kind_table()
{
    static const std::vector<KindInfo> table{
        {K::Thm1Quadric, "thm1-quadric", {"c1", "c2", "c3", "c4"}, {"c1"}},
        {K::Thm1SemiQuadricU, "thm1-semi-quadric-u", {"c1", "c2", "c3"}, {}},
        {K::Thm1SemiQuadricV, "thm1-semi-quadric-v", {"c1", "c2", "c3"}, {}},
        {K::Thm2Quadric, "thm2-quadric", {"c1", "c2", "c3", "c4", "c5"}, {}},
        {K::Thm2SemiQuadricU, "thm2-semi-quadric-u", {"m0", "c1", "c2"}, {"m0"}},
        {K::Thm2SemiQuadricV, "thm2-semi-quadric-v", {"m0", "c1", "c2"}, {"m0"}},
        {K::Thm3Harmonic, "thm3-harmonic", {"c1", "c3", "c4", "c5"}, {}},
        {K::Thm3ExpPositive, "thm3-exp", {"lambda", "c1", "c2", "c3", "c4", "mu"}, {"lambda"}},
        {K::Thm3TrigNegative, "thm3-trig", {"lambda", "c1", "c2", "c3", "c4", "mu"}, {"lambda"}},
        {K::Thm4AxisLog, "thm4-axis-log", {"lambda1", "lambda2", "c1"}, {"lambda1", "lambda2"}},
        {K::Thm4AffineLog, "thm4-affine-log", {"lambda", "c1"}, {"lambda"}},
        {K::Example1, "example1", {}, {}},
        {K::Example2, "example2", {}, {}},
        {K::Example3, "example3", {}, {}},
    };
    return table;
}

const KindInfo& info(FamilyKind kind)
{
    for (const auto& entry : kind_table()) {
        if (entry.kind == kind) {
            return entry;
        }
    }
    throw std::logic_error("unknown family kind");
}

Expr num(double v) { return Expr::constant(v); }

double constant(const FamilySpec& spec, std::string_view name)
{
    const auto it = spec.constants.find(name);
    return it == spec.constants.end() ? 0.0 : it->second;
}

std::string field(std::string_view name) { return "constants." + std::string(name); }

void validate_constants(const FamilySpec& spec)
{
    const KindInfo& k = info(spec.kind);
    for (const auto& [name, value] : spec.constants) {
        if (std::find(k.accepted.begin(), k.accepted.end(), name) == k.accepted.end()) {
            throw SpecError(field(name), "not a constant of " + std::string(k.name));
        }
        if (!std::isfinite(value)) {
            throw SpecError(field(name), "must be finite");
        }
    }
    for (const auto& name : k.required) {
        if (!spec.constants.contains(name)) {
            throw SpecError(field(name), "required by " + std::string(k.name));
        }
    }
}

/// Range of l(x, y) = p x + q y over the domain.
Interval linear_range(const Domain& dom, double p, double q)
{
    double lo = INFINITY;
    double hi = -INFINITY;
    for (double s : {dom.first.lo, dom.first.hi}) {
        for (double t : {dom.second.lo, dom.second.hi}) {
            const Point2 xy = dom.map(s, t);
            const double value = p * xy.x + q * xy.y;
            lo = std::min(lo, value);
            hi = std::max(hi, value);
        }
    }
    return {lo, hi};
}

void require_third_derivative(const Expr& profile, const std::string& var, Interval range)
{
    const Expr d3 = differentiate(profile, var, 3);
    constexpr int kSamples = 65;
    for (int i = 0; i < kSamples; ++i) {
        const double t = range.lo + range.width() * i / (kSamples - 1);
        try {
            if (std::fabs(evaluate(d3, Env{{var, t}})) > 1e-8) {
                return;
            }
        } catch (const DomainError&) {
        }
    }
    throw SpecError("profile", "third derivative vanishes on the domain");
}

Expr free_profile(const FamilySpec& spec, const std::string& var, const Domain& dom)
{
    const Expr p = spec.free_profile ? *spec.free_profile : pow(Expr::variable(var), 3.0);
    for (const auto& name : free_variables(p)) {
        if (name != var) {
            throw SpecError("profile", "unexpected variable '" + name + "' (expected " + var + ")");
        }
    }
    const AffineCoords& k = spec.coords;
    const Interval range = var == "u" ? linear_range(dom, k.a(), k.b()) : linear_range(dom, k.c(), k.d());
    require_third_derivative(p, var, range);
    return p;
}

void require_positive(const Domain& dom, double p, double q, const std::string& name,
                      std::string_view kind)
{
    if (!(linear_range(dom, p, q).lo > 0.0)) {
        throw SpecError("domain", name + " must stay positive for " + std::string(kind));
    }
}

} // namespace

std::span<const FamilyKind> theorem_kinds() noexcept { return kTheoremKinds; }

std::span<const FamilyKind> all_kinds() noexcept { return kAllKinds; }

std::string_view kind_name(FamilyKind kind) noexcept
{
    for (const auto& entry : kind_table()) {
        if (entry.kind == kind) {
            return entry.name;
        }
    }
    return "?";
}

std::optional<FamilyKind> parse_kind(std::string_view name) noexcept
{
    for (const auto& entry : kind_table()) {
        if (entry.name == name) {
            return entry.kind;
        }
    }
    return std::nullopt;
}

std::vector<std::string> accepted_constants(FamilyKind kind) { return info(kind).accepted; }

std::vector<std::string> required_constants(FamilyKind kind) { return info(kind).required; }

std::optional<std::string> free_profile_variable(FamilyKind kind) noexcept
{
    switch (kind) {
    case K::Thm1SemiQuadricU:
    case K::Thm2SemiQuadricU: return "u";
    case K::Thm1SemiQuadricV:
    case K::Thm2SemiQuadricV: return "v";
    default: return std::nullopt;
    }
}

std::optional<AffineCoords> fixed_coords(FamilyKind kind)
{
    switch (kind) {
    case K::Thm4AxisLog: return AffineCoords::identity();
    case K::Example1: return AffineCoords(1, -1, 1, 1);
    case K::Example2: return AffineCoords(1, 1, 1, -1);
    case K::Example3: return AffineCoords(2, 1, 1, -1);
    default: return std::nullopt;
    }
}

std::string describe(const ExpectedClass& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, WeingartenClass>) {
                return "weingarten";
            } else if constexpr (std::is_same_v<T, LinearWeingartenClass>) {
                if (v.m0 && v.n0) {
                    return "linear-weingarten(m0=" + detail::number_text(*v.m0) +
                           ", n0=" + detail::number_text(*v.n0) + ")";
                }
                return "linear-weingarten(fitted)";
            } else {
                return std::string(v.which == Laplacian::I ? "eigen-i(" : "eigen-ii(") +
                       detail::number_text(v.lambda[0]) + ", " + detail::number_text(v.lambda[1]) +
                       ", " + detail::number_text(v.lambda[2]) + ")";
            }
        },
        c);
}

Domain default_domain(FamilyKind kind, const AffineCoords& coords)
{
    constexpr double pi = std::numbers::pi;
    switch (kind) {
    case K::Thm4AxisLog: return Domain::xy({0.5, 2.0}, {0.5, 2.0});
    case K::Thm4AffineLog: return Domain::over_uv({0.5, 2.0}, {0.5, 2.0}, coords);
    case K::Example1: return Domain::xy({-pi / 6, pi / 6}, {-pi / 6, pi / 6});
    case K::Example2: return Domain::xy({-pi, pi}, {-pi, pi});
    case K::Example3: return Domain::over_uv({3.0, 5.0}, {1.0, 2.0}, coords);
    default: return Domain::xy({-1.0, 1.0}, {-1.0, 1.0});
    }
}

Family build(const FamilySpec& input)
{
    validate_constants(input);
    if (input.free_profile && !free_profile_variable(input.kind)) {
        throw SpecError("profile", std::string(kind_name(input.kind)) + " takes no profile");
    }
    FamilySpec spec = input;
    if (const auto pinned = fixed_coords(spec.kind)) {
        if (input.coords != AffineCoords::identity() && input.coords != *pinned) {
            throw SpecError("coords", std::string(kind_name(spec.kind)) + " has fixed coords");
        }
        spec.coords = *pinned;
    }

    // A uv-domain is tied to the coords it was built with; rebuild it for ours.
    Domain dom = default_domain(spec.kind, spec.coords);
    if (spec.domain) {
        dom = spec.domain->is_uv() ? Domain::over_uv(spec.domain->first, spec.domain->second, spec.coords)
                                   : *spec.domain;
    }
    spec.domain = dom;

    const AffineCoords& k = spec.coords;
    const double A = k.u_norm();
    const double C = k.v_norm();
    const double D2 = k.det() * k.det();
    if (!(C > 0.0) || !(A > 0.0)) {
        throw SpecError("coords", "a^2 + b^2 and c^2 + d^2 must be positive");
    }

    const Expr u = Expr::variable("u");
    const Expr v = Expr::variable("v");
    const auto c = [&](const char* name) { return constant(spec, name); };
    const std::string_view name = kind_name(spec.kind);

    Expr f;
    Expr g;
    Certificate cert;
    switch (spec.kind) {
    case K::Thm1Quadric: {
        if (c("c1") == 0.0) {
            throw SpecError("constants.c1", "must be nonzero (c1 = 0 gives K = 0 everywhere)");
        }
        f = num(c("c1")) * pow(u, 2.0) + num(c("c2")) * u + num(c("c4"));
        g = num(c("c1") * A / C) * pow(v, 2.0) + num(c("c3")) * v;
        cert.expected = {WeingartenClass{}};
        break;
    }
    case K::Thm1SemiQuadricU:
        f = free_profile(spec, "u", dom);
        g = num(c("c1")) * pow(v, 2.0) + num(c("c2")) * v + num(c("c3"));
        cert.expected = {WeingartenClass{}};
        break;
    case K::Thm1SemiQuadricV:
        g = free_profile(spec, "v", dom);
        f = num(c("c1")) * pow(u, 2.0) + num(c("c2")) * u + num(c("c3"));
        cert.expected = {WeingartenClass{}};
        break;
    case K::Thm2Quadric:
        f = num(c("c1")) * pow(u, 2.0) + num(c("c3")) * u + num(c("c5"));
        g = num(c("c2")) * pow(v, 2.0) + num(c("c4")) * v;
        cert.expected = {LinearWeingartenClass{}};
        break;
    case K::Thm2SemiQuadricU:
    case K::Thm2SemiQuadricV: {
        const double m0 = c("m0");
        const double n0 = -m0 * m0 * A * C / D2;
        if (spec.kind == K::Thm2SemiQuadricU) {
            f = free_profile(spec, "u", dom);
            g = num(-m0 * A / (2.0 * D2)) * pow(v, 2.0) + num(c("c1")) * v + num(c("c2"));
        } else {
            g = free_profile(spec, "v", dom);
            f = num(-m0 * C / (2.0 * D2)) * pow(u, 2.0) + num(c("c1")) * u + num(c("c2"));
        }
        cert.expected = {LinearWeingartenClass{m0, n0}};
        break;
    }
    case K::Thm3Harmonic:
        f = num(c("c1")) * pow(u, 2.0) + num(c("c3")) * u + num(c("c5"));
        g = num(-c("c1") * A / C) * pow(v, 2.0) + num(c("c4")) * v;
        cert.expected = {EigenClass{Laplacian::I, {0.0, 0.0, 0.0}}};
        break;
    case K::Thm3ExpPositive:
    case K::Thm3TrigNegative: {
        const double lambda = c("lambda");
        const bool positive = spec.kind == K::Thm3ExpPositive;
        if (positive ? !(lambda > 0.0) : !(lambda < 0.0)) {
            throw SpecError("constants.lambda",
                            std::string("must be ") + (positive ? "positive" : "negative") +
                                " for " + std::string(name));
        }
        if (c("c1") == 0.0 && c("c2") == 0.0 && c("c3") == 0.0 && c("c4") == 0.0) {
            throw SpecError("constants", "c1..c4 all zero leaves z = 0");
        }
        const double ku = std::sqrt(std::fabs(lambda) / A);
        const double kv = std::sqrt(std::fabs(lambda) / C);
        const double shift = c("mu") / lambda;
        if (positive) {
            f = num(c("c1")) * exp(num(ku) * u) + num(c("c2")) * exp(num(-ku) * u) + num(shift);
            g = num(c("c3")) * exp(num(kv) * v) + num(c("c4")) * exp(num(-kv) * v) - num(shift);
        } else {
            f = num(c("c1")) * cos(num(ku) * u) + num(c("c2")) * sin(num(ku) * u) + num(shift);
            g = num(c("c3")) * cos(num(kv) * v) + num(c("c4")) * sin(num(kv) * v) - num(shift);
        }
        cert.expected = {EigenClass{Laplacian::I, {0.0, 0.0, lambda}}};
        break;
    }
    case K::Thm4AxisLog: {
        const double l1 = c("lambda1");
        const double l2 = c("lambda2");
        if (l1 == 0.0) {
            throw SpecError("constants.lambda1", "must be nonzero");
        }
        if (l2 == 0.0) {
            throw SpecError("constants.lambda2", "must be nonzero");
        }
        require_positive(dom, 1.0, 0.0, "x", name);
        require_positive(dom, 0.0, 1.0, "y", name);
        f = num(1.0 / l1) * ln(u) + num(c("c1"));
        g = num(1.0 / l2) * ln(v);
        cert.expected = {EigenClass{Laplacian::II, {l1, l2, 0.0}}};
        cert.tolerance = 1e-6;
        break;
    }
    case K::Thm4AffineLog: {
        const double lambda = c("lambda");
        if (lambda == 0.0) {
            throw SpecError("constants.lambda", "must be nonzero");
        }
        require_positive(dom, k.a(), k.b(), "u", name);
        require_positive(dom, k.c(), k.d(), "v", name);
        f = num(1.0 / lambda) * ln(u) + num(c("c1"));
        g = num(1.0 / lambda) * ln(v);
        cert.expected = {EigenClass{Laplacian::II, {lambda, lambda, 0.0}}};
        cert.tolerance = 1e-6;
        break;
    }
    case K::Example1:
        f = cos(u);
        g = pow(v, 2.0);
        cert.expected = {WeingartenClass{}, LinearWeingartenClass{-4.0, -16.0}};
        break;
    case K::Example2:
        f = cos(u);
        g = sin(v);
        cert.expected = {EigenClass{Laplacian::I, {0.0, 0.0, -2.0}}};
        break;
    case K::Example3:
        f = ln(u);
        g = ln(v);
        cert.expected = {EigenClass{Laplacian::II, {1.0, 1.0, 0.0}}};
        break;
    }

    AffineTranslationSurface surface(simplify(f), simplify(g), spec.coords, dom);
    return Family{std::move(spec), std::move(surface), std::move(cert)};
}

namespace {

Expr random_profile(Sampler& draw, const std::string& var)
{
    const Expr t = Expr::variable(var);
    const double p = draw.sign() * draw.range(0.5, 2.0);
    const double q = draw.range(0.2, 0.6);
    switch (draw.index(4)) {
    case 0: return num(p) * pow(t, 3.0);
    case 1: return num(p) * sin(num(q) * t);
    case 2: return num(p) * exp(num(q) * t);
    default: return num(p) * cos(num(q) * t) + num(q) * pow(t, 3.0);
    }
}

} // namespace

FamilySpec random_family(FamilyKind kind, std::uint64_t seed)
{
    Sampler draw(seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(kind));
    FamilySpec spec;
    spec.kind = kind;
    if (takes_coords(kind)) {
        spec.coords = draw.coords();
    }
    for (const auto& name : accepted_constants(kind)) {
        if (name.starts_with("lambda")) {
            const double s = kind == K::Thm3ExpPositive    ? 1.0
                             : kind == K::Thm3TrigNegative ? -1.0
                                                           : draw.sign();
            spec.constants[name] = s * draw.range(0.25, 4.0);
        } else {
            spec.constants[name] = draw.range(-2.0, 2.0);
        }
    }
    if (kind == K::Thm1Quadric) {
        while (std::fabs(spec.constants["c1"]) < 0.1) {
            spec.constants["c1"] = draw.range(-2.0, 2.0);
        }
    }
    if (const auto var = free_profile_variable(kind)) {
        spec.free_profile = random_profile(draw, *var);
    }
    return spec;
}

} // namespace isokit
