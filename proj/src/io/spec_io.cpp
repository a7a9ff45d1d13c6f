#include "isokit/spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace isokit {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message)
{
    throw SpecError(field, message);
}

const Json* find(const Json& obj, std::string_view key)
{
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

std::string string_field(const Json& obj, const std::string& key)
{
    const Json* v = find(obj, key);
    if (!v) {
        fail(key, "required");
    }
    if (!v->is_string()) {
        fail(key, "expected a string");
    }
    return v->get<std::string>();
}

Expr expression_field(const Json& obj, const std::string& key)
{
    const std::string text = string_field(obj, key);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        fail(key, "parse error at offset " + std::to_string(e.position()) + ": " + e.detail());
    }
}

/// A number, or a string holding a constant expression in pi.
double bound(const Json& v, const std::string& field)
{
    if (v.is_number()) {
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            fail(field, "must be finite");
        }
        return d;
    }
    if (!v.is_string()) {
        fail(field, "expected a number or a constant expression");
    }
    try {
        const Expr e = parse(v.get<std::string>());
        for (const auto& name : free_variables(e)) {
            if (name != "pi") {
                fail(field, "unknown constant '" + name + "'");
            }
        }
        return evaluate(e, Env{{"pi", std::numbers::pi}});
    } catch (const ParseError& e) {
        fail(field, "parse error at offset " + std::to_string(e.position()) + ": " + e.detail());
    } catch (const DomainError& e) {
        fail(field, e.detail());
    }
}

Interval interval(const Json& obj, const std::string& key, const std::string& prefix)
{
    const std::string field = prefix + "." + key;
    const Json* v = find(obj, key);
    if (!v) {
        fail(field, "required");
    }
    if (!v->is_array() || v->size() != 2) {
        fail(field, "expected [lo, hi]");
    }
    return {bound((*v)[0], field + "[0]"), bound((*v)[1], field + "[1]")};
}

void reject_unknown(const Json& obj, const std::string& prefix, std::initializer_list<std::string_view> keys)
{
    for (const auto& [key, value] : obj.items()) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            fail(prefix.empty() ? key : prefix + "." + key, "unknown key");
        }
    }
}

std::optional<AffineCoords> coords_field(const Json& spec)
{
    const Json* v = find(spec, "coords");
    if (!v) {
        return std::nullopt;
    }
    if (!v->is_array() || v->size() != 4) {
        fail("coords", "expected [a, b, c, d]");
    }
    std::array<double, 4> k{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!(*v)[i].is_number()) {
            fail("coords", "expected [a, b, c, d]");
        }
        k[i] = (*v)[i].get<double>();
    }
    const double det = k[0] * k[3] - k[1] * k[2];
    if (!(std::fabs(det) > kDeterminantTolerance)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "ad-bc = 0 (got %g)", det);
        fail("coords", buf);
    }
    return AffineCoords(k[0], k[1], k[2], k[3]);
}

/// "domain": {"x": [..], "y": [..]} or "domainUV": {"u": [..], "v": [..]}.
std::optional<Domain> domain_field(const Json& spec, const std::optional<AffineCoords>& coords)
{
    const Json* xy = find(spec, "domain");
    const Json* uv = find(spec, "domainUV");
    if (xy && uv) {
        fail("domainUV", "give either domain or domainUV, not both");
    }
    if (xy) {
        if (!xy->is_object()) {
            fail("domain", "expected {\"x\": [lo, hi], \"y\": [lo, hi]}");
        }
        reject_unknown(*xy, "domain", {"x", "y"});
        return Domain::xy(interval(*xy, "x", "domain"), interval(*xy, "y", "domain"));
    }
    if (uv) {
        if (!uv->is_object()) {
            fail("domainUV", "expected {\"u\": [lo, hi], \"v\": [lo, hi]}");
        }
        if (!coords) {
            fail("domainUV", "needs coords");
        }
        reject_unknown(*uv, "domainUV", {"u", "v"});
        return Domain::over_uv(interval(*uv, "u", "domainUV"), interval(*uv, "v", "domainUV"), *coords);
    }
    return std::nullopt;
}

Domain default_square() { return Domain::xy({-1.0, 1.0}, {-1.0, 1.0}); }

Json point_json(Point2 p) { return Json::array({p.x, p.y}); }

/// NaN and infinities have no JSON spelling; they are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

} // namespace

FamilySpec family_spec_from_json(const Json& spec)
{
    reject_unknown(spec, "", {"type", "kind", "constants", "coords", "profile", "domain", "domainUV", "name",
                              "description"});
    const std::string kind_text = string_field(spec, "kind");
    const auto kind = parse_kind(kind_text);
    if (!kind) {
        fail("kind", "unknown family kind '" + kind_text + "'");
    }
    FamilySpec out;
    out.kind = *kind;
    if (const Json* c = find(spec, "constants")) {
        if (!c->is_object()) {
            fail("constants", "expected an object of numbers");
        }
        for (const auto& [name, value] : c->items()) {
            if (!value.is_number()) {
                fail("constants." + name, "expected a number");
            }
            out.constants[name] = value.get<double>();
        }
    }
    const std::optional<AffineCoords> coords = coords_field(spec);
    const std::optional<AffineCoords> pinned = fixed_coords(out.kind);
    if (coords && pinned && *coords != *pinned) {
        fail("coords", std::string(kind_name(out.kind)) + " has fixed coords");
    }
    if (pinned) {
        out.coords = *pinned;
    } else if (coords) {
        out.coords = *coords;
    }
    if (find(spec, "profile")) {
        if (!free_profile_variable(out.kind)) {
            fail("profile", std::string(kind_name(out.kind)) + " has no free profile");
        }
        out.free_profile = expression_field(spec, "profile");
    }
    out.domain = domain_field(spec, out.coords);
    return out;
}

Json family_spec_to_json(const FamilySpec& spec)
{
    Json out;
    out["type"] = "family";
    out["kind"] = kind_name(spec.kind);
    Json constants = Json::object();
    for (const auto& [name, value] : spec.constants) {
        constants[name] = value;
    }
    out["constants"] = constants;
    if (takes_coords(spec.kind)) {
        out["coords"] = Json::array({spec.coords.a(), spec.coords.b(), spec.coords.c(), spec.coords.d()});
    }
    if (spec.free_profile) {
        out["profile"] = to_string(*spec.free_profile);
    }
    if (spec.domain) {
        const Domain& d = *spec.domain;
        if (d.is_uv()) {
            out["domainUV"] = {{"u", {d.first.lo, d.first.hi}}, {"v", {d.second.lo, d.second.hi}}};
        } else {
            out["domain"] = {{"x", {d.first.lo, d.first.hi}}, {"y", {d.second.lo, d.second.hi}}};
        }
    }
    return out;
}

LoadedSurface load_surface(const Json& spec)
{
    if (!spec.is_object()) {
        fail("spec", "expected a JSON object");
    }
    const std::string type = string_field(spec, "type");
    if (type == "affine") {
        reject_unknown(spec, "", {"type", "f", "g", "coords", "domain", "domainUV", "name", "description"});
        const Expr f = expression_field(spec, "f");
        const Expr g = expression_field(spec, "g");
        const std::optional<AffineCoords> coords = coords_field(spec);
        if (!coords) {
            fail("coords", "required");
        }
        const Domain dom = domain_field(spec, coords).value_or(default_square());
        for (const auto& [key, expr, var] : {std::tuple{"f", f, "u"}, std::tuple{"g", g, "v"}}) {
            for (const auto& name : free_variables(expr)) {
                if (name != var) {
                    fail(key, "unexpected variable '" + name + "' (expected " + var + ")");
                }
            }
        }
        return {AffineTranslationSurface(f, g, *coords, dom), std::nullopt};
    }
    if (type == "graph") {
        reject_unknown(spec, "", {"type", "z", "domain", "name", "description"});
        const Expr z = expression_field(spec, "z");
        for (const auto& name : free_variables(z)) {
            if (name != "x" && name != "y") {
                fail("z", "unexpected variable '" + name + "' (expected x, y)");
            }
        }
        const Domain dom = domain_field(spec, std::nullopt).value_or(default_square());
        return {GraphSurface(z, dom), std::nullopt};
    }
    if (type == "family") {
        Family fam = build(family_spec_from_json(spec));
        Surface s = fam.surface;
        return {std::move(s), std::move(fam)};
    }
    fail("type", "expected \"affine\", \"graph\" or \"family\", got \"" + type + "\"");
}

LoadedSurface load_surface_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail("spec", "cannot open " + path.string());
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail("spec", std::string("invalid JSON: ") + e.what());
    }
    return load_surface(doc);
}

Json grid_to_json(const Grid& grid)
{
    const Domain& d = grid.domain();
    Json out;
    out["nx"] = grid.nx();
    out["ny"] = grid.ny();
    if (d.is_uv()) {
        const AffineCoords& k = *d.uv;
        out["parameters"] = "uv";
        out["u"] = {d.first.lo, d.first.hi};
        out["v"] = {d.second.lo, d.second.hi};
        out["coords"] = {k.a(), k.b(), k.c(), k.d()};
    } else {
        out["parameters"] = "xy";
        out["x"] = {d.first.lo, d.first.hi};
        out["y"] = {d.second.lo, d.second.hi};
    }
    return out;
}

Json report_to_json(const VerificationReport& r)
{
    Json fitted = Json::object();
    for (const auto& [name, value] : r.fitted) {
        fitted[name] = number(value);
    }
    Json out;
    out["check"] = r.check;
    out["passed"] = r.passed;
    out["maxResidual"] = number(r.maxResidual);
    out["argmaxPoint"] = point_json(r.argmaxPoint);
    out["tolerance"] = r.tolerance;
    out["baseTolerance"] = r.baseTolerance;
    out["scale"] = r.scale;
    out["fitted"] = fitted;
    out["rankDeficient"] = r.rankDeficient;
    out["notes"] = r.notes;
    return out;
}

Json check_to_json(std::string_view condition, const Grid& grid,
                   const std::vector<VerificationReport>& reports)
{
    bool passed = !reports.empty();
    double worst = -1.0;
    Point2 where;
    Json fitted = Json::object();
    Json list = Json::array();
    for (const auto& r : reports) {
        passed = passed && r.passed;
        if (r.maxResidual > worst || std::isnan(r.maxResidual)) {
            worst = std::isnan(r.maxResidual) ? INFINITY : r.maxResidual;
            where = r.argmaxPoint;
        }
        for (const auto& [name, value] : r.fitted) {
            fitted[name] = number(value);
        }
        list.push_back(report_to_json(r));
    }
    Json out;
    out["command"] = "check";
    out["condition"] = condition;
    out["passed"] = passed;
    out["grid"] = grid_to_json(grid);
    out["maxResidual"] = number(worst);
    out["argmaxPoint"] = point_json(where);
    out["fitted"] = fitted;
    out["reports"] = list;
    return out;
}

namespace {

Json surface_json(const LoadedSurface& s)
{
    Json out;
    if (s.family) {
        out["type"] = "family";
        out["kind"] = kind_name(s.family->spec.kind);
        Json cert = Json::array();
        for (const auto& c : s.family->certificate.expected) {
            cert.push_back(describe(c));
        }
        out["certificate"] = cert;
    } else {
        out["type"] = std::holds_alternative<GraphSurface>(s.surface) ? "graph" : "affine";
    }
    if (const auto* a = std::get_if<AffineTranslationSurface>(&s.surface)) {
        const AffineCoords& k = a->coords();
        out["f"] = to_string(a->f());
        out["g"] = to_string(a->g());
        out["coords"] = {k.a(), k.b(), k.c(), k.d()};
    }
    out["z"] = to_string(height_expr(s.surface));
    return out;
}

Json forms_json(const Surface& s, Point2 p)
{
    const FundamentalForms ff = fundamental_forms(s, p);
    const Curvatures kh = curvatures(s, p);
    Json out;
    out["point"] = point_json(p);
    out["z"] = height_partials(s, p, 0).z;
    out["E"] = ff.E;
    out["F"] = ff.F;
    out["G"] = ff.G;
    out["L"] = ff.L;
    out["M"] = ff.M;
    out["N"] = ff.N;
    out["W"] = ff.W;
    out["w"] = ff.w;
    out["K"] = kh.K;
    out["H"] = kh.H;
    return out;
}

struct Range {
    double min = INFINITY, max = -INFINITY;
    Point2 argmin, argmax;

    void add(double v, Point2 p)
    {
        if (v < min) {
            min = v;
            argmin = p;
        }
        if (v > max) {
            max = v;
            argmax = p;
        }
    }

    [[nodiscard]] Json json() const
    {
        return {{"min", min}, {"max", max}, {"argmin", point_json(argmin)}, {"argmax", point_json(argmax)}};
    }
};

} // namespace

Json analyze_to_json(const LoadedSurface& s, const Grid& grid)
{
    std::vector<Curvatures> kh(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) { kh[k] = curvatures(s.surface, grid.point(k)); });
    Range K, H;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        K.add(kh[k].K, grid.point(k));
        H.add(kh[k].H, grid.point(k));
    }

    const int nx = grid.nx(), ny = grid.ny();
    Json samples = Json::array();
    for (const auto& [i, j] : {std::pair{0, 0}, std::pair{nx - 1, 0}, std::pair{0, ny - 1},
                               std::pair{nx - 1, ny - 1}, std::pair{nx / 2, ny / 2}}) {
        samples.push_back(forms_json(s.surface, grid.point(i, j)));
    }

    Json out;
    out["command"] = "analyze";
    out["surface"] = surface_json(s);
    out["grid"] = grid_to_json(grid);
    out["K"] = K.json();
    out["H"] = H.json();
    out["samples"] = samples;
    return out;
}

std::string mesh_csv(const Surface& s, const Grid& grid)
{
    struct Row {
        Point2 p;
        double z, K, H;
    };
    std::vector<Row> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) {
        const Point2 p = grid.point(k);
        const Curvatures c = curvatures(s, p);
        rows[k] = {p, height_partials(s, p, 0).z, c.K, c.H};
    });

    std::string out = "x,y,z,K,H\n";
    out.reserve(rows.size() * 120);
    char buf[160];
    for (const Row& r : rows) {
        // Adding +0.0 maps -0 to 0 so signed zeros never reach the file.
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.p.x + 0.0, r.p.y + 0.0, r.z + 0.0,
                      r.K + 0.0, r.H + 0.0);
        out += buf;
    }
    return out;
}

} // namespace isokit
