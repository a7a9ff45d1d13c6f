#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "isokit/sampling.hpp"
#include "isokit/spec_io.hpp"

namespace isokit {
namespace {

constexpr double pi = std::numbers::pi;

Json doc(const char* text) { return Json::parse(text); }

void expect_field(const char* text, const std::string& field)
{
    try {
        (void)load_surface(doc(text));
        FAIL() << "expected SpecError on " << field;
    } catch (const SpecError& e) {
        EXPECT_EQ(e.field(), field) << e.what();
    }
}

TEST(LoadSurface, Affine)
{
    const LoadedSurface s = load_surface(doc(R"j({
        "type": "affine", "f": "cos(u)", "g": "v^2", "coords": [1, -1, 1, 1],
        "domain": {"x": ["-pi/6", "pi/6"], "y": [-0.5, 0.5]}
    })j"));
    ASSERT_TRUE(std::holds_alternative<AffineTranslationSurface>(s.surface));
    EXPECT_FALSE(s.family);
    EXPECT_DOUBLE_EQ(s.domain().first.hi, pi / 6);
    EXPECT_EQ(s.domain().second.lo, -0.5);
    EXPECT_DOUBLE_EQ(curvatures(s.surface, {0, 0}).K, -8.0);
}

TEST(LoadSurface, AffineOverUv)
{
    const LoadedSurface s = load_surface(doc(R"j({
        "type": "affine", "f": "ln(u)", "g": "ln(v)", "coords": [2, 1, 1, -1],
        "domainUV": {"u": [3, 5], "v": [1, 2]}
    })j"));
    ASSERT_TRUE(s.domain().is_uv());
    EXPECT_EQ(*s.domain().uv, AffineCoords(2, 1, 1, -1));
}

TEST(LoadSurface, GraphWithDefaultDomain)
{
    const LoadedSurface s = load_surface(doc(R"j({"type": "graph", "z": "x^2 + y^2", "name": "bowl"})j"));
    ASSERT_TRUE(std::holds_alternative<GraphSurface>(s.surface));
    EXPECT_EQ(s.domain().first.lo, -1.0);
    EXPECT_EQ(s.domain().second.hi, 1.0);
}

TEST(LoadSurface, Family)
{
    const LoadedSurface s = load_surface(doc(R"j({
        "type": "family", "kind": "thm3-trig",
        "constants": {"lambda": -2, "c1": 1, "c4": 1}, "coords": [1, 1, 1, -1]
    })j"));
    ASSERT_TRUE(s.family);
    EXPECT_EQ(s.family->spec.kind, FamilyKind::Thm3TrigNegative);
    EXPECT_NEAR(evaluate(height_expr(s.surface), {{"x", 0.0}, {"y", 0.0}}), 1.0, 1e-15);
}

TEST(LoadSurface, ExampleFamiliesNeedNoCoords)
{
    const LoadedSurface s = load_surface(doc(R"j({"type": "family", "kind": "example3"})j"));
    ASSERT_TRUE(s.domain().is_uv());
    EXPECT_EQ(s.domain().first.lo, 3.0);
}

TEST(LoadSurfaceErrors, NameTheField)
{
    expect_field(R"j([1, 2])j", "spec");
    expect_field(R"j({"f": "u"})j", "type");
    expect_field(R"j({"type": "torus"})j", "type");
    expect_field(R"j({"type": "affine", "f": "u", "g": "v"})j", "coords");
    expect_field(R"j({"type": "affine", "f": "u", "g": "v", "coords": [1, 1, 1, 1]})j", "coords");
    expect_field(R"j({"type": "affine", "f": "u", "g": "v", "coords": [1, 0, 0]})j", "coords");
    expect_field(R"j({"type": "affine", "f": "u +", "g": "v", "coords": [1, 0, 0, 1]})j", "f");
    expect_field(R"j({"type": "affine", "f": "u", "g": "u", "coords": [1, 0, 0, 1]})j", "g");
    expect_field(R"j({"type": "affine", "f": 3, "g": "v", "coords": [1, 0, 0, 1]})j", "f");
    expect_field(R"j({"type": "graph", "z": "x + t"})j", "z");
    expect_field(R"j({"type": "graph", "z": "x", "colour": "red"})j", "colour");
    expect_field(R"j({"type": "graph", "z": "x", "domain": {"x": [0, 1]}})j", "domain.y");
    expect_field(R"j({"type": "graph", "z": "x", "domain": {"x": [0, "e"], "y": [0, 1]}})j",
                 "domain.x[1]");
    expect_field(R"j({"type": "graph", "z": "x", "domain": {"x": [1, 0], "y": [0, 1]}})j", "domain.x");
    expect_field(R"j({"type": "graph", "z": "x", "domainUV": {"u": [0, 1], "v": [0, 1]}})j",
                 "domainUV");
    expect_field(R"j({"type": "family", "kind": "thm9"})j", "kind");
    expect_field(R"j({"type": "family", "kind": "thm4-affine-log", "constants": {"lambda": 0}})j",
                 "constants.lambda");
    expect_field(R"j({"type": "family", "kind": "thm1-quadric", "constants": {"c1": "one"}})j",
                 "constants.c1");
    expect_field(R"j({"type": "family", "kind": "example1", "coords": [2, 0, 0, 1]})j", "coords");
    expect_field(R"j({"type": "family", "kind": "thm3-harmonic", "profile": "u^3"})j", "profile");
}

TEST(LoadSurfaceErrors, SingularCoordsMessage)
{
    try {
        (void)load_surface(doc(R"j({"type": "affine", "f": "u", "g": "v", "coords": [1, 1, 1, 1]})j"));
        FAIL();
    } catch (const SpecError& e) {
        EXPECT_NE(std::string(e.what()).find("ad-bc = 0"), std::string::npos) << e.what();
    }
}

TEST(LoadSurfaceFile, InvalidJson)
{
    const auto path = std::filesystem::temp_directory_path() / "isokit_invalid.json";
    std::ofstream(path) << "{\"type\": ";
    try {
        (void)load_surface_file(path);
        FAIL();
    } catch (const SpecError& e) {
        EXPECT_EQ(e.field(), "spec");
    }
    std::filesystem::remove(path);
    EXPECT_THROW((void)load_surface_file(path), SpecError);
}

TEST(FamilySpecJson, RoundTripRandomSpecs)
{
    for (const FamilyKind kind : all_kinds()) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            FamilySpec spec = random_family(kind, seed);
            if (free_profile_variable(kind) && seed % 2 == 0) {
                spec.free_profile = parse(*free_profile_variable(kind) + "^3 - 2*" +
                                          *free_profile_variable(kind));
            }
            const Json j = family_spec_to_json(spec);
            const FamilySpec back = family_spec_from_json(Json::parse(j.dump()));
            EXPECT_EQ(back.kind, spec.kind);
            EXPECT_EQ(back.constants, spec.constants);
            EXPECT_EQ(back.coords, fixed_coords(kind).value_or(spec.coords));
            EXPECT_EQ(back.free_profile.has_value(), spec.free_profile.has_value());
            if (spec.free_profile) {
                // Negative constants come back as negations, so compare text and values.
                const std::string var = *free_profile_variable(kind);
                EXPECT_EQ(to_string(*back.free_profile), to_string(*spec.free_profile));
                EXPECT_EQ(evaluate(*back.free_profile, {{var, 0.3}}),
                          evaluate(*spec.free_profile, {{var, 0.3}}));
            }
        }
    }
}

TEST(FamilySpecJson, DomainRoundTrip)
{
    FamilySpec spec{.kind = FamilyKind::Thm4AffineLog,
                    .constants = {{"lambda", 2.0}},
                    .coords = AffineCoords(2, 1, 1, -1),
                    .domain = Domain::over_uv({1, 3}, {0.75, 1.5}, AffineCoords(2, 1, 1, -1))};
    const Json j = family_spec_to_json(spec);
    EXPECT_EQ(j["domainUV"]["u"], Json::parse("[1.0, 3.0]"));
    const FamilySpec back = family_spec_from_json(j);
    ASSERT_TRUE(back.domain && back.domain->is_uv());
    EXPECT_EQ(back.domain->second.lo, 0.75);
}

TEST(GridJson, Shapes)
{
    const Json xy = grid_to_json(Grid(Domain::xy({0, 1}, {2, 3}), 4, 5));
    EXPECT_EQ(xy["nx"], 4);
    EXPECT_EQ(xy["ny"], 5);
    EXPECT_EQ(xy["parameters"], "xy");
    EXPECT_EQ(xy["y"], Json::parse("[2.0, 3.0]"));
    const Json uv = grid_to_json(Grid(Domain::over_uv({3, 5}, {1, 2}, AffineCoords(2, 1, 1, -1))));
    EXPECT_EQ(uv["parameters"], "uv");
    EXPECT_EQ(uv["coords"], Json::parse("[2.0, 1.0, 1.0, -1.0]"));
}

TEST(ReportJson, Fields)
{
    VerificationReport r;
    r.check = "eigen-ii";
    r.maxResidual = NAN;
    r.argmaxPoint = {0.5, -1};
    r.fitted = {{"lambda1", 1.0}, {"lambda3", NAN}};
    r.tolerance = 2e-8;
    r.baseTolerance = 1e-8;
    r.scale = 2.0;
    r.notes = {"n"};
    const Json j = report_to_json(r);
    EXPECT_TRUE(j["maxResidual"].is_null());
    EXPECT_TRUE(j["fitted"]["lambda3"].is_null());
    EXPECT_EQ(j["fitted"]["lambda1"], 1.0);
    EXPECT_EQ(j["argmaxPoint"], Json::parse("[0.5, -1.0]"));
    EXPECT_EQ(j["passed"], false);
    EXPECT_EQ(j["notes"][0], "n");
}

TEST(CheckJson, CombinedVerdict)
{
    const Family fam = build({.kind = FamilyKind::Example1});
    const Surface s = fam.surface;
    const Grid grid(domain_of(s));
    auto reports = check_certificate(s, fam.certificate, grid);
    const Json ok = check_to_json("certificate", grid, reports);
    EXPECT_EQ(ok["command"], "check");
    EXPECT_EQ(ok["condition"], "certificate");
    EXPECT_EQ(ok["passed"], true);
    EXPECT_EQ(ok["reports"].size(), 2u);
    EXPECT_EQ(ok["fitted"]["n0"], -16.0);

    reports.push_back(linear_weingarten_check(s, -4, -15, grid));
    const Json bad = check_to_json("certificate", grid, reports);
    EXPECT_EQ(bad["passed"], false);
    EXPECT_NEAR(bad["maxResidual"].get<double>(), 1.0, 1e-12);
}

TEST(AnalyzeJson, Example1Ranges)
{
    const LoadedSurface s = load_surface(doc(R"j({"type": "family", "kind": "example1"})j"));
    const Json j = analyze_to_json(s, Grid(s.domain()));
    EXPECT_EQ(j["command"], "analyze");
    EXPECT_NEAR(j["K"]["min"].get<double>(), -8.0, 1e-12);
    EXPECT_NEAR(j["K"]["max"].get<double>(), -4.0, 1e-12);
    EXPECT_EQ(j["samples"].size(), 5u);
    EXPECT_EQ(j["surface"]["kind"], "example1");
}

TEST(AnalyzeJson, PlaneIsFlat)
{
    const LoadedSurface s =
        load_surface(doc(R"j({"type": "affine", "f": "u", "g": "v", "coords": [1, 2, 3, 4]})j"));
    const Json j = analyze_to_json(s, Grid(s.domain(), 5, 5));
    EXPECT_EQ(j["K"]["min"], 0.0);
    EXPECT_EQ(j["K"]["max"], 0.0);
    EXPECT_EQ(j["H"]["min"], 0.0);
    EXPECT_EQ(j["H"]["max"], 0.0);
}

TEST(MeshCsv, Layout)
{
    const LoadedSurface s = load_surface(doc(R"j({"type": "family", "kind": "example3"})j"));
    const Grid grid(s.domain(), 3, 2);
    const std::string csv = mesh_csv(s.surface, grid);
    std::istringstream in(csv);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    ASSERT_EQ(lines.size(), 7u);
    EXPECT_EQ(lines[0], "x,y,z,K,H");
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_EQ(csv.back(), '\n');
    // (u, v) = (5, 1) is (x, y) = (2, 1), z = ln 5
    EXPECT_EQ(lines[3].substr(0, 4), "2,1,");
    EXPECT_NE(lines[3].find("1.6094379124341003"), std::string::npos) << lines[3];
}

TEST(MeshCsv, RoundTripsValues)
{
    const Surface s = random_affine_surface(3, ProfileStyle::Vocabulary);
    const Grid grid(domain_of(s), 7, 6);
    std::istringstream in(mesh_csv(s, grid));
    std::string line;
    std::getline(in, line);
    std::size_t k = 0;
    while (std::getline(in, line)) {
        std::array<double, 5> v{};
        ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3], &v[4]), 5);
        const Point2 p = grid.point(k);
        const Curvatures c = curvatures(s, p);
        EXPECT_EQ(v[0], p.x);
        EXPECT_EQ(v[1], p.y);
        EXPECT_EQ(v[3], c.K);
        EXPECT_EQ(v[4], c.H);
        ++k;
    }
    EXPECT_EQ(k, grid.size());
}

} // namespace
} // namespace isokit
