// isokit: curvature analysis and condition checks for affine translation
// surfaces in isotropic 3-space.
//
// Exit codes: 0 pass, 1 check failed, 2 spec or usage error, 3 evaluation
// error, 4 parabolic point (second Laplacian on K = 0).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "isokit/acceptance.hpp"
#include "isokit/spec_io.hpp"

namespace {

using namespace isokit;

enum Exit : int { kPass = 0, kFail = 1, kSpec = 2, kEval = 3, kParabolic = 4 };

struct GridFlag {
    int nx = kDefaultGridSize;
    int ny = kDefaultGridSize;
};

/// "NX,NY" or a single "N" for both.
GridFlag parse_grid(const std::string& text)
{
    GridFlag g;
    const auto comma = text.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            g.nx = g.ny = std::stoi(text, &used);
            if (used != text.size()) {
                throw std::invalid_argument(text);
            }
        } else {
            const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
            g.nx = std::stoi(a, &used);
            if (used != a.size()) {
                throw std::invalid_argument(a);
            }
            g.ny = std::stoi(b, &used);
            if (used != b.size()) {
                throw std::invalid_argument(b);
            }
        }
    } catch (const std::logic_error&) {
        throw SpecError("grid", "expected NX,NY, got '" + text + "'");
    }
    return g;
}

std::array<double, 3> parse_lambda(const std::vector<double>& values)
{
    if (values.size() != 3) {
        throw SpecError("lambda", "expected three values l1,l2,l3");
    }
    return {values[0], values[1], values[2]};
}

void write_output(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw SpecError("out", "cannot write " + path);
    }
    out << text;
}

/// Maps library errors to exit codes and prints them.
template <class F>
int guarded(F&& body)
{
    try {
        return body();
    } catch (const SpecError& e) {
        std::cerr << "isokit: spec error: " << e.what() << '\n';
        return kSpec;
    } catch (const ParseError& e) {
        std::cerr << "isokit: parse error at offset " << e.position() << ": " << e.detail() << '\n';
        return kSpec;
    } catch (const ParabolicPointError& e) {
        std::cerr << "isokit: " << e.what() << '\n';
        return kParabolic;
    } catch (const DomainError& e) {
        std::cerr << "isokit: evaluation error: " << e.what() << '\n';
        return kEval;
    } catch (const Error& e) {
        std::cerr << "isokit: " << e.what() << '\n';
        return kEval;
    }
}

struct CommonFlags {
    std::string spec;
    std::string grid = "33,33";
    std::string out;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_spec = true)
{
    if (with_spec) {
        cmd->add_option("spec", f.spec, "Surface spec file (JSON)")->required();
        cmd->add_option("--grid", f.grid, "Samples per axis, NX,NY")->capture_default_str();
    }
    cmd->add_option("--out", f.out, "Output path (default: standard output)");
    cmd->add_flag("--json", f.json, "Machine-readable output only");
}

int cmd_analyze(const CommonFlags& f)
{
    const LoadedSurface s = load_surface_file(f.spec);
    const GridFlag g = parse_grid(f.grid);
    const Grid grid(s.domain(), g.nx, g.ny);
    write_output(analyze_to_json(s, grid).dump(2) + "\n", f.out);
    return kPass;
}

struct CheckFlags {
    std::string condition;
    double tol = kDefaultTolerance;
    std::optional<double> m0, n0;
    std::vector<double> lambda;
};

int cmd_check(const CommonFlags& f, const CheckFlags& c, bool tol_given)
{
    const LoadedSurface s = load_surface_file(f.spec);
    const GridFlag g = parse_grid(f.grid);
    const Grid grid(s.domain(), g.nx, g.ny);

    std::string condition = c.condition;
    if (condition.empty()) {
        if (!s.family) {
            throw SpecError("condition", "required unless the spec file is a family");
        }
        condition = "certificate";
    }
    if (c.m0.has_value() != c.n0.has_value()) {
        throw SpecError(c.m0 ? "n0" : "m0", "--m0 and --n0 go together");
    }
    if ((c.m0 && condition != "linear-weingarten") ||
        (!c.lambda.empty() && condition != "eigen-i" && condition != "eigen-ii")) {
        throw SpecError("condition", "constants given that '" + condition + "' does not use");
    }

    std::vector<VerificationReport> reports;
    if (condition == "weingarten") {
        reports.push_back(weingarten_residual(s.surface, grid, c.tol));
    } else if (condition == "linear-weingarten") {
        reports.push_back(c.m0 ? linear_weingarten_check(s.surface, *c.m0, *c.n0, grid, c.tol)
                               : linear_weingarten_fit(s.surface, grid, c.tol));
    } else if (condition == "eigen-i" || condition == "eigen-ii") {
        const Laplacian which = condition == "eigen-i" ? Laplacian::I : Laplacian::II;
        reports.push_back(c.lambda.empty() ? eigen_estimate(s.surface, which, grid, c.tol)
                                           : eigen_check(s.surface, which, parse_lambda(c.lambda), grid, c.tol));
    } else if (condition == "certificate") {
        if (!s.family) {
            throw SpecError("condition", "certificate needs a family spec");
        }
        Certificate cert = s.family->certificate;
        if (tol_given) {
            cert.tolerance = c.tol;
        }
        reports = check_certificate(s.surface, cert, grid);
    } else {
        throw SpecError("condition", "unknown condition '" + condition +
                                         "' (weingarten, linear-weingarten, eigen-i, eigen-ii, certificate)");
    }

    const Json doc = check_to_json(condition, grid, reports);
    write_output(doc.dump(2) + "\n", f.out);
    const bool passed = doc["passed"].get<bool>();
    if (!f.json) {
        std::cerr << condition << ": " << (passed ? "pass" : "FAIL") << ", max residual "
                  << doc["maxResidual"].dump() << '\n';
    }
    return passed ? kPass : kFail;
}

struct FamilyFlags {
    std::string kind;
    std::map<std::string, std::optional<double>> constants;
    std::vector<double> coords;
    std::string profile;
    std::optional<std::uint64_t> seed;
};

int cmd_family(const CommonFlags& f, const FamilyFlags& ff)
{
    const auto kind = parse_kind(ff.kind);
    if (!kind) {
        std::string known;
        for (const FamilyKind k : all_kinds()) {
            known += (known.empty() ? "" : ", ") + std::string(kind_name(k));
        }
        throw SpecError("kind", "unknown family kind '" + ff.kind + "' (" + known + ")");
    }
    FamilySpec spec = ff.seed ? random_family(*kind, *ff.seed) : FamilySpec{};
    spec.kind = *kind;
    for (const auto& [name, value] : ff.constants) {
        if (value) {
            spec.constants[name] = *value;
        }
    }
    if (!ff.coords.empty()) {
        if (ff.coords.size() != 4) {
            throw SpecError("coords", "expected a,b,c,d");
        }
        if (std::fabs(ff.coords[0] * ff.coords[3] - ff.coords[1] * ff.coords[2]) <= kDeterminantTolerance) {
            throw SpecError("coords", "ad-bc = 0");
        }
        spec.coords = AffineCoords(ff.coords[0], ff.coords[1], ff.coords[2], ff.coords[3]);
    }
    if (!ff.profile.empty()) {
        if (!free_profile_variable(*kind)) {
            throw SpecError("profile", std::string(ff.kind) + " has no free profile");
        }
        try {
            spec.free_profile = parse(ff.profile);
        } catch (const ParseError& e) {
            throw SpecError("profile", "parse error at offset " + std::to_string(e.position()) + ": " + e.detail());
        }
    }

    // Validates every constraint before anything is written.
    const Family fam = build(spec);
    FamilySpec written = spec;
    written.coords = fam.spec.coords;
    written.domain.reset();
    write_output(family_spec_to_json(written).dump(2) + "\n", f.out);
    return kPass;
}

int cmd_mesh(const CommonFlags& f)
{
    const LoadedSurface s = load_surface_file(f.spec);
    const GridFlag g = parse_grid(f.grid);
    const Grid grid(s.domain(), g.nx, g.ny);
    write_output(mesh_csv(s.surface, grid), f.out);
    return kPass;
}

int cmd_selftest(const CommonFlags& f)
{
    const auto results = run_acceptance([&](const CriterionResult& r) {
        if (!f.json) {
            std::cout << format_criterion(r) << '\n' << std::flush;
        }
    });
    bool ok = true;
    Json doc = Json::array();
    for (const auto& r : results) {
        ok = ok && r.passed;
        doc.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                       {"seconds", r.seconds}});
        if (!r.passed) {
            std::cerr << "isokit: criterion " << r.id << " failed: " << r.name << '\n';
        }
    }
    if (f.json) {
        write_output(doc.dump(2) + "\n", f.out);
    } else {
        std::cout << (ok ? "all criteria passed" : "some criteria failed") << '\n';
    }
    return ok ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Isotropic curvature analysis and condition checks for affine translation surfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "isokit 1.0.0");

    CommonFlags analyze_flags, check_flags, family_flags, mesh_flags, selftest_flags;
    CheckFlags check;
    FamilyFlags family;

    auto* analyze = app.add_subcommand("analyze", "K and H ranges and fundamental-form samples as JSON");
    add_common(analyze, analyze_flags);

    auto* check_cmd = app.add_subcommand("check", "Verify a condition on the grid; exit 0 pass, 1 fail");
    add_common(check_cmd, check_flags);
    check_cmd->add_option("--condition", check.condition,
                          "weingarten | linear-weingarten | eigen-i | eigen-ii | certificate");
    auto* tol_opt = check_cmd->add_option("--tol", check.tol, "Base tolerance, scaled by 1 + max(|K|,|H|,|z|)")
                        ->capture_default_str();
    check_cmd->add_option("--m0", check.m0, "Linear Weingarten m0 (with --n0)");
    check_cmd->add_option("--n0", check.n0, "Linear Weingarten n0 (with --m0)");
    check_cmd->add_option("--lambda", check.lambda, "Eigenvalues l1,l2,l3")->delimiter(',')->expected(3);

    auto* family_cmd = app.add_subcommand("family", "Write the spec of a solution family");
    add_common(family_cmd, family_flags, false);
    family_cmd->add_option("kind", family.kind, "Family kind, e.g. thm3-trig")->required();
    for (const char* name : {"c1", "c2", "c3", "c4", "c5", "m0", "lambda", "lambda1", "lambda2", "mu"}) {
        family_cmd->add_option(std::string("--") + name, family.constants[name], std::string("Constant ") + name);
    }
    family_cmd->add_option("--coords", family.coords, "Affine coords a,b,c,d")->delimiter(',')->expected(4);
    family_cmd->add_option("--profile", family.profile, "Free profile of a semi-quadric kind");
    family_cmd->add_option("--seed", family.seed, "Draw unset constants at random from this seed");

    auto* mesh = app.add_subcommand("mesh", "Export x,y,z,K,H over the grid as CSV");
    add_common(mesh, mesh_flags);

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
    add_common(selftest, selftest_flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kSpec;
    }

    if (*analyze) {
        return guarded([&] { return cmd_analyze(analyze_flags); });
    }
    if (*check_cmd) {
        return guarded([&] { return cmd_check(check_flags, check, tol_opt->count() > 0); });
    }
    if (*family_cmd) {
        return guarded([&] { return cmd_family(family_flags, family); });
    }
    if (*mesh) {
        return guarded([&] { return cmd_mesh(mesh_flags); });
    }
    return guarded([&] { return cmd_selftest(selftest_flags); });
}
