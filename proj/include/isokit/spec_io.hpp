#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "isokit/families.hpp"
#include "isokit/verification.hpp"

namespace isokit {

using Json = nlohmann::ordered_json;

/// A surface read from a spec document. `family` is set for "type": "family".
struct LoadedSurface {
    Surface surface;
    std::optional<Family> family;

    [[nodiscard]] const Domain& domain() const noexcept { return domain_of(surface); }
};

/// Reads {"type": "affine" | "graph" | "family", ...}. Domain bounds may be
/// numbers or constant expressions in pi. Throws SpecError naming the field.
[[nodiscard]] LoadedSurface load_surface(const Json& spec);
/// Reads and parses a file; JSON syntax errors become SpecError("spec", ...).
[[nodiscard]] LoadedSurface load_surface_file(const std::filesystem::path& path);

[[nodiscard]] FamilySpec family_spec_from_json(const Json& spec);
[[nodiscard]] Json family_spec_to_json(const FamilySpec& spec);

[[nodiscard]] Json grid_to_json(const Grid& grid);
[[nodiscard]] Json report_to_json(const VerificationReport& r);
/// Top-level check document: the combined verdict plus each report.
[[nodiscard]] Json check_to_json(std::string_view condition, const Grid& grid,
                                 const std::vector<VerificationReport>& reports);
/// K and H ranges over the grid, plus fundamental forms at the corners and
/// the center.
[[nodiscard]] Json analyze_to_json(const LoadedSurface& s, const Grid& grid);

/// CSV "x,y,z,K,H", one row per grid point in row-major order, 17 significant
/// digits, LF line endings.
[[nodiscard]] std::string mesh_csv(const Surface& s, const Grid& grid);

} // namespace isokit
