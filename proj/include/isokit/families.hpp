#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "isokit/geometry.hpp"

namespace isokit {

enum class FamilyKind {
    Thm1Quadric,
    Thm1SemiQuadricU,
    Thm1SemiQuadricV,
    Thm2Quadric,
    Thm2SemiQuadricU,
    Thm2SemiQuadricV,
    Thm3Harmonic,
    Thm3ExpPositive,
    Thm3TrigNegative,
    Thm4AxisLog,
    Thm4AffineLog,
    Example1,
    Example2,
    Example3,
};

/// The eleven kinds that come from the classification theorems.
[[nodiscard]] std::span<const FamilyKind> theorem_kinds() noexcept;
[[nodiscard]] std::span<const FamilyKind> all_kinds() noexcept;

/// Command-line spelling, e.g. "thm3-trig".
[[nodiscard]] std::string_view kind_name(FamilyKind kind) noexcept;
[[nodiscard]] std::optional<FamilyKind> parse_kind(std::string_view name) noexcept;

/// Constant names accepted by a kind, and the subset that must be given.
/// Others default to 0.
[[nodiscard]] std::vector<std::string> accepted_constants(FamilyKind kind);
[[nodiscard]] std::vector<std::string> required_constants(FamilyKind kind);
/// Whether the kind takes an arbitrary profile (the semi-quadric kinds), and
/// the variable that profile is written in.
[[nodiscard]] std::optional<std::string> free_profile_variable(FamilyKind kind) noexcept;
/// The coords a kind is pinned to (Thm4AxisLog and the examples), if any.
[[nodiscard]] std::optional<AffineCoords> fixed_coords(FamilyKind kind);
[[nodiscard]] inline bool takes_coords(FamilyKind kind) { return !fixed_coords(kind); }

using Constants = std::map<std::string, double, std::less<>>;

struct FamilySpec {
    FamilyKind kind = FamilyKind::Example1;
    Constants constants;
    AffineCoords coords = AffineCoords::identity();
    /// The arbitrary f (or g) of the semi-quadric kinds; defaults to the cube
    /// of its variable.
    std::optional<Expr> free_profile;
    /// Overrides the kind's default domain.
    std::optional<Domain> domain;
};

enum class Laplacian { I, II };

struct WeingartenClass {
    friend bool operator==(const WeingartenClass&, const WeingartenClass&) = default;
};

/// K + 2 m0 H = n0. Unset constants are recovered by least squares.
struct LinearWeingartenClass {
    std::optional<double> m0;
    std::optional<double> n0;
    friend bool operator==(const LinearWeingartenClass&, const LinearWeingartenClass&) = default;
};

/// Delta r_i = lambda_i r_i for the coordinate functions (x, y, z).
struct EigenClass {
    Laplacian which = Laplacian::I;
    std::array<double, 3> lambda{};
    friend bool operator==(const EigenClass&, const EigenClass&) = default;
};

using ExpectedClass = std::variant<WeingartenClass, LinearWeingartenClass, EigenClass>;

[[nodiscard]] std::string describe(const ExpectedClass& c);

struct Certificate {
    /// Every listed class must hold.
    std::vector<ExpectedClass> expected;
    double tolerance = 1e-8;
};

struct Family {
    FamilySpec spec;
    AffineTranslationSurface surface;
    Certificate certificate;
};

/// Default sampling domain for a kind. Log kinds stay inside u, v > 0
/// (or x, y > 0).
[[nodiscard]] Domain default_domain(FamilyKind kind, const AffineCoords& coords);

/// Assembles f and g exactly as the classification displays them. Throws
/// SpecError naming the offending field when the kind's constraints fail.
[[nodiscard]] Family build(const FamilySpec& spec);

/// Deterministic spec for property tests. Coords entries in [-3, 3] with
/// |ad - bc| >= 0.1, c_i in [-2, 2], |lambda| in [0.25, 4].
[[nodiscard]] FamilySpec random_family(FamilyKind kind, std::uint64_t seed);

} // namespace isokit
