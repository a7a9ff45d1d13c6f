#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "isokit/geometry.hpp"

namespace isokit {

/// Platform-stable uniform draws (std distributions are not portable).
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
    double sign() { return unit() < 0.5 ? -1.0 : 1.0; }
    std::size_t index(std::size_t n);

    /// Entries in [-3, 3] with |ad - bc| >= 0.1.
    AffineCoords coords();

private:
    std::mt19937_64 rng_;
};

enum class ProfileStyle {
    /// Anything from the expression vocabulary, defined on the whole domain.
    Vocabulary,
    /// Log, exp or trig profiles with f'' bounded away from zero.
    Nondegenerate,
};

/// Affine translation surface on [-1, 1]^2 with random coords and profiles.
[[nodiscard]] AffineTranslationSurface random_affine_surface(std::uint64_t seed, ProfileStyle style);

[[nodiscard]] IsotropicMotion random_motion(std::uint64_t seed);

/// Uniform points of the domain (uniform in (u, v) for uv-domains).
[[nodiscard]] std::vector<Point2> random_points(const Domain& domain, std::size_t count,
                                                std::uint64_t seed);

} // namespace isokit
