#pragma once

#include <cstddef>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

namespace isokit {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

namespace detail {

inline std::string number_text(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string point_text(Point2 p)
{
    return "(" + number_text(p.x) + ", " + number_text(p.y) + ")";
}

} // namespace detail

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is a character offset into the input.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("parse error at " + std::to_string(position) + ": " + message),
          position_(position), detail_(message)
    {
    }

    [[nodiscard]] std::size_t position() const noexcept { return position_; }
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t position_;
    std::string detail_;
};

/// An expression was evaluated outside the domain of one of its nodes
/// (ln of a non-positive number, division by zero, unbound variable, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& message, std::optional<Point2> point = std::nullopt)
        : Error(point ? message + " at " + detail::point_text(*point) : message),
          detail_(message), point_(point)
    {
    }

    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }
    [[nodiscard]] const std::optional<Point2>& point() const noexcept { return point_; }

    [[nodiscard]] DomainError at(Point2 p) const { return DomainError(detail_, p); }

private:
    std::string detail_;
    std::optional<Point2> point_;
};

/// Invalid surface or family spec file: singular affine change, violated
/// family constraint, degenerate domain, W <= 0.
class SpecError : public Error {
public:
    SpecError(std::string field, const std::string& message)
        : Error(field.empty() ? message : field + ": " + message), field_(std::move(field))
    {
    }

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// The second fundamental form degenerates (|LN - M^2| below the parabolic
/// threshold), so the second Laplacian is undefined.
class ParabolicPointError : public Error {
public:
    ParabolicPointError(Point2 p, double w, const std::string& what = "parabolic point")
        : Error(what + " at " + detail::point_text(p) + ", LN-M^2 = " + detail::number_text(w)),
          point_(p), discriminant_(w)
    {
    }

    [[nodiscard]] Point2 point() const noexcept { return point_; }
    [[nodiscard]] double discriminant() const noexcept { return discriminant_; }

private:
    Point2 point_;
    double discriminant_;
};

/// f''(u) g''(v) = 0 exactly, where the closed-form second Laplacian of an
/// affine translation surface divides by that product.
class VanishingSecondDerivativeError : public ParabolicPointError {
public:
    VanishingSecondDerivativeError(Point2 p)
        : ParabolicPointError(p, 0.0, "f''g'' = 0")
    {
    }
};

} // namespace isokit
