#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <string_view>

namespace contract {

using Rational = mpq_class;

// Parses "p/q" or "p"; throws contract::Error("bad-fraction") otherwise.
Rational parse_rational(std::string_view text);

// Lowest-term "p/q" (always with a denominator, "0/1" for zero).
std::string format_rational(const Rational& value);

// Point of the plane in the affine frame of a triangle: the first two
// barycentric coordinates. The third one is 1 - x - y.
struct Point2 {
    Rational x;
    Rational y;

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    }
};

inline Point2 lerp(const Point2& a, const Point2& b, const Rational& t) {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

// Sign of the signed area of (a, b, c): +1 counterclockwise, -1 clockwise, 0 collinear.
int orientation(const Point2& a, const Point2& b, const Point2& c);

// Barycentric triple (λ0, λ1, λ2) of a point given by its first two coordinates.
std::array<Rational, 3> barycentric(const Point2& p);

}  // namespace contract
