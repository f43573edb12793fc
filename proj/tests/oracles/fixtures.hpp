#pragma once

// Hand-built manifolds and curve generators shared by the test binaries.

#include "contract/curve.hpp"
#include "contract/triangulation.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fixture {

using contract::Point2;
using contract::Rational;

// One tetrahedron, all faces on the boundary.
contract::Triangulation ball();
std::string ball_text();

// One tetrahedron with two faces glued; the first candidate with a torus boundary.
contract::Triangulation solid_torus();

// Two tetrahedra glued along all faces by the identity: a closed manifold (no boundary).
std::string closed_pair_text();

// Replaces tetrahedron `tet` by four tetrahedra coned from an interior point. New tetrahedron k
// keeps the old vertex labels except that vertex k becomes the cone point.
contract::Triangulation one_four_move(const contract::Triangulation& t, int tet);

// Affine chart of a two-triangle boundary torus. Lattice triangle (i, j, up) has corners
// (i,j), (i+1,j), (i,j+1); (i, j, down) has (i+1,j), (i,j+1), (i+1,j+1). Deck group is Z^2.
class TorusChart {
public:
    explicit TorusChart(const contract::Triangulation& tri);

    const contract::BoundarySurface& surface() const { return surface_; }
    // Closed curve through plane points p[0..k-1], closing at p[0] + shift.
    contract::PLCurve from_plane(const std::vector<Point2>& p, const Point2& shift) const;

private:
    struct Placement {
        int tri = 0;
        std::array<Point2, 3> corner;
    };
    Placement lookup(const Rational& i, const Rational& j, bool up) const;
    Placement locate(const Point2& p) const;
    Placement neighbour(const Placement& p, int side) const;

    contract::BoundarySurface surface_;
    Placement up_, down_;
};

// Barycentric (λ0, λ1) of x in the triangle with corners a, b, c.
Point2 affine_coords(const std::array<Point2, 3>& corner, const Point2& x);

struct Torus {
    contract::Triangulation tri;
    contract::BoundarySurface surface;
    TorusChart chart;
    Point2 meridian;   // deck translation bounding a disk in the solid torus
    Point2 longitude;  // deck translation generating H1
};

Torus torus();

// Curves on the solid-torus boundary drawn in the chart from a fixed start point.
contract::PLCurve torus_meridian(const Torus& t);
contract::PLCurve torus_longitude(const Torus& t);
// Simple meridian detour whose spanning disk needs a normal coordinate above 1.
contract::PLCurve wiggly_meridian(const Torus& t);
// Meridian traversed twice, with one crossing.
contract::PLCurve doubled_meridian(const Torus& t);
// Meridian traversed twice, with two non-interlaced crossings.
contract::PLCurve doubled_meridian_two(const Torus& t);
// Figure-eight with one crossing whose lobes are a meridian and a longitude.
contract::PLCurve meridian_longitude_eight(const Torus& t);

// Closed polygon inside one boundary triangle.
contract::PLCurve polygon(int tri, const std::vector<Point2>& pts);

// Simple loop around the boundary vertex at `corner` of triangle `tri`, at relative distance r.
contract::PLCurve vertex_loop(const contract::BoundarySurface& s, int tri, int corner, const Rational& r);

// Star-shaped simple polygon with n vertices inside triangle `tri`.
contract::PLCurve random_star(std::mt19937& rng, int tri, int n);

// Random closed polygon with `n` vertices inside triangle `tri`; may be non-generic.
contract::PLCurve random_polygon(std::mt19937& rng, int tri, int n);

// Random general-position polygon in triangle `tri` with between lo and hi crossings.
contract::PLCurve random_curve_with_crossings(std::mt19937& rng, const contract::BoundarySurface& s, int tri, int lo,
                                              int hi);

// Figure-eight inside triangle `tri` (one crossing).
contract::PLCurve figure_eight(int tri);

// Curve on the ball's boundary separating vertices {0,1} from {2,3}, through four triangles,
// with up to `extra` interior zigzag points per triangle.
contract::PLCurve random_equator(std::mt19937& rng, const contract::BoundarySurface& ball, int extra);

// Mixed suite of simple curves on the ball's boundary with at most `max_points` vertices.
std::vector<contract::PLCurve> simple_ball_curves(std::mt19937& rng, const contract::BoundarySurface& ball, int count,
                                                  int max_points);

}  // namespace fixture
