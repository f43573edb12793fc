#pragma once

#include "contract/curve.hpp"
#include "contract/surface.hpp"
#include "contract/triangulation.hpp"

#include <array>
#include <vector>

namespace contract {

// Triangulation of one boundary triangle whose edges contain the curve segments lying in it.
struct FacePatch {
    std::vector<Point2> points;  // corners 0, 1, 2 come first
    std::vector<char> on_curve;
    std::vector<std::array<int, 3>> triangles;  // counterclockwise in (λ0, λ1)
    std::vector<std::array<int, 2>> curve_edges;
};

// An edge of a subdivided surface: side `side` of triangle `tri`, traversed from corner
// (side+1)%3 to (side+2)%3 when forward.
struct CurveEdgeRef {
    int tri = 0;
    int side = 0;
    bool forward = true;
};

// Curve data carried by a subdivided surface.
struct CurveMarks {
    std::vector<std::array<char, 3>> corner;  // corner lies on c
    std::vector<std::array<char, 3>> side;    // side is an edge of c
    std::vector<CurveEdgeRef> edges;          // edges of c in order
};

struct SurfaceSubdivision {
    std::vector<FacePatch> patches;           // one per boundary triangle
    std::vector<std::array<int, 2>> origin;   // (patch, triangle) of every small triangle
    TriangleComplex complex;
    ComplexSummary summary;
    CurveMarks marks;
};

// Throws curve-not-simple unless c is in general position without crossings.
void require_simple(const BoundarySurface& s, const PLCurve& c);

// Subdivides every boundary triangle so that c runs along edges. No edge joins two points of c
// unless it is an edge of c, and no small triangle has all its corners on c.
SurfaceSubdivision subdivide_surface(const BoundarySurface& s, const PLCurve& c);

// Constrained triangulation of the standard triangle by greedy shortest non-crossing edges.
// Points on the triangle sides must include every point of the sides that is used.
std::vector<std::array<int, 3>> triangulate_points(const std::vector<Point2>& points,
                                                   const std::vector<std::array<int, 2>>& constraints);

// A point of an original tetrahedron in barycentric coordinates.
struct TetPoint {
    int tet = 0;
    std::array<Rational, 4> w;

    friend bool operator==(const TetPoint&, const TetPoint&) = default;
};

struct Subdivision {
    Triangulation tri;                          // T'
    std::vector<std::array<TetPoint, 4>> where; // vertices of every tetrahedron of T'
    BoundarySurface surface;                    // boundary of T'
    CurveMarks marks;                           // c on the boundary of T'
    std::vector<int> patch_of;                  // original boundary triangle under each boundary triangle of T'
};

// Cones every subdivided face of every tetrahedron from the tetrahedron's centroid. Tetrahedra
// of T' are numbered breadth-first from those touching c.
Subdivision subdivide_along_curve(const Triangulation& t, const PLCurve& c);

}  // namespace contract
