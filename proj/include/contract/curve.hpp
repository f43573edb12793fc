#pragma once

#include "contract/rational.hpp"
#include "contract/triangulation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace contract {

// A curve vertex on boundary triangle `tri`; p holds (λ0, λ1) for the triangle's corners 0 and 1.
struct CurvePoint {
    int tri = 0;
    Point2 p;

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) { return a.tri == b.tri && a.p == b.p; }
};

// Segment i joins points i and i+1 and lies in the triangle of point i. When point i+1 is
// listed in another triangle it must sit on an edge shared with the triangle of point i.
struct PLCurve {
    std::vector<CurvePoint> points;

    int size() const { return static_cast<int>(points.size()); }
};

PLCurve parse_curve(std::string_view text);
std::string serialize_curve(const PLCurve& c);

// -1 if p is interior to its triangle, else the corner whose barycentric weight vanishes.
// Throws curve-through-vertex when two weights vanish.
int edge_of_point(const Point2& p);

// Coordinates of the point q in boundary triangle `tri`, crossing one edge if needed.
std::optional<Point2> express_in(const BoundarySurface& s, const CurvePoint& q, int tri);

// Maps a point on side `side` of triangle t across to the paired triangle.
Point2 map_across(const BoundarySurface& s, int t, int side, const Point2& p);

struct Segment {
    int tri = 0;
    Point2 a, b;
};

// Validates the curve against the surface and returns its segments in triangle coordinates.
std::vector<Segment> curve_segments(const BoundarySurface& s, const PLCurve& c);

struct Passage {
    int segment = 0;
    Rational t;  // position inside the segment, 0 < t < 1

    friend bool operator<(const Passage& a, const Passage& b) {
        return a.segment < b.segment || (a.segment == b.segment && a.t < b.t);
    }
    friend bool operator==(const Passage& a, const Passage& b) { return a.segment == b.segment && a.t == b.t; }
};

struct Crossing {
    int tri = 0;
    Point2 where;
    std::array<Passage, 2> passes;  // passes[0] < passes[1]
};

struct CrossingSet {
    std::vector<Crossing> crossings;  // ordered by first passage
    bool general_position = true;
    std::vector<std::string> defects;

    int size() const { return static_cast<int>(crossings.size()); }
};

CrossingSet compute_crossings(const BoundarySurface& s, const PLCurve& c);

bool interlaced(const CrossingSet& x, int u, int v);

// Canonical identity of a curve vertex on the surface (edge points agree across paired triangles).
struct PointKey {
    int kind = 0;  // 0 interior, 1 edge
    int id = 0;    // triangle or edge class
    Point2 p;      // interior coordinates, or (s, 0) for the position along the edge representative

    friend bool operator<(const PointKey& a, const PointKey& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.id != b.id) return a.id < b.id;
        return a.p < b.p;
    }
    friend bool operator==(const PointKey& a, const PointKey& b) {
        return a.kind == b.kind && a.id == b.id && a.p == b.p;
    }
};

PointKey point_key(const BoundarySurface& s, const CurvePoint& q);

// First (tri, side) carrying each boundary edge class.
std::vector<std::array<int, 2>> edge_representatives(const BoundarySurface& s);

}  // namespace contract
