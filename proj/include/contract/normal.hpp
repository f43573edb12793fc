#pragma once

#include "contract/curve.hpp"
#include "contract/subdivision.hpp"
#include "contract/triangulation.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace contract {

// Seven coordinates per tetrahedron: triangles t0..t3 (cutting off vertex i), then quads
// q0 = 01|23, q1 = 02|13, q2 = 03|12.
struct NormalVector {
    std::vector<int> coords;

    int tets() const { return static_cast<int>(coords.size()) / 7; }
    bool is_zero() const;
    friend bool operator==(const NormalVector&, const NormalVector&) = default;
};

// Quad type separating the vertex pair {a, b} from the other two.
int quad_type(int a, int b);

struct LinearTerm {
    int var = 0;
    int coef = 0;
};

struct LinearEquation {
    std::vector<LinearTerm> terms;
    int rhs = 0;
};

struct MatchingSystem {
    int variables = 0;
    std::vector<LinearEquation> equations;        // one per interior face class and arc type
    std::vector<std::array<int, 3>> quad_groups;  // coordinates of the three quads of each tetrahedron
};

MatchingSystem matching_system(const Triangulation& t);

// Normal arcs on a boundary face: the count of arcs cutting off each vertex of the face.
struct BoundaryArcCount {
    int tet = 0;
    int face = 0;
    int vertex = 0;
    int count = 0;
};

// Number of normal arcs around `vertex` on face `face` contributed by tetrahedron `tet`.
int arc_count(const NormalVector& v, int tet, int face, int vertex);

bool satisfies_quad_condition(const NormalVector& v);
bool is_admissible(const Triangulation& t, const NormalVector& v);

// Calls `visit` on every nonzero admissible vector with coordinates at most `bound`, in
// lexicographic order, until it returns false. With `boundary`, only vectors whose arcs on the
// listed boundary faces match the counts are produced (faces not listed are unconstrained).
void enumerate_admissible(const Triangulation& t, int bound, const std::function<bool(const NormalVector&)>& visit,
                          const std::vector<BoundaryArcCount>* boundary = nullptr);

// A normal arc on a boundary face, numbered by its distance from the vertex it cuts off.
struct BoundaryArc {
    int tet = 0;
    int face = 0;
    int vertex = 0;
    int index = 0;

    friend auto operator<=>(const BoundaryArc&, const BoundaryArc&) = default;
};

struct NormalPiece {
    int tet = 0;
    int type = 0;  // 0..3 triangle at that vertex, 4..6 quad
    int copy = 0;
};

struct SurfaceComponent {
    std::vector<int> pieces;
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    int euler = 0;
    std::vector<BoundaryArc> boundary;
};

struct NormalSurfaceComplex {
    std::vector<NormalPiece> pieces;
    // per piece side: (piece, side) across the tetrahedron face, or (-1, -1) on the boundary
    std::vector<std::vector<std::array<int, 2>>> neighbours;
    std::vector<std::vector<int>> corners;  // normal vertex ids around each piece
    std::vector<SurfaceComponent> components;
    int vertex_count = 0;
};

NormalSurfaceComplex build_surface(const Triangulation& t, const NormalVector& v);

// Parallel copy of c on one side, as one arc per boundary face of T' (vertex 0 for none).
// Throws one-sided-curve when c has no two-sided neighbourhood.
std::vector<BoundaryArcCount> parallel_curve(const Subdivision& sub);

// Connected, Euler characteristic one, boundary arcs exactly those of the target.
bool is_spanning_disk(const NormalSurfaceComplex& surface, const std::vector<BoundaryArcCount>& target);

// Cuts the subdivided surface along the marked curve; true if a piece is a disk.
bool bounds_disk_in_boundary(const TriangleComplex& complex, const CurveMarks& marks);
bool bounds_disk_in_boundary(const BoundarySurface& s, const PLCurve& c);

// True when c is nonzero in H1(M; F_p) for a large prime p, which rules out a spanning disk.
bool homologically_essential(const Subdivision& sub);

enum class NegativeKind { None, Certified, Bounded };

struct OracleAnswer {
    bool contractible_in_M = false;
    std::optional<NormalVector> witness;
    bool boundary_status = false;
    std::optional<PLCurve> returned_curve;
    NegativeKind negative = NegativeKind::None;
    std::string reason;  // one-sided, homology, bound-exhausted, disk-found, boundary-disk
    int bound = 0;
};

OracleAnswer simple_contractible(const Triangulation& m, const PLCurve& c, int bound);

// Polynomial-time check of a disk witness for a simple curve.
bool verify_disk_witness(const Triangulation& m, const PLCurve& c, const NormalVector& v);

inline constexpr int kDefaultBound = 8;

}  // namespace contract
