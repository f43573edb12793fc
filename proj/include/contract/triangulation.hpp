#pragma once

#include "contract/surface.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace contract {

using Perm = std::array<int, 4>;

Perm inverse(const Perm& p);
bool is_permutation(const Perm& p);

// Face `face` of a tetrahedron is glued to face `face` of `tet`, vertex i going to perm[i].
struct Gluing {
    int tet = -1;
    int face = -1;
    Perm perm{0, 1, 2, 3};

    friend bool operator==(const Gluing&, const Gluing&) = default;
};

struct Triangulation {
    std::vector<std::array<std::optional<Gluing>, 4>> gluings;
    std::vector<std::string> labels;

    int size() const { return static_cast<int>(gluings.size()); }
    // The gluing of (tet, face) if it is present and reciprocated by the other side.
    const Gluing* partner(int tet, int face) const;
    bool is_boundary_face(int tet, int face) const { return partner(tet, face) == nullptr; }
};

Triangulation parse_triangulation(std::string_view text);
std::string serialize_triangulation(const Triangulation& tri);

// Edges of a tetrahedron: 0:01 1:02 2:03 3:12 4:13 5:23.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
int tet_edge_index(int a, int b);

// Vertex, edge and face classes computed from the reciprocated gluings.
struct Skeleton {
    std::vector<std::array<int, 4>> vertex;      // per (tet, vertex)
    std::vector<std::array<int, 6>> edge;        // per (tet, edge)
    std::vector<std::array<int, 6>> edge_sign;   // +1 if oriented like the class representative
    std::vector<std::array<int, 4>> face;        // per (tet, face)
    std::vector<std::array<int, 2>> edge_rep;    // representative (tet, edge) for each class
    std::vector<std::array<int, 2>> face_rep;    // representative (tet, face)
    std::vector<char> edge_reversed;             // class identified with itself in reverse
    int vertex_count = 0;
    int edge_count = 0;
    int face_count = 0;
};

Skeleton skeleton(const Triangulation& tri);

enum class Check { FaceOveruse = 1, ReversedEdge = 2, BadVertexLink = 3 };

struct Violation {
    Check check;
    std::string description;
    std::vector<std::array<int, 2>> simplices;  // (tet, face | edge | vertex) depending on the check
};

struct VertexLink {
    int vertex_class = 0;
    int euler = 0;
    bool closed = true;
    bool connected = true;
    bool sphere = false;
    bool disk = false;
};

struct ValidationReport {
    bool is_manifold = true;
    std::vector<Violation> violations;
    std::vector<VertexLink> links;
};

ValidationReport validate_manifold(const Triangulation& tri);

struct BoundaryTriangle {
    int tet = 0;
    int face = 0;
    std::array<int, 3> verts{};  // tetrahedron vertices at corners 0, 1, 2 (ascending)
};

struct BoundarySurface {
    std::vector<BoundaryTriangle> triangles;
    TriangleComplex complex;
    ComplexSummary summary;

    int size() const { return static_cast<int>(triangles.size()); }
    // Boundary triangle id of (tet, face), or -1.
    int triangle_of(int tet, int face) const;
};

BoundarySurface boundary_surface(const Triangulation& tri);

}  // namespace contract
