#pragma once

#include <array>
#include <vector>

namespace contract {

// Side k of a triangle joins corners (k+1)%3 and (k+2)%3.
struct SideLink {
    int tri = -1;  // -1: free side
    int side = -1;
    std::array<int, 3> corner_map{-1, -1, -1};  // corner of this triangle -> corner of partner
};

struct TriangleComplex {
    std::vector<std::array<SideLink, 3>> sides;

    int size() const { return static_cast<int>(sides.size()); }
    void link(int tri_a, int side_a, int tri_b, int side_b, std::array<int, 3> corner_map);
};

struct ComplexComponent {
    std::vector<int> triangles;
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    int euler = 0;
    bool orientable = true;
    int free_sides = 0;
};

struct ComplexSummary {
    std::vector<int> vertex_of_corner;  // 3 * tri + corner
    std::vector<int> edge_of_side;      // 3 * tri + side
    std::vector<int> component_of_tri;
    std::vector<int> orientation;       // +1 / -1 per triangle, consistent where possible
    std::vector<ComplexComponent> components;
    int vertex_count = 0;
    int edge_count = 0;
};

ComplexSummary summarize(const TriangleComplex& complex);

}  // namespace contract
