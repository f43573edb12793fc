#include "contract/surface.hpp"

#include "contract/error.hpp"

#include <numeric>
#include <queue>

namespace contract {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<int> compress(UnionFind& uf, int n, int& count) {
    std::vector<int> id(n, -1), out(n);
    count = 0;
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        if (id[r] < 0) id[r] = count++;
        out[i] = id[r];
    }
    return out;
}

}  // namespace

void TriangleComplex::link(int tri_a, int side_a, int tri_b, int side_b, std::array<int, 3> corner_map) {
    std::array<int, 3> inverse{-1, -1, -1};
    for (int c = 0; c < 3; ++c)
        if (corner_map[c] >= 0) inverse[corner_map[c]] = c;
    sides[tri_a][side_a] = {tri_b, side_b, corner_map};
    sides[tri_b][side_b] = {tri_a, side_a, inverse};
}

ComplexSummary summarize(const TriangleComplex& complex) {
    const int f = complex.size();
    ComplexSummary out;
    UnionFind corners(3 * f), sides(3 * f), tris(f);
    for (int t = 0; t < f; ++t) {
        for (int k = 0; k < 3; ++k) {
            const SideLink& s = complex.sides[t][k];
            if (s.tri < 0) continue;
            sides.unite(3 * t + k, 3 * s.tri + s.side);
            tris.unite(t, s.tri);
            for (int c : {(k + 1) % 3, (k + 2) % 3}) corners.unite(3 * t + c, 3 * s.tri + s.corner_map[c]);
        }
    }
    out.vertex_of_corner = compress(corners, 3 * f, out.vertex_count);
    out.edge_of_side = compress(sides, 3 * f, out.edge_count);
    int comp_count = 0;
    out.component_of_tri = compress(tris, f, comp_count);
    out.components.resize(comp_count);

    out.orientation.assign(f, 0);
    for (int start = 0; start < f; ++start) {
        if (out.orientation[start] != 0) continue;
        ComplexComponent& comp = out.components[out.component_of_tri[start]];
        out.orientation[start] = 1;
        std::queue<int> queue;
        queue.push(start);
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop();
            for (int k = 0; k < 3; ++k) {
                const SideLink& s = complex.sides[t][k];
                if (s.tri < 0) continue;
                int a = s.corner_map[(k + 1) % 3];
                int b = s.corner_map[(k + 2) % 3];
                bool forward = b == (a + 1) % 3;
                int want = forward ? -out.orientation[t] : out.orientation[t];
                if (out.orientation[s.tri] == 0) {
                    out.orientation[s.tri] = want;
                    queue.push(s.tri);
                } else if (out.orientation[s.tri] != want) {
                    comp.orientable = false;
                }
            }
        }
    }

    std::vector<std::vector<char>> seen_v(comp_count), seen_e(comp_count);
    for (auto& v : seen_v) v.assign(out.vertex_count, 0);
    for (auto& e : seen_e) e.assign(out.edge_count, 0);
    for (int t = 0; t < f; ++t) {
        int c = out.component_of_tri[t];
        ComplexComponent& comp = out.components[c];
        comp.triangles.push_back(t);
        ++comp.faces;
        for (int k = 0; k < 3; ++k) {
            int v = out.vertex_of_corner[3 * t + k];
            if (!seen_v[c][v]) {
                seen_v[c][v] = 1;
                ++comp.vertices;
            }
            int e = out.edge_of_side[3 * t + k];
            if (!seen_e[c][e]) {
                seen_e[c][e] = 1;
                ++comp.edges;
            }
            if (complex.sides[t][k].tri < 0) ++comp.free_sides;
        }
    }
    for (auto& comp : out.components) comp.euler = comp.vertices - comp.edges + comp.faces;
    return out;
}

}  // namespace contract
