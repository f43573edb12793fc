#include "contract/normal.hpp"

#include "contract/error.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

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

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

void add_arc_terms(std::map<int, int>& terms, int tet, int face, int vertex, int sign) {
    terms[7 * tet + vertex] += sign;
    terms[7 * tet + 4 + quad_type(vertex, face)] += sign;
}

LinearEquation to_equation(const std::map<int, int>& terms, int rhs) {
    LinearEquation eq;
    eq.rhs = rhs;
    for (auto [var, coef] : terms)
        if (coef != 0) eq.terms.push_back({var, coef});
    return eq;
}

class Search {
public:
    Search(const Triangulation& t, int bound, const std::vector<BoundaryArcCount>* boundary)
        : sys_(matching_system(t)), n_(sys_.variables), lo_(n_, 0), hi_(n_, bound), var_eqs_(n_), queued_() {
        if (boundary)
            for (const auto& b : *boundary) {
                std::map<int, int> terms;
                add_arc_terms(terms, b.tet, b.face, b.vertex, 1);
                sys_.equations.push_back(to_equation(terms, b.count));
            }
        for (int e = 0; e < static_cast<int>(sys_.equations.size()); ++e)
            for (const auto& term : sys_.equations[e].terms) var_eqs_[term.var].push_back(e);
        queued_.assign(sys_.equations.size(), 0);
    }

    void run(const std::function<bool(const NormalVector&)>& visit) {
        for (int e = 0; e < static_cast<int>(sys_.equations.size()); ++e) enqueue(e);
        if (!propagate()) return;
        visit_ = &visit;
        descend(0);
    }

private:
    void enqueue(int e) {
        if (!queued_[e]) {
            queued_[e] = 1;
            queue_.push_back(e);
        }
    }

    bool tighten(int var, int lo, int hi) {
        if (lo <= lo_[var] && hi >= hi_[var]) return true;
        trail_.push_back({var, lo_[var], hi_[var]});
        lo_[var] = std::max(lo, lo_[var]);
        hi_[var] = std::min(hi, hi_[var]);
        if (lo_[var] > hi_[var]) return false;
        for (int e : var_eqs_[var]) enqueue(e);
        int slot = var % 7;
        if (slot >= 4 && lo_[var] > 0) {
            int base = var - slot;
            for (int q = 4; q < 7; ++q)
                if (q != slot && !tighten(base + q, 0, 0)) return false;
        }
        return true;
    }

    bool propagate() {
        bool ok = true;
        while (!queue_.empty()) {
            int e = queue_.back();
            queue_.pop_back();
            queued_[e] = 0;
            if (!ok) continue;
            const auto& eq = sys_.equations[e];
            long lo = 0, hi = 0;
            for (const auto& t : eq.terms) {
                if (t.coef > 0) {
                    lo += static_cast<long>(t.coef) * lo_[t.var];
                    hi += static_cast<long>(t.coef) * hi_[t.var];
                } else {
                    lo += static_cast<long>(t.coef) * hi_[t.var];
                    hi += static_cast<long>(t.coef) * lo_[t.var];
                }
            }
            if (eq.rhs < lo || eq.rhs > hi) {
                ok = false;
                continue;
            }
            for (const auto& t : eq.terms) {
                long mine_lo = t.coef > 0 ? static_cast<long>(t.coef) * lo_[t.var] : static_cast<long>(t.coef) * hi_[t.var];
                long mine_hi = t.coef > 0 ? static_cast<long>(t.coef) * hi_[t.var] : static_cast<long>(t.coef) * lo_[t.var];
                int low = static_cast<int>(eq.rhs - (hi - mine_hi));
                int high = static_cast<int>(eq.rhs - (lo - mine_lo));
                int nlo, nhi;
                if (t.coef > 0) {
                    nlo = ceil_div(low, t.coef);
                    nhi = floor_div(high, t.coef);
                } else {
                    nlo = ceil_div(high, t.coef);
                    nhi = floor_div(low, t.coef);
                }
                if (!tighten(t.var, nlo, nhi)) {
                    ok = false;
                    break;
                }
            }
        }
        return ok;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            auto [var, lo, hi] = trail_.back();
            trail_.pop_back();
            lo_[var] = lo;
            hi_[var] = hi;
        }
    }

    // false once the visitor asked to stop
    bool descend(int from) {
        int var = from;
        while (var < n_ && lo_[var] == hi_[var]) ++var;
        if (var == n_) {
            NormalVector v{lo_};
            if (v.is_zero()) return true;
            return (*visit_)(v);
        }
        const int lo = lo_[var], hi = hi_[var];
        for (int val = lo; val <= hi; ++val) {
            std::size_t mark = trail_.size();
            bool ok = tighten(var, val, val) && propagate();
            if (!ok) {
                for (int e : queue_) queued_[e] = 0;
                queue_.clear();
            }
            bool go_on = !ok || descend(var + 1);
            undo(mark);
            if (!go_on) return false;
        }
        return true;
    }

    MatchingSystem sys_;
    int n_;
    std::vector<int> lo_, hi_;
    std::vector<std::vector<int>> var_eqs_;
    std::vector<char> queued_;
    std::vector<int> queue_;
    std::vector<std::array<int, 3>> trail_;
    const std::function<bool(const NormalVector&)>* visit_ = nullptr;
};

// the pair {u, partner(u)} of a quad type's vertex partition
int quad_partner(int qtype, int u) {
    int x = qtype + 1;
    if (u == 0) return x;
    if (u == x) return 0;
    return 6 - x - u;
}

}  // namespace

bool NormalVector::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](int x) { return x == 0; });
}

int quad_type(int a, int b) {
    if (a == b || a < 0 || b < 0 || a > 3 || b > 3) throw Error("internal", "bad vertex pair");
    int partner = a == 0 ? b : b == 0 ? a : 6 - a - b;
    return partner - 1;
}

int arc_count(const NormalVector& v, int tet, int face, int vertex) {
    return v.coords[7 * tet + vertex] + v.coords[7 * tet + 4 + quad_type(vertex, face)];
}

MatchingSystem matching_system(const Triangulation& t) {
    MatchingSystem out;
    out.variables = 7 * t.size();
    for (int a = 0; a < t.size(); ++a) {
        out.quad_groups.push_back({7 * a + 4, 7 * a + 5, 7 * a + 6});
        for (int f = 0; f < 4; ++f) {
            const Gluing* g = t.partner(a, f);
            if (!g || std::make_pair(g->tet, g->face) < std::make_pair(a, f)) continue;
            for (int j = 0; j < 4; ++j) {
                if (j == f) continue;
                std::map<int, int> terms;
                add_arc_terms(terms, a, f, j, 1);
                add_arc_terms(terms, g->tet, g->face, g->perm[j], -1);
                out.equations.push_back(to_equation(terms, 0));
            }
        }
    }
    return out;
}

bool satisfies_quad_condition(const NormalVector& v) {
    for (int a = 0; a < v.tets(); ++a) {
        int nonzero = 0;
        for (int q = 4; q < 7; ++q) nonzero += v.coords[7 * a + q] > 0 ? 1 : 0;
        if (nonzero > 1) return false;
    }
    return true;
}

bool is_admissible(const Triangulation& t, const NormalVector& v) {
    if (static_cast<int>(v.coords.size()) != 7 * t.size()) return false;
    if (std::any_of(v.coords.begin(), v.coords.end(), [](int x) { return x < 0; })) return false;
    if (!satisfies_quad_condition(v)) return false;
    for (const auto& eq : matching_system(t).equations) {
        long sum = 0;
        for (const auto& term : eq.terms) sum += static_cast<long>(term.coef) * v.coords[term.var];
        if (sum != eq.rhs) return false;
    }
    return true;
}

void enumerate_admissible(const Triangulation& t, int bound, const std::function<bool(const NormalVector&)>& visit,
                          const std::vector<BoundaryArcCount>* boundary) {
    if (bound < 0) throw Error("bad-bound", "bound must be non-negative");
    if (bound == 0) return;
    Search(t, bound, boundary).run(visit);
}

NormalSurfaceComplex build_surface(const Triangulation& t, const NormalVector& v) {
    if (static_cast<int>(v.coords.size()) != 7 * t.size()) throw Error("bad-vector", "vector length does not match");
    NormalSurfaceComplex out;
    const int n = t.size();
    auto c = [&](int a, int k) { return v.coords[7 * a + k]; };

    // normal vertices on each tetrahedron edge, counted from the lower vertex
    std::vector<std::array<int, 6>> weight(n), offset(n);
    int total = 0;
    for (int a = 0; a < n; ++a)
        for (int e = 0; e < 6; ++e) {
            int x = kTetEdges[e][0], y = kTetEdges[e][1];
            int w = c(a, x) + c(a, y);
            for (int q = 0; q < 3; ++q)
                if (quad_partner(q, x) != y) w += c(a, 4 + q);
            weight[a][e] = w;
            offset[a][e] = total;
            total += w;
        }
    // id of the normal vertex at distance `pos` from vertex u on edge {u, w}
    auto vertex_id = [&](int a, int u, int w, int pos) {
        int e = tet_edge_index(u, w);
        int from_low = u < w ? pos : weight[a][e] - 1 - pos;
        return offset[a][e] + from_low;
    };

    std::map<BoundaryArc, std::array<int, 2>> arc_owner;  // arc on (tet, face) -> (piece, side)
    std::vector<std::vector<BoundaryArc>> arcs;
    for (int a = 0; a < n; ++a) {
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < c(a, j); ++i) {
                int id = static_cast<int>(out.pieces.size());
                out.pieces.push_back({a, j, i});
                std::array<int, 3> y{};
                int k = 0;
                for (int x = 0; x < 4; ++x)
                    if (x != j) y[k++] = x;
                std::vector<int> corners;
                std::vector<BoundaryArc> sides;
                for (int s = 0; s < 3; ++s) {
                    corners.push_back(vertex_id(a, j, y[s], i));
                    sides.push_back({a, y[(s + 2) % 3], j, i});
                }
                out.corners.push_back(corners);
                arcs.push_back(sides);
                for (int s = 0; s < 3; ++s) arc_owner[sides[s]] = {id, s};
            }
        for (int q = 0; q < 3; ++q)
            for (int i = 0; i < c(a, 4 + q); ++i) {
                int id = static_cast<int>(out.pieces.size());
                out.pieces.push_back({a, 4 + q, i});
                int u1 = 0, u2 = q + 1;
                std::array<int, 2> w{};
                int k = 0;
                for (int x = 1; x < 4; ++x)
                    if (x != u2) w[k++] = x;
                int v1 = w[0], v2 = w[1];
                int far = c(a, 4 + q) - 1 - i;
                std::vector<int> corners{vertex_id(a, u1, v1, c(a, u1) + i), vertex_id(a, u1, v2, c(a, u1) + i),
                                         vertex_id(a, u2, v2, c(a, u2) + i), vertex_id(a, u2, v1, c(a, u2) + i)};
                std::vector<BoundaryArc> sides{{a, u2, u1, c(a, u1) + i},
                                               {a, v1, v2, c(a, v2) + far},
                                               {a, u1, u2, c(a, u2) + i},
                                               {a, v2, v1, c(a, v1) + far}};
                out.corners.push_back(corners);
                arcs.push_back(sides);
                for (int s = 0; s < 4; ++s) arc_owner[sides[s]] = {id, s};
            }
    }

    const int p = static_cast<int>(out.pieces.size());
    UnionFind verts(total), comps(std::max(p, 1));
    out.neighbours.resize(p);
    for (int id = 0; id < p; ++id) {
        out.neighbours[id].assign(arcs[id].size(), {-1, -1});
        for (std::size_t s = 0; s < arcs[id].size(); ++s) {
            const BoundaryArc& arc = arcs[id][s];
            const Gluing* g = t.partner(arc.tet, arc.face);
            if (!g) continue;
            BoundaryArc there{g->tet, g->face, g->perm[arc.vertex], arc.index};
            auto it = arc_owner.find(there);
            if (it == arc_owner.end()) throw Error("not-admissible", "normal arcs do not match across a face");
            out.neighbours[id][s] = it->second;
            comps.unite(id, it->second[0]);
        }
    }
    for (int a = 0; a < n; ++a)
        for (int f = 0; f < 4; ++f) {
            const Gluing* g = t.partner(a, f);
            if (!g) continue;
            for (int x = 0; x < 4; ++x)
                for (int y = x + 1; y < 4; ++y) {
                    if (x == f || y == f) continue;
                    int e = tet_edge_index(x, y), e2 = tet_edge_index(g->perm[x], g->perm[y]);
                    if (weight[a][e] != weight[g->tet][e2]) throw Error("not-admissible", "edge weights disagree");
                    for (int pos = 0; pos < weight[a][e]; ++pos)
                        verts.unite(vertex_id(a, x, y, pos), vertex_id(g->tet, g->perm[x], g->perm[y], pos));
                }
        }
    std::vector<int> vclass(total);
    std::map<int, int> vids;
    for (int i = 0; i < total; ++i) vclass[i] = vids.try_emplace(verts.find(i), static_cast<int>(vids.size())).first->second;
    out.vertex_count = static_cast<int>(vids.size());
    for (auto& cs : out.corners)
        for (int& x : cs) x = vclass[x];

    std::map<int, int> comp_index;
    for (int id = 0; id < p; ++id) {
        auto [it, fresh] = comp_index.try_emplace(comps.find(id), static_cast<int>(out.components.size()));
        if (fresh) out.components.emplace_back();
        out.components[it->second].pieces.push_back(id);
    }
    for (auto& comp : out.components) {
        std::set<int> vs;
        int glued_sides = 0, free_sides = 0;
        for (int id : comp.pieces) {
            vs.insert(out.corners[id].begin(), out.corners[id].end());
            for (std::size_t s = 0; s < arcs[id].size(); ++s) {
                if (out.neighbours[id][s][0] >= 0) {
                    ++glued_sides;
                } else {
                    ++free_sides;
                    comp.boundary.push_back(arcs[id][s]);
                }
            }
        }
        std::sort(comp.boundary.begin(), comp.boundary.end());
        comp.vertices = static_cast<int>(vs.size());
        comp.edges = glued_sides / 2 + free_sides;
        comp.faces = static_cast<int>(comp.pieces.size());
        comp.euler = comp.vertices - comp.edges + comp.faces;
    }
    return out;
}

std::vector<BoundaryArcCount> parallel_curve(const Subdivision& sub) {
    const auto& s = sub.surface;
    const auto& marks = sub.marks;
    const int f = s.size();
    // parity union-find over the small triangles touching c
    std::vector<int> parent(f), parity(f, 0);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        int p = 0;
        while (parent[x] != x) {
            p ^= parity[x];
            x = parent[x];
        }
        return std::make_pair(x, p);
    };
    auto touches = [&](int t) { return marks.corner[t][0] || marks.corner[t][1] || marks.corner[t][2]; };
    for (int t = 0; t < f; ++t) {
        if (!touches(t)) continue;
        int on = marks.corner[t][0] + marks.corner[t][1] + marks.corner[t][2];
        if (on == 3) throw Error("internal", "triangle spanned by the curve");
        for (int k = 0; k < 3; ++k) {
            int a = (k + 1) % 3, b = (k + 2) % 3;
            int rel;
            if (marks.side[t][k]) {
                rel = 1;
            } else if (marks.corner[t][a] != marks.corner[t][b]) {
                rel = 0;
            } else {
                if (marks.corner[t][a]) throw Error("internal", "chord between curve vertices");
                continue;
            }
            int u = s.complex.sides[t][k].tri;
            auto [ra, pa] = find(t);
            auto [rb, pb] = find(u);
            if (ra == rb) {
                if ((pa ^ pb) != rel) throw Error("one-sided-curve", "the curve has a one-sided neighbourhood");
            } else {
                parent[rb] = ra;
                parity[rb] = pa ^ pb ^ rel;
            }
        }
    }
    if (marks.edges.empty()) throw Error("internal", "curve without edges");
    auto [root, side] = find(marks.edges[0].tri);
    std::vector<BoundaryArcCount> out;
    for (int t = 0; t < f; ++t) {
        const auto& bt = s.triangles[t];
        int cut = -1;
        if (touches(t)) {
            auto [r, p] = find(t);
            if (r != root) throw Error("internal", "curve neighbourhood is disconnected");
            if (p == side) {
                int on = marks.corner[t][0] + marks.corner[t][1] + marks.corner[t][2];
                for (int k = 0; k < 3; ++k)
                    if ((on == 1) == static_cast<bool>(marks.corner[t][k])) cut = k;
            }
        }
        for (int k = 0; k < 3; ++k) out.push_back({bt.tet, bt.face, bt.verts[k], k == cut ? 1 : 0});
    }
    return out;
}

bool is_spanning_disk(const NormalSurfaceComplex& surface, const std::vector<BoundaryArcCount>& target) {
    if (surface.components.size() != 1) return false;
    const auto& comp = surface.components[0];
    if (comp.euler != 1) return false;
    std::vector<BoundaryArc> want;
    for (const auto& b : target)
        for (int i = 0; i < b.count; ++i) want.push_back({b.tet, b.face, b.vertex, i});
    std::sort(want.begin(), want.end());
    return want == comp.boundary;
}

bool bounds_disk_in_boundary(const TriangleComplex& complex, const CurveMarks& marks) {
    TriangleComplex cut = complex;
    for (int t = 0; t < cut.size(); ++t)
        for (int k = 0; k < 3; ++k)
            if (marks.side[t][k]) {
                SideLink& l = cut.sides[t][k];
                if (l.tri >= 0) cut.sides[l.tri][l.side] = SideLink{};
                l = SideLink{};
            }
    auto summary = summarize(cut);
    for (const auto& comp : summary.components)
        if (comp.free_sides > 0 && comp.euler == 1) return true;
    return false;
}

bool bounds_disk_in_boundary(const BoundarySurface& s, const PLCurve& c) {
    auto sub = subdivide_surface(s, c);
    return bounds_disk_in_boundary(sub.complex, sub.marks);
}

bool homologically_essential(const Subdivision& sub) {
    constexpr std::uint64_t P = 2147483647;
    Skeleton sk = skeleton(sub.tri);
    using Row = std::vector<std::pair<int, std::uint64_t>>;
    auto make_row = [&](const std::map<int, long>& m) {
        Row r;
        for (auto [k, v] : m) {
            long x = ((v % static_cast<long>(P)) + static_cast<long>(P)) % static_cast<long>(P);
            if (x) r.push_back({k, static_cast<std::uint64_t>(x)});
        }
        return r;
    };
    auto add_edge = [&](std::map<int, long>& m, int a, int x, int y, long sign) {
        int e = tet_edge_index(x, y);
        long dir = x == kTetEdges[e][0] ? 1 : -1;
        m[sk.edge[a][e]] += sign * dir * sk.edge_sign[a][e];
    };
    auto inv = [&](std::uint64_t a) {
        std::uint64_t r = 1, e = P - 2;
        while (e) {
            if (e & 1) r = r * a % P;
            a = a * a % P;
            e >>= 1;
        }
        return r;
    };
    std::map<int, Row> pivots;  // leading column -> row with leading coefficient 1
    auto reduce = [&](Row r) {
        while (!r.empty()) {
            auto it = pivots.find(r[0].first);
            if (it == pivots.end()) break;
            std::uint64_t factor = r[0].second;
            Row out;
            std::size_t i = 0, j = 0;
            const Row& q = it->second;
            while (i < r.size() || j < q.size()) {
                if (j == q.size() || (i < r.size() && r[i].first < q[j].first)) {
                    out.push_back(r[i++]);
                } else {
                    std::uint64_t sub = factor * q[j].second % P;
                    if (i < r.size() && r[i].first == q[j].first) {
                        std::uint64_t v = (r[i].second + P - sub) % P;
                        if (v) out.push_back({r[i].first, v});
                        ++i;
                    } else {
                        out.push_back({q[j].first, (P - sub) % P});
                    }
                    ++j;
                }
            }
            r = std::move(out);
        }
        return r;
    };
    for (int f = 0; f < sk.face_count; ++f) {
        auto [a, face] = sk.face_rep[f];
        std::array<int, 3> v{};
        int k = 0;
        for (int x = 0; x < 4; ++x)
            if (x != face) v[k++] = x;
        std::map<int, long> m;
        add_edge(m, a, v[1], v[2], 1);
        add_edge(m, a, v[0], v[2], -1);
        add_edge(m, a, v[0], v[1], 1);
        Row r = reduce(make_row(m));
        if (r.empty()) continue;
        std::uint64_t s = inv(r[0].second);
        for (auto& [col, val] : r) val = val * s % P;
        pivots[r[0].first] = std::move(r);
    }
    std::map<int, long> z;
    for (const auto& e : sub.marks.edges) {
        const auto& bt = sub.surface.triangles[e.tri];
        int x = bt.verts[(e.side + 1) % 3], y = bt.verts[(e.side + 2) % 3];
        if (!e.forward) std::swap(x, y);
        add_edge(z, bt.tet, x, y, 1);
    }
    return !reduce(make_row(z)).empty();
}

namespace {

std::optional<std::vector<BoundaryArcCount>> try_parallel(const Subdivision& sub) {
    try {
        return parallel_curve(sub);
    } catch (const Error& e) {
        if (e.code() != "one-sided-curve") throw;
        return std::nullopt;
    }
}

}  // namespace

OracleAnswer simple_contractible(const Triangulation& m, const PLCurve& c, int bound) {
    if (bound < 1) throw Error("bad-bound", "bound must be at least one");
    OracleAnswer ans;
    ans.bound = bound;
    Subdivision sub = subdivide_along_curve(m, c);
    ans.boundary_status = bounds_disk_in_boundary(sub.surface.complex, sub.marks);
    auto target = try_parallel(sub);
    if (!target) {
        ans.negative = NegativeKind::Certified;
        ans.reason = "one-sided";
        return ans;
    }
    if (homologically_essential(sub)) {
        ans.negative = NegativeKind::Certified;
        ans.reason = "homology";
        return ans;
    }
    enumerate_admissible(
        sub.tri, bound,
        [&](const NormalVector& v) {
            if (!is_spanning_disk(build_surface(sub.tri, v), *target)) return true;
            ans.witness = v;
            return false;
        },
        &*target);
    if (ans.witness) {
        ans.contractible_in_M = true;
        ans.reason = "disk-found";
    } else if (ans.boundary_status) {
        ans.contractible_in_M = true;
        ans.reason = "boundary-disk";
    } else {
        ans.negative = NegativeKind::Bounded;
        ans.reason = "bound-exhausted";
    }
    if (ans.contractible_in_M && !ans.boundary_status) ans.returned_curve = c;
    return ans;
}

bool verify_disk_witness(const Triangulation& m, const PLCurve& c, const NormalVector& v) {
    Subdivision sub = subdivide_along_curve(m, c);
    auto target = try_parallel(sub);
    if (!target) return false;
    if (!is_admissible(sub.tri, v)) return false;
    return is_spanning_disk(build_surface(sub.tri, v), *target);
}

}  // namespace contract
