#include "contract/subdivision.hpp"

#include "contract/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

namespace contract {

namespace {

// Orientation with a floating-point filter and an exact fallback.
class Predicates {
public:
    explicit Predicates(const std::vector<Point2>& p) : p_(p) {
        for (const auto& q : p) {
            x_.push_back(q.x.get_d());
            y_.push_back(q.y.get_d());
        }
    }

    int orient(int a, int b, int c) const {
        double d = (x_[b] - x_[a]) * (y_[c] - y_[a]) - (y_[b] - y_[a]) * (x_[c] - x_[a]);
        if (d > 1e-12) return 1;
        if (d < -1e-12) return -1;
        return orientation(p_[a], p_[b], p_[c]);
    }

    double length(int a, int b) const {
        double dx = x_[b] - x_[a], dy = y_[b] - y_[a];
        return dx * dx + dx * dy + dy * dy;
    }

    bool between(int a, int b, int c) const {
        // c collinear with a, b: strictly inside the segment?
        const auto& pa = p_[a];
        const auto& pb = p_[b];
        const auto& pc = p_[c];
        if (pa.x != pb.x) return (pc.x - pa.x) * (pc.x - pb.x) < 0;
        return (pc.y - pa.y) * (pc.y - pb.y) < 0;
    }

private:
    const std::vector<Point2>& p_;
    std::vector<double> x_, y_;
};

bool on_border(const Point2& p) { return p.x == 0 || p.y == 0 || p.x + p.y == 1; }

struct EdgeFrame {
    const BoundarySurface& s;
    std::vector<std::array<int, 2>> reps;

    explicit EdgeFrame(const BoundarySurface& surf) : s(surf), reps(edge_representatives(surf)) {}

    int edge(int t, int k) const { return s.summary.edge_of_side[3 * t + k]; }

    // corner of (t, k) that plays the role of corner (rk+2)%3 of the representative
    int far_corner(int t, int k) const {
        auto [rt, rk] = reps[edge(t, k)];
        if (rt == t && rk == k) return (rk + 2) % 3;
        const SideLink& link = s.complex.sides[t][k];
        for (int c : {(k + 1) % 3, (k + 2) % 3})
            if (link.corner_map[c] == (rk + 2) % 3) return c;
        throw Error("internal", "edge representative not adjacent");
    }

    Rational position(int t, int k, const Point2& p) const { return barycentric(p)[far_corner(t, k)]; }

    Point2 point(int t, int k, const Rational& pos) const {
        std::array<Rational, 3> l{0, 0, 0};
        int c = far_corner(t, k);
        l[c] = pos;
        l[3 - k - c] = 1 - pos;
        return {l[0], l[1]};
    }
};

int find_point(const std::vector<Point2>& pts, const Point2& p) {
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
        if (pts[i] == p) return i;
    throw Error("internal", "curve vertex missing from its patch");
}

Point2 canonical(Point2 p) {
    p.x.canonicalize();
    p.y.canonicalize();
    return p;
}

}  // namespace

void require_simple(const BoundarySurface& s, const PLCurve& c) {
    auto x = compute_crossings(s, c);
    if (!x.general_position || x.size() > 0) throw Error("curve-not-simple", "the curve has self-intersections");
}

std::vector<std::array<int, 3>> triangulate_points(const std::vector<Point2>& points,
                                                   const std::vector<std::array<int, 2>>& constraints) {
    const int n = static_cast<int>(points.size());
    Predicates pr(points);
    std::vector<char> adj(n * n, 0);
    std::vector<std::array<int, 2>> accepted;
    auto blocked = [&](int a, int b) {
        for (int c = 0; c < n; ++c)
            if (c != a && c != b && pr.orient(a, b, c) == 0 && pr.between(a, b, c)) return true;
        for (const auto& e : accepted) {
            if (e[0] == a || e[0] == b || e[1] == a || e[1] == b) continue;
            if (pr.orient(a, b, e[0]) * pr.orient(a, b, e[1]) < 0 && pr.orient(e[0], e[1], a) * pr.orient(e[0], e[1], b) < 0)
                return true;
        }
        return false;
    };
    auto accept = [&](int a, int b) {
        adj[a * n + b] = adj[b * n + a] = 1;
        accepted.push_back({a, b});
    };
    for (auto [a, b] : constraints) {
        if (blocked(a, b)) throw Error("internal", "constraint segments cross or pass through a point");
        accept(a, b);
    }
    std::vector<std::tuple<double, int, int>> cand;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!adj[a * n + b]) cand.push_back({pr.length(a, b), a, b});
    std::sort(cand.begin(), cand.end());
    for (auto [len, a, b] : cand)
        if (!blocked(a, b)) accept(a, b);

    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (!adj[a * n + b]) continue;
            for (int c = b + 1; c < n; ++c) {
                if (!adj[a * n + c] || !adj[b * n + c]) continue;
                int o = pr.orient(a, b, c);
                if (o == 0) continue;
                bool empty = true;
                for (int d = 0; d < n && empty; ++d) {
                    if (d == a || d == b || d == c) continue;
                    if (pr.orient(a, b, d) == o && pr.orient(b, c, d) == o && pr.orient(c, a, d) == o) empty = false;
                }
                if (!empty) continue;
                out.push_back(o > 0 ? std::array<int, 3>{a, b, c} : std::array<int, 3>{a, c, b});
            }
        }
    int hull = 0;
    for (const auto& p : points) hull += on_border(p) ? 1 : 0;
    if (static_cast<int>(out.size()) != 2 * n - hull - 2) throw Error("internal", "greedy triangulation is incomplete");
    return out;
}

SurfaceSubdivision subdivide_surface(const BoundarySurface& s, const PLCurve& c0) {
    PLCurve c = c0;
    for (auto& q : c.points) q.p = canonical(q.p);
    require_simple(s, c);
    auto segs = curve_segments(s, c);
    EdgeFrame frame(s);

    std::vector<std::set<Rational>> on_edge(s.summary.edge_count), all_edge(s.summary.edge_count);
    for (const auto& q : c.points) {
        int k = edge_of_point(q.p);
        if (k >= 0) on_edge[frame.edge(q.tri, k)].insert(frame.position(q.tri, k, q.p));
    }
    for (int e = 0; e < s.summary.edge_count; ++e) {
        all_edge[e] = on_edge[e];
        for (auto it = on_edge[e].begin(); it != on_edge[e].end() && std::next(it) != on_edge[e].end(); ++it)
            all_edge[e].insert((*it + *std::next(it)) / 2);
    }

    SurfaceSubdivision out;
    out.patches.resize(s.size());
    for (int t = 0; t < s.size(); ++t) {
        FacePatch& p = out.patches[t];
        p.points = {{1, 0}, {0, 1}, {0, 0}};
        p.on_curve = {0, 0, 0};
        for (int k = 0; k < 3; ++k) {
            int e = frame.edge(t, k);
            for (const auto& pos : all_edge[e]) {
                p.points.push_back(frame.point(t, k, pos));
                p.on_curve.push_back(on_edge[e].count(pos) ? 1 : 0);
            }
        }
        for (const auto& q : c.points)
            if (q.tri == t && edge_of_point(q.p) < 0) {
                p.points.push_back(q.p);
                p.on_curve.push_back(1);
            }
        for (const auto& sg : segs)
            if (sg.tri == t) {
                int a = find_point(p.points, sg.a), b = find_point(p.points, sg.b);
                p.curve_edges.push_back({std::min(a, b), std::max(a, b)});
            }
        std::set<std::array<int, 2>> constraint(p.curve_edges.begin(), p.curve_edges.end());
        for (int round = 0;; ++round) {
            if (round > 64) throw Error("internal", "subdivision does not settle");
            p.triangles = triangulate_points(p.points, p.curve_edges);
            std::vector<Point2> extra;
            for (const auto& tr : p.triangles) {
                if (p.on_curve[tr[0]] && p.on_curve[tr[1]] && p.on_curve[tr[2]]) {
                    const auto &a = p.points[tr[0]], &b = p.points[tr[1]], &d = p.points[tr[2]];
                    extra.push_back({(a.x + b.x + d.x) / 3, (a.y + b.y + d.y) / 3});
                    continue;
                }
                for (int k = 0; k < 3; ++k) {
                    int a = tr[(k + 1) % 3], b = tr[(k + 2) % 3];
                    if (p.on_curve[a] && p.on_curve[b] && !constraint.count({std::min(a, b), std::max(a, b)}))
                        extra.push_back({(p.points[a].x + p.points[b].x) / 2, (p.points[a].y + p.points[b].y) / 2});
                }
            }
            if (extra.empty()) break;
            std::sort(extra.begin(), extra.end());
            extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
            for (const auto& x : extra) {
                p.points.push_back(x);
                p.on_curve.push_back(0);
            }
        }
        for (int i = 0; i < static_cast<int>(p.triangles.size()); ++i) out.origin.push_back({t, i});
    }

    const int f = static_cast<int>(out.origin.size());
    out.complex.sides.assign(f, {});
    out.marks.corner.assign(f, {0, 0, 0});
    out.marks.side.assign(f, {0, 0, 0});
    std::vector<int> first(s.size() + 1, 0);
    for (int t = 0; t < s.size(); ++t) first[t + 1] = first[t] + static_cast<int>(out.patches[t].triangles.size());

    struct End {
        int tri, side;
        Rational a, b;  // identities of corners (side+1)%3 and (side+2)%3
    };
    std::map<std::tuple<int, int, Rational, Rational>, std::vector<End>> sides;
    for (int g = 0; g < f; ++g) {
        auto [t, i] = out.origin[g];
        const FacePatch& p = out.patches[t];
        const auto& tr = p.triangles[i];
        std::set<std::array<int, 2>> constraint(p.curve_edges.begin(), p.curve_edges.end());
        for (int k = 0; k < 3; ++k) {
            out.marks.corner[g][k] = p.on_curve[tr[k]];
            int a = tr[(k + 1) % 3], b = tr[(k + 2) % 3];
            out.marks.side[g][k] = constraint.count({std::min(a, b), std::max(a, b)}) ? 1 : 0;
            auto la = barycentric(p.points[a]), lb = barycentric(p.points[b]);
            int along = -1;
            for (int j = 0; j < 3; ++j)
                if (la[j] == 0 && lb[j] == 0) along = j;
            if (along >= 0) {
                Rational pa = frame.position(t, along, p.points[a]), pb = frame.position(t, along, p.points[b]);
                sides[{1, frame.edge(t, along), std::min(pa, pb), std::max(pa, pb)}].push_back({g, k, pa, pb});
            } else {
                sides[{0, t, Rational(std::min(a, b)), Rational(std::max(a, b))}].push_back({g, k, Rational(a), Rational(b)});
            }
        }
    }
    for (const auto& [key, ends] : sides) {
        if (ends.size() != 2) throw Error("internal", "subdivided side without a partner");
        const End &x = ends[0], &y = ends[1];
        std::array<int, 3> cmap{-1, -1, -1};
        bool same = x.a == y.a;
        cmap[(x.side + 1) % 3] = same ? (y.side + 1) % 3 : (y.side + 2) % 3;
        cmap[(x.side + 2) % 3] = same ? (y.side + 2) % 3 : (y.side + 1) % 3;
        out.complex.link(x.tri, x.side, y.tri, y.side, cmap);
    }
    out.summary = summarize(out.complex);

    for (const auto& sg : segs) {
        const FacePatch& p = out.patches[sg.tri];
        int a = find_point(p.points, sg.a), b = find_point(p.points, sg.b);
        bool found = false;
        for (int i = 0; i < static_cast<int>(p.triangles.size()) && !found; ++i) {
            const auto& tr = p.triangles[i];
            for (int k = 0; k < 3; ++k) {
                int u = tr[(k + 1) % 3], v = tr[(k + 2) % 3];
                if ((u == a && v == b) || (u == b && v == a)) {
                    out.marks.edges.push_back({first[sg.tri] + i, k, u == a});
                    found = true;
                    break;
                }
            }
        }
        if (!found) throw Error("internal", "curve segment is not an edge of the subdivision");
    }
    return out;
}

Subdivision subdivide_along_curve(const Triangulation& t, const PLCurve& c) {
    if (!validate_manifold(t).is_manifold) throw Error("not-a-manifold", "triangulation fails validation");
    BoundarySurface s = boundary_surface(t);
    SurfaceSubdivision sub = subdivide_surface(s, c);
    Skeleton sk = skeleton(t);
    const int n = t.size();

    std::vector<std::set<Rational>> edge_points(sk.edge_count);
    for (int b = 0; b < s.size(); ++b) {
        const auto& bt = s.triangles[b];
        for (const auto& p : sub.patches[b].points) {
            auto l = barycentric(p);
            for (int k = 0; k < 3; ++k) {
                if (l[k] != 0 || l[(k + 1) % 3] == 0 || l[(k + 2) % 3] == 0) continue;
                int e = tet_edge_index(bt.verts[(k + 1) % 3], bt.verts[(k + 2) % 3]);
                int hi = kTetEdges[e][1];
                Rational sl = hi == bt.verts[(k + 1) % 3] ? l[(k + 1) % 3] : l[(k + 2) % 3];
                edge_points[sk.edge[bt.tet][e]].insert(sk.edge_sign[bt.tet][e] > 0 ? sl : 1 - sl);
            }
        }
    }

    auto face_verts = [](int f) {
        std::array<int, 3> v{};
        int i = 0;
        for (int x = 0; x < 4; ++x)
            if (x != f) v[i++] = x;
        return v;
    };
    struct FaceSub {
        std::vector<std::array<Rational, 4>> pts;
        std::vector<std::array<int, 3>> tris;
        std::vector<char> on_curve;
        int patch = -1;
    };
    std::vector<std::array<FaceSub, 4>> faces(n);
    for (int a = 0; a < n; ++a)
        for (int f = 0; f < 4; ++f) {
            auto fv = face_verts(f);
            FaceSub& fs = faces[a][f];
            if (t.is_boundary_face(a, f)) {
                fs.patch = s.triangle_of(a, f);
                const FacePatch& p = sub.patches[fs.patch];
                for (const auto& q : p.points) {
                    auto l = barycentric(q);
                    std::array<Rational, 4> w{0, 0, 0, 0};
                    for (int i = 0; i < 3; ++i) w[fv[i]] = l[i];
                    fs.pts.push_back(w);
                }
                fs.tris = p.triangles;
                fs.on_curve = p.on_curve;
                continue;
            }
            auto rep = sk.face_rep[sk.face[a][f]];
            if (rep[0] != a || rep[1] != f) continue;
            std::vector<Point2> flat;
            auto add = [&](const std::array<Rational, 4>& w) {
                fs.pts.push_back(w);
                flat.push_back({w[fv[0]], w[fv[1]]});
            };
            for (int i = 0; i < 3; ++i) {
                std::array<Rational, 4> w{0, 0, 0, 0};
                w[fv[i]] = 1;
                add(w);
            }
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    int e = tet_edge_index(fv[i], fv[j]);
                    for (const auto& sv : edge_points[sk.edge[a][e]]) {
                        Rational sl = sk.edge_sign[a][e] > 0 ? sv : 1 - sv;
                        std::array<Rational, 4> w{0, 0, 0, 0};
                        w[kTetEdges[e][1]] = sl;
                        w[kTetEdges[e][0]] = 1 - sl;
                        add(w);
                    }
                }
            fs.tris = triangulate_points(flat, {});
        }
    for (int a = 0; a < n; ++a)
        for (int f = 0; f < 4; ++f) {
            if (t.is_boundary_face(a, f)) continue;
            auto rep = sk.face_rep[sk.face[a][f]];
            if (rep[0] == a && rep[1] == f) continue;
            const Gluing* g = t.partner(a, f);
            const FaceSub& from = faces[g->tet][g->face];
            FaceSub& fs = faces[a][f];
            for (const auto& wb : from.pts) {
                std::array<Rational, 4> w{0, 0, 0, 0};
                for (int x = 0; x < 4; ++x)
                    if (x != f) w[x] = wb[g->perm[x]];
                fs.pts.push_back(w);
            }
            fs.tris = from.tris;
        }

    // cone tetrahedra
    std::vector<std::array<TetPoint, 4>> where;
    std::vector<std::array<int, 3>> source;  // (tet, face, triangle)
    std::vector<std::array<std::vector<int>, 4>> cone(n);
    std::array<Rational, 4> centre{Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
    for (int a = 0; a < n; ++a)
        for (int f = 0; f < 4; ++f) {
            const FaceSub& fs = faces[a][f];
            for (int i = 0; i < static_cast<int>(fs.tris.size()); ++i) {
                const auto& tr = fs.tris[i];
                cone[a][f].push_back(static_cast<int>(where.size()));
                where.push_back({TetPoint{a, centre}, TetPoint{a, fs.pts[tr[0]]}, TetPoint{a, fs.pts[tr[1]]},
                                 TetPoint{a, fs.pts[tr[2]]}});
                source.push_back({a, f, i});
            }
        }
    const int m = static_cast<int>(where.size());
    std::vector<std::array<std::optional<Gluing>, 4>> glue(m);
    for (int a = 0; a < n; ++a)
        for (int f = 0; f < 4; ++f) {
            const Gluing* g = t.partner(a, f);
            if (!g) continue;
            for (std::size_t i = 0; i < cone[a][f].size(); ++i)
                glue[cone[a][f][i]][0] = Gluing{cone[g->tet][g->face][i], 0, {0, 1, 2, 3}};
        }
    std::map<std::tuple<int, std::array<Rational, 4>, std::array<Rational, 4>>, std::vector<std::array<int, 2>>> inner;
    for (int x = 0; x < m; ++x)
        for (int k = 1; k < 4; ++k) {
            const auto& p = where[x][k == 1 ? 2 : 1].w;
            const auto& q = where[x][k == 3 ? 2 : 3].w;
            inner[{where[x][0].tet, std::min(p, q), std::max(p, q)}].push_back({x, k});
        }
    for (const auto& [key, ends] : inner) {
        if (ends.size() != 2) throw Error("internal", "cone face without a partner");
        for (int side = 0; side < 2; ++side) {
            auto [x, k] = ends[side];
            auto [y, l] = ends[1 - side];
            Perm perm{0, -1, -1, -1};
            perm[k] = l;
            for (int i = 1; i < 4; ++i) {
                if (i == k) continue;
                for (int j = 1; j < 4; ++j)
                    if (j != l && where[y][j].w == where[x][i].w) perm[i] = j;
            }
            glue[x][k] = Gluing{y, l, perm};
        }
    }

    // breadth-first renumbering from the tetrahedra touching c
    std::vector<int> order, new_of(m, -1);
    std::queue<int> queue;
    for (int x = 0; x < m; ++x) {
        auto [a, f, i] = source[x];
        const FaceSub& fs = faces[a][f];
        if (fs.patch < 0) continue;
        const auto& tr = fs.tris[i];
        if (fs.on_curve[tr[0]] || fs.on_curve[tr[1]] || fs.on_curve[tr[2]]) {
            new_of[x] = static_cast<int>(order.size());
            order.push_back(x);
            queue.push(x);
        }
    }
    for (int seed = 0; seed <= m; ++seed) {
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop();
            for (int k = 0; k < 4; ++k)
                if (glue[x][k] && new_of[glue[x][k]->tet] < 0) {
                    int y = glue[x][k]->tet;
                    new_of[y] = static_cast<int>(order.size());
                    order.push_back(y);
                    queue.push(y);
                }
        }
        if (seed < m && new_of[seed] < 0) {
            new_of[seed] = static_cast<int>(order.size());
            order.push_back(seed);
            queue.push(seed);
        }
    }

    Subdivision out;
    out.tri.gluings.resize(m);
    out.tri.labels.resize(m);
    out.where.resize(m);
    for (int x = 0; x < m; ++x) {
        int nx = new_of[x];
        out.where[nx] = where[x];
        for (int k = 0; k < 4; ++k)
            if (glue[x][k]) out.tri.gluings[nx][k] = Gluing{new_of[glue[x][k]->tet], glue[x][k]->face, glue[x][k]->perm};
    }
    out.surface = boundary_surface(out.tri);
    const int bs = out.surface.size();
    out.marks.corner.assign(bs, {0, 0, 0});
    out.marks.side.assign(bs, {0, 0, 0});
    out.patch_of.assign(bs, -1);
    std::map<std::array<int, 2>, int> small_of;  // (patch, triangle) -> subdivided-surface triangle
    for (int g = 0; g < static_cast<int>(sub.origin.size()); ++g) small_of[sub.origin[g]] = g;
    std::vector<int> surface_of_small(sub.origin.size(), -1);
    for (int b = 0; b < bs; ++b) {
        const auto& bt = out.surface.triangles[b];
        if (bt.face != 0) throw Error("internal", "boundary of T' off a cone base");
        auto [a, f, i] = source[order[bt.tet]];
        int patch = faces[a][f].patch;
        int g = small_of.at({patch, i});
        surface_of_small[g] = b;
        out.patch_of[b] = patch;
        out.marks.corner[b] = sub.marks.corner[g];
        out.marks.side[b] = sub.marks.side[g];
    }
    for (auto e : sub.marks.edges) {
        e.tri = surface_of_small[e.tri];
        out.marks.edges.push_back(e);
    }
    return out;
}

}  // namespace contract
