#include "contract/triangulation.hpp"

#include "contract/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

namespace contract {

Perm inverse(const Perm& p) {
    Perm q{};
    for (int i = 0; i < 4; ++i) q[p[i]] = i;
    return q;
}

bool is_permutation(const Perm& p) {
    std::array<int, 4> seen{};
    for (int v : p) {
        if (v < 0 || v > 3 || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

const Gluing* Triangulation::partner(int tet, int face) const {
    const auto& g = gluings[tet][face];
    if (!g) return nullptr;
    if (g->tet < 0 || g->tet >= size() || g->face < 0 || g->face > 3) return nullptr;
    const auto& back = gluings[g->tet][g->face];
    if (!back || back->tet != tet || back->face != face || back->perm != inverse(g->perm)) return nullptr;
    if (g->tet == tet && g->face == face) return nullptr;
    return &*g;
}

int tet_edge_index(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int e = 0; e < 6; ++e)
        if (kTetEdges[e][0] == a && kTetEdges[e][1] == b) return e;
    throw Error("internal", "not a tetrahedron edge");
}

namespace {

struct Token {
    std::string_view text;
    int column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::array<int, 3> other_vertices(int face) {
    std::array<int, 3> out{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != face) out[k++] = v;
    return out;
}

Gluing parse_entry(const Token& tok, int line, int tet, int face, int count) {
    std::string_view s = tok.text;
    auto c1 = s.find(':');
    auto c2 = c1 == std::string_view::npos ? c1 : s.find(':', c1 + 1);
    if (c2 == std::string_view::npos)
        throw ParseError("syntax-error", "expected 'bdry' or <tet>:<face>:<perm>", line, tok.column);
    Gluing g;
    if (!parse_int(s.substr(0, c1), g.tet) || !parse_int(s.substr(c1 + 1, c2 - c1 - 1), g.face))
        throw ParseError("syntax-error", "malformed gluing '" + std::string(s) + "'", line, tok.column);
    if (g.tet < 0 || g.tet >= count || g.face < 0 || g.face > 3)
        throw ParseError("out-of-range", "gluing target out of range", line, tok.column);
    std::string_view digits = s.substr(c2 + 1);
    if (digits.size() != 3)
        throw ParseError("not-a-permutation", "vertex bijection must have 3 letters", line, tok.column);
    auto from = other_vertices(face);
    g.perm[face] = g.face;
    for (int i = 0; i < 3; ++i) {
        if (digits[i] < '0' || digits[i] > '3')
            throw ParseError("not-a-permutation", "vertex bijection uses letters 0-3", line, tok.column);
        g.perm[from[i]] = digits[i] - '0';
    }
    if (!is_permutation(g.perm))
        throw ParseError("not-a-permutation", "vertex bijection is not a permutation onto the target face",
                         line, tok.column);
    if (g.tet == tet && g.face == face)
        throw ParseError("self-gluing", "face glued twice / self-gluing", line, tok.column);
    return g;
}

}  // namespace

Triangulation parse_triangulation(std::string_view text) {
    Triangulation tri;
    int count = -1;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty() || toks[0].text[0] == '#') {
            if (end == text.size()) break;
            continue;
        }
        if (count < 0) {
            if (toks.size() != 2 || toks[0].text != "tets")
                throw ParseError("syntax-error", "expected header 'tets <t>'", line_no, toks[0].column);
            if (!parse_int(toks[1].text, count) || count < 1)
                throw ParseError("syntax-error", "tetrahedron count must be a positive integer", line_no,
                                 toks[1].column);
            tri.gluings.reserve(count);
            tri.labels.reserve(count);
        } else {
            int tet = static_cast<int>(tri.gluings.size());
            if (tet >= count) throw ParseError("syntax-error", "more tetrahedron lines than declared", line_no, 1);
            if (toks.size() < 4 || toks.size() > 5)
                throw ParseError("syntax-error", "expected four face entries and an optional @label", line_no,
                                 toks[0].column);
            std::array<std::optional<Gluing>, 4> row;
            for (int f = 0; f < 4; ++f) {
                if (toks[f].text == "bdry") continue;
                row[f] = parse_entry(toks[f], line_no, tet, f, count);
            }
            std::string label;
            if (toks.size() == 5) {
                if (toks[4].text.size() < 2 || toks[4].text[0] != '@')
                    throw ParseError("syntax-error", "label must look like @name", line_no, toks[4].column);
                label = std::string(toks[4].text.substr(1));
            }
            tri.gluings.push_back(row);
            tri.labels.push_back(label);
        }
        if (end == text.size()) break;
    }
    if (count < 0) throw ParseError("syntax-error", "missing header 'tets <t>'", line_no, 1);
    if (static_cast<int>(tri.gluings.size()) != count)
        throw ParseError("syntax-error", "fewer tetrahedron lines than declared", line_no, 1);
    return tri;
}

std::string serialize_triangulation(const Triangulation& tri) {
    std::ostringstream out;
    out << "tets " << tri.size() << "\n";
    for (int t = 0; t < tri.size(); ++t) {
        for (int f = 0; f < 4; ++f) {
            if (f) out << ' ';
            const auto& g = tri.gluings[t][f];
            if (!g) {
                out << "bdry";
                continue;
            }
            out << g->tet << ':' << g->face << ':';
            for (int v : other_vertices(f)) out << g->perm[v];
        }
        if (t < static_cast<int>(tri.labels.size()) && !tri.labels[t].empty()) out << " @" << tri.labels[t];
        out << "\n";
    }
    return out.str();
}

namespace {

struct ParityUnionFind {
    std::vector<int> parent, parity;
    explicit ParityUnionFind(int n) : parent(n), parity(n, 0) { std::iota(parent.begin(), parent.end(), 0); }
    std::pair<int, int> find(int x) {
        int p = 0;
        int r = x;
        while (parent[r] != r) {
            p ^= parity[r];
            r = parent[r];
        }
        // path compression
        int cur = x, acc = p;
        while (parent[cur] != cur) {
            int next = parent[cur];
            int np = acc ^ parity[cur];
            parent[cur] = r;
            parity[cur] = acc;
            acc = np;
            cur = next;
        }
        return {r, p};
    }
    // Returns false on a parity conflict.
    bool unite(int a, int b, int rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == rel;
        if (ra < rb) {
            parent[rb] = ra;
            parity[rb] = pa ^ pb ^ rel;
        } else {
            parent[ra] = rb;
            parity[ra] = pa ^ pb ^ rel;
        }
        return true;
    }
};

struct PlainUnionFind {
    std::vector<int> parent;
    explicit PlainUnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
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

}  // namespace

Skeleton skeleton(const Triangulation& tri) {
    const int t = tri.size();
    Skeleton sk;
    PlainUnionFind verts(4 * t), faces(4 * t);
    ParityUnionFind edges(6 * t);
    std::vector<char> conflict_at(6 * t, 0);
    for (int a = 0; a < t; ++a) {
        for (int f = 0; f < 4; ++f) {
            const Gluing* g = tri.partner(a, f);
            if (!g) continue;
            faces.unite(4 * a + f, 4 * g->tet + g->face);
            for (int v = 0; v < 4; ++v)
                if (v != f) verts.unite(4 * a + v, 4 * g->tet + g->perm[v]);
            for (int e = 0; e < 6; ++e) {
                int i = kTetEdges[e][0], j = kTetEdges[e][1];
                if (i == f || j == f) continue;
                int pi = g->perm[i], pj = g->perm[j];
                int rel = pi > pj ? 1 : 0;
                if (!edges.unite(6 * a + e, 6 * g->tet + tet_edge_index(pi, pj), rel)) conflict_at[6 * a + e] = 1;
            }
        }
    }
    sk.vertex.resize(t);
    sk.edge.resize(t);
    sk.edge_sign.resize(t);
    sk.face.resize(t);
    std::map<int, int> vid, eid, fid;
    for (int a = 0; a < t; ++a) {
        for (int v = 0; v < 4; ++v) {
            int r = verts.find(4 * a + v);
            auto it = vid.try_emplace(r, static_cast<int>(vid.size())).first;
            sk.vertex[a][v] = it->second;
        }
        for (int e = 0; e < 6; ++e) {
            auto [r, p] = edges.find(6 * a + e);
            auto [it, fresh] = eid.try_emplace(r, static_cast<int>(eid.size()));
            if (fresh) sk.edge_rep.push_back({r / 6, r % 6});
            sk.edge[a][e] = it->second;
            sk.edge_sign[a][e] = p ? -1 : 1;
        }
        for (int f = 0; f < 4; ++f) {
            int r = faces.find(4 * a + f);
            auto [it, fresh] = fid.try_emplace(r, static_cast<int>(fid.size()));
            if (fresh) sk.face_rep.push_back({r / 4, r % 4});
            sk.face[a][f] = it->second;
        }
    }
    sk.vertex_count = static_cast<int>(vid.size());
    sk.edge_count = static_cast<int>(eid.size());
    sk.face_count = static_cast<int>(fid.size());
    sk.edge_reversed.assign(sk.edge_count, 0);
    for (int i = 0; i < 6 * t; ++i)
        if (conflict_at[i]) sk.edge_reversed[sk.edge[i / 6][i % 6]] = 1;
    return sk;
}

namespace {

std::string face_name(int tet, int face) { return "(" + std::to_string(tet) + "," + std::to_string(face) + ")"; }

std::vector<VertexLink> vertex_links(const Triangulation& tri, const Skeleton& sk) {
    const int t = tri.size();
    // link edge (a, v, f) -> 16 * a + 4 * v + f; link vertex (a, v, w) -> 16 * a + 4 * v + w
    PlainUnionFind ledges(16 * t), lverts(16 * t);
    std::vector<int> glued_edge(16 * t, 0);
    for (int a = 0; a < t; ++a) {
        for (int f = 0; f < 4; ++f) {
            const Gluing* g = tri.partner(a, f);
            if (!g) continue;
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                ledges.unite(16 * a + 4 * v + f, 16 * g->tet + 4 * g->perm[v] + g->face);
                glued_edge[16 * a + 4 * v + f] = 1;
                for (int w = 0; w < 4; ++w) {
                    if (w == v || w == f) continue;
                    lverts.unite(16 * a + 4 * v + w, 16 * g->tet + 4 * g->perm[v] + g->perm[w]);
                }
            }
        }
    }
    std::vector<VertexLink> links(sk.vertex_count);
    std::vector<std::map<int, int>> vset(sk.vertex_count), eset(sk.vertex_count);
    for (int c = 0; c < sk.vertex_count; ++c) links[c].vertex_class = c;
    for (int a = 0; a < t; ++a) {
        for (int v = 0; v < 4; ++v) {
            int c = sk.vertex[a][v];
            links[c].euler += 1;  // faces
            for (int w = 0; w < 4; ++w) {
                if (w == v) continue;
                vset[c][lverts.find(16 * a + 4 * v + w)] = 1;
                int e = ledges.find(16 * a + 4 * v + w);  // here w plays the role of the face
                eset[c][e] = 1;
                if (!glued_edge[16 * a + 4 * v + w]) links[c].closed = false;
            }
        }
    }
    for (int c = 0; c < sk.vertex_count; ++c) {
        auto& l = links[c];
        l.euler += static_cast<int>(vset[c].size()) - static_cast<int>(eset[c].size());
        l.sphere = l.closed && l.euler == 2;
        l.disk = !l.closed && l.euler == 1;
    }
    return links;
}

}  // namespace

ValidationReport validate_manifold(const Triangulation& tri) {
    ValidationReport report;
    const int t = tri.size();
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> sources;
    for (int a = 0; a < t; ++a)
        for (int f = 0; f < 4; ++f)
            if (const auto& g = tri.gluings[a][f]) sources[{g->tet, g->face}].push_back({a, f});
    for (auto& [target, from] : sources) {
        if (from.size() > 1) {
            Violation v{Check::FaceOveruse, "triangle " + face_name(target.first, target.second) +
                                                " is claimed by " + std::to_string(from.size()) + " faces",
                        {}};
            v.simplices.push_back({target.first, target.second});
            for (auto& s : from) v.simplices.push_back({s.first, s.second});
            report.violations.push_back(v);
            continue;
        }
        auto [a, f] = from.front();
        if (!tri.partner(a, f)) {
            report.violations.push_back({Check::FaceOveruse,
                                         "gluing " + face_name(a, f) + " -> " +
                                             face_name(target.first, target.second) + " is not reciprocated",
                                         {{a, f}, {target.first, target.second}}});
        }
    }
    Skeleton sk = skeleton(tri);
    for (int e = 0; e < sk.edge_count; ++e) {
        if (!sk.edge_reversed[e]) continue;
        auto rep = sk.edge_rep[e];
        report.violations.push_back({Check::ReversedEdge,
                                     "edge " + std::to_string(kTetEdges[rep[1]][0]) +
                                         std::to_string(kTetEdges[rep[1]][1]) + " of tetrahedron " +
                                         std::to_string(rep[0]) + " is identified with itself in reverse",
                                     {rep}});
    }
    report.links = vertex_links(tri, sk);
    for (const auto& l : report.links) {
        if (l.sphere || l.disk) continue;
        std::array<int, 2> rep{-1, -1};
        for (int a = 0; a < t && rep[0] < 0; ++a)
            for (int v = 0; v < 4; ++v)
                if (sk.vertex[a][v] == l.vertex_class) {
                    rep = {a, v};
                    break;
                }
        report.violations.push_back({Check::BadVertexLink,
                                     "link of vertex " + std::to_string(rep[1]) + " of tetrahedron " +
                                         std::to_string(rep[0]) + " has euler characteristic " +
                                         std::to_string(l.euler) + (l.closed ? " (closed)" : " (with boundary)"),
                                     {rep}});
    }
    report.is_manifold = report.violations.empty();
    return report;
}

int BoundarySurface::triangle_of(int tet, int face) const {
    for (int i = 0; i < size(); ++i)
        if (triangles[i].tet == tet && triangles[i].face == face) return i;
    return -1;
}

BoundarySurface boundary_surface(const Triangulation& tri) {
    BoundarySurface s;
    const int t = tri.size();
    std::vector<int> index(4 * t, -1);
    for (int a = 0; a < t; ++a)
        for (int f = 0; f < 4; ++f)
            if (tri.is_boundary_face(a, f)) {
                index[4 * a + f] = s.size();
                s.triangles.push_back({a, f, other_vertices(f)});
            }
    if (s.triangles.empty()) throw Error("empty-boundary", "triangulation has no boundary faces");
    s.complex.sides.resize(s.size());
    for (int id = 0; id < s.size(); ++id) {
        const auto& bt = s.triangles[id];
        for (int k = 0; k < 3; ++k) {
            int x = bt.verts[(k + 1) % 3], y = bt.verts[(k + 2) % 3];
            int a = bt.tet, f = bt.face;
            int steps = 0;
            while (true) {
                int g = 6 - x - y - f;
                if (tri.is_boundary_face(a, g)) {
                    f = g;
                    break;
                }
                const Gluing* p = tri.partner(a, g);
                x = p->perm[x];
                y = p->perm[y];
                f = p->face;
                a = p->tet;
                if (++steps > 4 * t + 4) throw Error("non-manifold", "boundary edge walk does not terminate");
            }
            int other = index[4 * a + f];
            const auto& ot = s.triangles[other];
            auto corner_of = [&](int v) {
                for (int c = 0; c < 3; ++c)
                    if (ot.verts[c] == v) return c;
                throw Error("internal", "corner lookup failed");
            };
            std::array<int, 3> cmap{-1, -1, -1};
            cmap[(k + 1) % 3] = corner_of(x);
            cmap[(k + 2) % 3] = corner_of(y);
            int other_side = 3 - cmap[(k + 1) % 3] - cmap[(k + 2) % 3];
            if (other == id && other_side == k) throw Error("non-manifold", "boundary edge glued to itself");
            s.complex.link(id, k, other, other_side, cmap);
        }
    }
    s.summary = summarize(s.complex);
    return s;
}

}  // namespace contract
