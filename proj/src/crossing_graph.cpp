#include "contract/crossing_graph.hpp"

#include "contract/error.hpp"

#include <algorithm>
#include <queue>

namespace contract {

CrossingGraph build_crossing_graph(const CombinatorialCurve& c, const std::vector<int>& x) {
    for (int v : x)
        if (!c.has_crossing(v)) throw Error("not-a-crossing", "X contains a point that is not a crossing of the curve");
    CrossingGraph g{c, {}, {}, {}, {}, 1};
    for (int v : c.crossings())
        if (std::find(x.begin(), x.end(), v) == x.end()) g.residual.push_back(v);
    std::vector<Event> ev;
    for (const auto& e : c.events())
        if (std::find(x.begin(), x.end(), e.crossing) != x.end()) ev.push_back(e);
    const Word& w = c.letters();
    if (ev.empty()) {
        g.edges.push_back({0, 0, w});
        return g;
    }
    std::vector<int> vertex_of(c.root().crossings.size(), -1);
    for (const auto& e : ev)
        if (vertex_of[e.crossing] < 0) {
            vertex_of[e.crossing] = static_cast<int>(g.crossings.size());
            g.crossings.push_back(e.crossing);
        }
    g.vertex_count = static_cast<int>(g.crossings.size());
    const int l = c.length();
    const int s = ev.front().junction;
    g.rho.assign(w.begin(), w.begin() + s + 1);
    Word rot(w.begin() + s + 1, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + s + 1);
    const int k = static_cast<int>(ev.size());
    for (int i = 0; i < k; ++i) {
        int from = (ev[i].junction - s + l) % l;
        int to = i + 1 < k ? (ev[i + 1].junction - s + l) % l : l;
        g.edges.push_back({vertex_of[ev[i].crossing], vertex_of[ev[(i + 1) % k].crossing],
                           Word(rot.begin() + from, rot.begin() + to)});
    }
    return g;
}

SpanningTree spanning_tree(const CrossingGraph& g) {
    SpanningTree t;
    const int nv = g.vertex_count;
    t.in_tree.assign(g.edges.size(), 0);
    t.parent_edge.assign(nv, -1);
    t.parent.assign(nv, -1);
    t.depth.assign(nv, -1);
    t.depth[0] = 0;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            const auto& ed = g.edges[e];
            int other;
            if (ed.from == u)
                other = ed.to;
            else if (ed.to == u)
                other = ed.from;
            else
                continue;
            if (t.depth[other] >= 0) continue;
            t.depth[other] = t.depth[u] + 1;
            t.parent[other] = u;
            t.parent_edge[other] = e;
            t.in_tree[e] = 1;
            q.push(other);
        }
    }
    for (int v = 0; v < nv; ++v)
        if (t.depth[v] < 0) throw Error("internal", "crossing graph is disconnected");
    return t;
}

Word root_path(const CrossingGraph& g, const SpanningTree& t, int v) {
    Word rev;
    while (v != t.root) {
        int e = t.parent_edge[v];
        // step from parent to v
        rev.push_back(g.edges[e].to == v && g.edges[e].from == t.parent[v] ? e + 1 : -(e + 1));
        v = t.parent[v];
    }
    return Word(rev.rbegin(), rev.rend());
}

std::vector<ElementaryCycle> elementary_cycles(const CrossingGraph& g, const SpanningTree& t) {
    std::vector<ElementaryCycle> out;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (t.in_tree[e]) continue;
        const auto& ed = g.edges[e];
        Word back = reduce(concat(invert(root_path(g, t, ed.to)), root_path(g, t, ed.from)));
        Word steps{e + 1};
        steps.insert(steps.end(), back.begin(), back.end());
        out.push_back({e, steps});
    }
    return out;
}

namespace {

int tail(const CrossingGraph& g, int letter) {
    const auto& e = g.edges[std::abs(letter) - 1];
    return letter > 0 ? e.from : e.to;
}

int head(const CrossingGraph& g, int letter) {
    const auto& e = g.edges[std::abs(letter) - 1];
    return letter > 0 ? e.to : e.from;
}

}  // namespace

ConjugationFormula walk_as_conjugate_product(const CrossingGraph& g, const SpanningTree& t, const Word& walk) {
    const int ne = static_cast<int>(g.edges.size());
    for (int a : walk)
        if (a == 0 || std::abs(a) > ne) throw Error("bad-walk", "walk uses an unknown edge");
    for (std::size_t i = 0; i < walk.size(); ++i)
        if (head(g, walk[i]) != tail(g, walk[(i + 1) % walk.size()]))
            throw Error("walk-not-closed", "edge walk is not a closed walk");
    auto cycles = elementary_cycles(g, t);
    std::vector<int> index(ne, -1);
    ConjugationFormula f;
    f.lhs = walk;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        index[cycles[i].edge] = static_cast<int>(i);
        f.curves.push_back(cycles[i].steps);
    }
    if (walk.empty()) return checked(f);
    Word base = invert(root_path(g, t, tail(g, walk.front())));
    for (int a : walk) {
        int e = std::abs(a) - 1;
        if (t.in_tree[e]) continue;
        Word conj = reduce(concat(base, root_path(g, t, g.edges[e].from)));
        f.terms.push_back({conj, index[e], a > 0 ? 1 : -1});
    }
    return checked(f);
}

Word edge_word_to_arcs(const CrossingGraph& g, const Word& edge_word) {
    Word out;
    for (int a : edge_word) {
        const Word& arcs = g.edges[std::abs(a) - 1].arcs;
        if (a > 0)
            out.insert(out.end(), arcs.begin(), arcs.end());
        else {
            Word inv = invert(arcs);
            out.insert(out.end(), inv.begin(), inv.end());
        }
    }
    return out;
}

ConjugationFormula formula_to_arcs(const CrossingGraph& g, const ConjugationFormula& f) {
    ConjugationFormula out;
    out.lhs = edge_word_to_arcs(g, f.lhs);
    for (const auto& c : f.curves) out.curves.push_back(edge_word_to_arcs(g, c));
    for (const auto& t : f.terms) out.terms.push_back({reduce(edge_word_to_arcs(g, t.conjugator)), t.curve, t.exponent});
    return checked(out);
}

CombinatorialCurve cycle_curve(const CrossingGraph& g, const ElementaryCycle& z) {
    return CombinatorialCurve(g.curve.root_ptr(), edge_word_to_arcs(g, z.steps));
}

Word curve_walk(const CrossingGraph& g) {
    Word w;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) w.push_back(e + 1);
    return w;
}

}  // namespace contract
