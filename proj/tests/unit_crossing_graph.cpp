#include "contract/crossing_graph.hpp"
#include "contract/error.hpp"
#include "oracles/fixtures.hpp"
#include "oracles/independent.hpp"

#include <doctest.h>

#include <set>

using namespace contract;

namespace {

CombinatorialCurve random_curve(std::mt19937& rng, const BoundarySurface& s, int lo, int hi) {
    auto root = make_root(s, fixture::random_curve_with_crossings(rng, s, 0, lo, hi));
    return CombinatorialCurve::whole(root);
}

std::vector<int> random_subset(std::mt19937& rng, const std::vector<int>& all) {
    std::vector<int> out;
    for (int x : all)
        if (rng() & 1) out.push_back(x);
    return out;
}

std::vector<int> degrees(const CrossingGraph& g) {
    std::vector<int> d(g.vertex_count, 0);
    for (const auto& e : g.edges) {
        ++d[e.from];
        ++d[e.to];
    }
    return d;
}

// Vertices visited by a cycle, starting at the tail of its first step.
std::vector<int> cycle_vertices(const CrossingGraph& g, const Word& steps) {
    std::vector<int> out;
    for (int a : steps) {
        const auto& e = g.edges[std::abs(a) - 1];
        out.push_back(a > 0 ? e.from : e.to);
    }
    return out;
}

}  // namespace

TEST_CASE("figure-eight with its crossing: one vertex, two loops") {
    auto s = boundary_surface(fixture::ball());
    auto c = CombinatorialCurve::whole(make_root(s, fixture::figure_eight(1)));
    auto g = build_crossing_graph(c, c.crossings());
    CHECK(g.vertex_count == 1);
    REQUIRE(g.edges.size() == 2);
    for (const auto& e : g.edges) {
        CHECK(e.from == 0);
        CHECK(e.to == 0);
    }
    CHECK(degrees(g) == std::vector<int>{4});
    auto t = spanning_tree(g);
    CHECK(std::count(t.in_tree.begin(), t.in_tree.end(), 1) == 0);
    auto cycles = elementary_cycles(g, t);
    REQUIRE(cycles.size() == 2);
    CHECK(cycles[0].steps == Word{1});
    CHECK(cycles[1].steps == Word{2});
    CHECK_THROWS_AS(build_crossing_graph(c, {5}), Error);
}

TEST_CASE("empty X gives one cycle equal to the curve") {
    std::mt19937 rng(8);
    auto s = boundary_surface(fixture::ball());
    auto c = random_curve(rng, s, 2, 4);
    auto g = build_crossing_graph(c, {});
    CHECK(g.vertex_count == 1);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].arcs == c.letters());
    CHECK(g.residual == c.crossings());
    auto cycles = elementary_cycles(g, spanning_tree(g));
    REQUIRE(cycles.size() == 1);
    CHECK(cycle_curve(g, cycles[0]).letters() == c.letters());
}

TEST_CASE("random G_X: four-valent, arcs concatenate to the curve, cycle counts and simplicity") {
    std::mt19937 rng(21);
    auto s = boundary_surface(fixture::ball());
    for (int iter = 0; iter < 60; ++iter) {
        auto c = random_curve(rng, s, 1, 6);
        auto x = iter % 3 == 0 ? c.crossings() : random_subset(rng, c.crossings());
        auto g = build_crossing_graph(c, x);
        if (!x.empty()) {
            CHECK(g.vertex_count == static_cast<int>(x.size()));
            for (int d : degrees(g)) CHECK(d == 4);
        }
        Word whole = concat({g.rho, edge_word_to_arcs(g, curve_walk(g)), invert(g.rho)});
        CHECK(oracle::free_reduce(whole) == oracle::free_reduce(c.letters()));
        // residual crossings sit on edges; for X = C there are none
        if (x.size() == c.crossings().size()) CHECK(g.residual.empty());
        auto t = spanning_tree(g);
        auto t2 = spanning_tree(g);
        CHECK(t.in_tree == t2.in_tree);
        auto cycles = elementary_cycles(g, t);
        CHECK(cycles.size() == g.edges.size() - g.vertex_count + 1);
        for (const auto& z : cycles) {
            int non_tree = 0;
            for (int a : z.steps) non_tree += t.in_tree[std::abs(a) - 1] ? 0 : 1;
            CHECK(non_tree == 1);
            auto vs = cycle_vertices(g, z.steps);
            CHECK(std::set<int>(vs.begin(), vs.end()).size() == vs.size());
            // the cycle traces a valid curve whose crossings avoid X
            auto cc = cycle_curve(g, z);
            for (int v : cc.crossings()) CHECK(std::find(x.begin(), x.end(), v) == x.end());
        }
    }
}

TEST_CASE("theta graph: two cycles of two edges") {
    auto s = boundary_surface(fixture::ball());
    auto c = CombinatorialCurve::whole(make_root(s, fixture::figure_eight(0)));
    CrossingGraph g{c, {}, {{0, 1, {}}, {0, 1, {}}, {0, 1, {}}}, {}, {}, 2};
    auto t = spanning_tree(g);
    auto cycles = elementary_cycles(g, t);
    REQUIRE(cycles.size() == 2);
    for (const auto& z : cycles) CHECK(z.steps.size() == 2);
}

TEST_CASE("walks as conjugate products of elementary cycles") {
    std::mt19937 rng(4242);
    auto s = boundary_surface(fixture::ball());
    int walks = 0;
    for (int iter = 0; iter < 100; ++iter) {
        auto c = random_curve(rng, s, 1, 6);
        auto x = c.crossings();
        x.resize(1 + rng() % x.size());
        auto g = build_crossing_graph(c, x);
        auto t = spanning_tree(g);
        auto cycles = elementary_cycles(g, t);
        // the curve itself
        auto f = walk_as_conjugate_product(g, t, curve_walk(g));
        CHECK(oracle::formula_holds(f));
        for (const auto& term : f.terms) CHECK(f.curves[term.curve] == cycles[term.curve].steps);
        // one cycle: a single term with trivial conjugator
        auto one = walk_as_conjugate_product(g, t, cycles[0].steps);
        REQUIRE(one.terms.size() == 1);
        CHECK(one.terms[0].conjugator.empty());
        // a random closed walk of length at most 12
        for (int tries = 0; tries < 200; ++tries) {
            int len = 1 + rng() % 12;
            int start = rng() % g.vertex_count, at = start;
            Word w;
            for (int k = 0; k < len; ++k) {
                std::vector<int> options;
                for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
                    if (g.edges[e].from == at) options.push_back(e + 1);
                    if (g.edges[e].to == at) options.push_back(-(e + 1));
                }
                int a = options[rng() % options.size()];
                w.push_back(a);
                const auto& e = g.edges[std::abs(a) - 1];
                at = a > 0 ? e.to : e.from;
            }
            if (at != start) continue;
            auto fw = walk_as_conjugate_product(g, t, w);
            CHECK(oracle::formula_holds(fw));
            // and in the arc alphabet of the curve
            CHECK(oracle::formula_holds(formula_to_arcs(g, fw)));
            ++walks;
            break;
        }
    }
    CHECK(walks >= 50);
}

TEST_CASE("walk errors") {
    auto s = boundary_surface(fixture::ball());
    std::mt19937 rng(2);
    auto c = random_curve(rng, s, 2, 2);
    auto g = build_crossing_graph(c, c.crossings());
    auto t = spanning_tree(g);
    try {
        walk_as_conjugate_product(g, t, Word{99});
        FAIL("expected bad-walk");
    } catch (const Error& e) {
        CHECK(e.code() == "bad-walk");
    }
    // an edge between distinct vertices alone is not closed
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (g.edges[e].from != g.edges[e].to) {
            try {
                walk_as_conjugate_product(g, t, Word{e + 1});
                FAIL("expected walk-not-closed");
            } catch (const Error& err) {
                CHECK(err.code() == "walk-not-closed");
            }
            break;
        }
}
