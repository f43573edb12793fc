#include "contract/error.hpp"
#include "contract/normal.hpp"
#include "oracles/fixtures.hpp"
#include "oracles/independent.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace contract;

namespace {

const char* kTwoGlued = "tets 2\n1:0:123 bdry bdry bdry\n0:0:123 bdry bdry bdry\n";

std::string error_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

std::vector<NormalVector> collect(const Triangulation& t, int bound) {
    std::vector<NormalVector> out;
    enumerate_admissible(t, bound, [&](const NormalVector& v) {
        out.push_back(v);
        return true;
    });
    return out;
}

// Brute force over all vectors: quad condition and arc counts equal across every glued face.
std::vector<std::vector<int>> brute_admissible(const Triangulation& t, int bound) {
    const int n = 7 * t.size();
    std::vector<std::vector<int>> out;
    std::vector<int> x(n, 0);
    const int quad_of[4][4] = {{-1, 0, 1, 2}, {0, -1, 2, 1}, {1, 2, -1, 0}, {2, 1, 0, -1}};
    while (true) {
        bool ok = std::any_of(x.begin(), x.end(), [](int v) { return v != 0; });
        for (int a = 0; a < t.size() && ok; ++a) {
            int q = (x[7 * a + 4] > 0) + (x[7 * a + 5] > 0) + (x[7 * a + 6] > 0);
            if (q > 1) ok = false;
            for (int f = 0; f < 4 && ok; ++f)
                if (auto* g = t.partner(a, f))
                    for (int v = 0; v < 4; ++v)
                        if (v != f &&
                            x[7 * a + v] + x[7 * a + 4 + quad_of[v][f]] !=
                                x[7 * g->tet + g->perm[v]] + x[7 * g->tet + 4 + quad_of[g->perm[v]][g->face]])
                            ok = false;
        }
        if (ok) out.push_back(x);
        int i = n - 1;
        while (i >= 0 && x[i] == bound) x[i--] = 0;
        if (i < 0) break;
        ++x[i];
    }
    return out;
}

Point2 kStart{Rational(1, 7), Rational(2, 11)};

// Every segment of c joins two vertices of one tetrahedron of T', by exact coordinates.
bool segments_in_skeleton(const Triangulation& m, const PLCurve& c, const Subdivision& sub) {
    auto s = boundary_surface(m);
    auto segs = curve_segments(s, c);
    for (const auto& sg : segs) {
        const auto& bt = s.triangles[sg.tri];
        auto embed = [&](const Point2& p) {
            auto l = barycentric(p);
            std::array<Rational, 4> w{0, 0, 0, 0};
            for (int i = 0; i < 3; ++i) w[bt.verts[i]] = l[i];
            return TetPoint{bt.tet, w};
        };
        TetPoint a = embed(sg.a), b = embed(sg.b);
        bool found = false;
        for (const auto& tet : sub.where) {
            bool ha = false, hb = false;
            for (const auto& p : tet) {
                ha = ha || p == a;
                hb = hb || p == b;
            }
            if (ha && hb) found = true;
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("matching system dimensions") {
    auto free_tet = matching_system(fixture::ball());
    CHECK(free_tet.variables == 7);
    CHECK(free_tet.equations.empty());
    CHECK(free_tet.quad_groups.size() == 1);

    auto two = parse_triangulation(kTwoGlued);
    auto sys = matching_system(two);
    // independent incidence count: glued face pairs times three arc types
    int glued = 0;
    for (int a = 0; a < two.size(); ++a)
        for (int f = 0; f < 4; ++f) glued += two.partner(a, f) ? 1 : 0;
    CHECK(static_cast<int>(sys.equations.size()) == glued / 2 * 3);
    CHECK(sys.variables == 14);

    NormalVector bad{{0, 0, 0, 0, 1, 1, 0}};
    CHECK_FALSE(satisfies_quad_condition(bad));
    CHECK_FALSE(is_admissible(fixture::ball(), bad));
    CHECK(is_admissible(fixture::ball(), NormalVector{{0, 0, 0, 0, 0, 2, 0}}));
}

TEST_CASE("enumeration on a free tetrahedron") {
    auto b = fixture::ball();
    auto all = collect(b, 1);
    for (int j = 0; j < 4; ++j) {
        NormalVector link{{0, 0, 0, 0, 0, 0, 0}};
        link.coords[j] = 1;
        CHECK(std::find(all.begin(), all.end(), link) != all.end());
    }
    // {0,1}^4 triangles times (no quad or one of three quads), minus zero
    CHECK(all.size() == 16 * 4 - 1);
    CHECK(collect(b, 0).empty());
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].coords < all[i].coords);
}

TEST_CASE("enumeration agrees with brute force") {
    for (const auto& t : {fixture::ball(), parse_triangulation(kTwoGlued), fixture::solid_torus()}) {
        int bound = t.size() == 2 ? 1 : 2;
        auto got = collect(t, bound);
        auto want = brute_admissible(t, bound);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].coords == want[i]);
    }
}

TEST_CASE("enumeration can stop early") {
    int seen = 0;
    enumerate_admissible(fixture::ball(), 3, [&](const NormalVector&) { return ++seen < 5; });
    CHECK(seen == 5);
}

TEST_CASE("surface reconstruction of small vectors") {
    auto b = fixture::ball();
    auto empty = build_surface(b, NormalVector{{0, 0, 0, 0, 0, 0, 0}});
    CHECK(empty.pieces.empty());
    CHECK(empty.components.empty());

    auto link = build_surface(b, NormalVector{{1, 0, 0, 0, 0, 0, 0}});
    REQUIRE(link.components.size() == 1);
    CHECK(link.components[0].euler == 1);
    CHECK(link.components[0].boundary.size() == 3);

    auto doubled = build_surface(b, NormalVector{{0, 0, 0, 0, 0, 2, 0}});
    CHECK(doubled.pieces.size() == 2);
    REQUIRE(doubled.components.size() == 2);
    for (const auto& c : doubled.components) CHECK(c.euler == 1);
}

TEST_CASE("euler characteristic: reconstruction agrees with cell counting") {
    for (const auto& t : {fixture::ball(), parse_triangulation(kTwoGlued), fixture::solid_torus()}) {
        int bound = t.size() == 2 ? 2 : 3;
        int checked = 0;
        for (const auto& v : collect(t, bound)) {
            auto surf = build_surface(t, v);
            int total = 0;
            for (const auto& c : surf.components) total += c.euler;
            CHECK(total == oracle::normal_euler(t, v.coords));
            CHECK(static_cast<int>(surf.components.size()) == oracle::normal_components(t, v.coords));
            int cells = 0;
            for (int x : v.coords) cells += x;
            CHECK(static_cast<int>(surf.pieces.size()) == cells);
            // every interior piece side has exactly one partner, which points back
            for (std::size_t p = 0; p < surf.pieces.size(); ++p)
                for (std::size_t s = 0; s < surf.neighbours[p].size(); ++s) {
                    auto [q, r] = surf.neighbours[p][s];
                    if (q < 0) continue;
                    CHECK(surf.neighbours[q][r] == std::array<int, 2>{static_cast<int>(p), static_cast<int>(s)});
                }
            ++checked;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("subdivision along a curve inside one face") {
    auto b = fixture::ball();
    auto s = boundary_surface(b);
    auto c = fixture::polygon(2, {{Rational(1, 5), Rational(1, 5)}, {Rational(3, 5), Rational(1, 5)},
                                  {Rational(1, 5), Rational(3, 5)}});
    auto sub = subdivide_along_curve(b, c);
    CHECK(validate_manifold(sub.tri).is_manifold);
    CHECK(segments_in_skeleton(b, c, sub));
    CHECK(sub.marks.edges.size() == 3);
    REQUIRE(sub.surface.summary.components.size() == 1);
    CHECK(sub.surface.summary.components[0].euler == 2);
    // no triangle of T' boundary has its three corners on c
    for (const auto& k : sub.marks.corner) CHECK(k[0] + k[1] + k[2] < 3);
}

TEST_CASE("subdivision along curves through several faces") {
    std::mt19937 rng(31);
    auto b = fixture::ball();
    auto s = boundary_surface(b);
    int worst = 0;
    for (int i = 0; i < 10; ++i) {
        auto c = fixture::random_equator(rng, s, 2);
        auto sub = subdivide_along_curve(b, c);
        CHECK(validate_manifold(sub.tri).is_manifold);
        CHECK(segments_in_skeleton(b, c, sub));
        // the only boundary edges of T' joining two points of c are edges of c
        for (int t = 0; t < sub.surface.size(); ++t)
            for (int k = 0; k < 3; ++k)
                if (sub.marks.corner[t][(k + 1) % 3] && sub.marks.corner[t][(k + 2) % 3]) CHECK(sub.marks.side[t][k]);
        worst = std::max(worst, sub.tri.size() / (c.size() + b.size()));
    }
    MESSAGE("largest |T'| / (n + t) = " << worst);
    CHECK(worst <= 40);
    auto tor = fixture::torus();
    auto lon = tor.chart.from_plane({kStart}, tor.longitude);
    auto sub = subdivide_along_curve(tor.tri, lon);
    CHECK(validate_manifold(sub.tri).is_manifold);
    CHECK(segments_in_skeleton(tor.tri, lon, sub));
}

TEST_CASE("subdivision rejects curves through vertices or with crossings") {
    auto b = fixture::ball();
    auto through = fixture::polygon(0, {{1, 0}, {Rational(1, 4), Rational(1, 4)}, {Rational(1, 2), Rational(1, 4)}});
    CHECK(error_code([&] { subdivide_along_curve(b, through); }) == "curve-through-vertex");
    CHECK(error_code([&] { subdivide_along_curve(b, fixture::figure_eight(0)); }) == "curve-not-simple");
}

TEST_CASE("bounds_disk_in_boundary") {
    auto b = fixture::ball();
    auto s = boundary_surface(b);
    CHECK(bounds_disk_in_boundary(s, fixture::vertex_loop(s, 1, 1, Rational(1, 4))));
    std::mt19937 rng(3);
    CHECK(bounds_disk_in_boundary(s, fixture::random_star(rng, 0, 7)));
    CHECK(bounds_disk_in_boundary(s, fixture::random_equator(rng, s, 0)));
    auto tor = fixture::torus();
    CHECK_FALSE(bounds_disk_in_boundary(tor.surface, tor.chart.from_plane({kStart}, tor.meridian)));
    CHECK_FALSE(bounds_disk_in_boundary(tor.surface, tor.chart.from_plane({kStart}, tor.longitude)));
    // a small loop on the torus does bound
    CHECK(bounds_disk_in_boundary(tor.surface, fixture::vertex_loop(tor.surface, 0, 0, Rational(1, 5))));
    CHECK(error_code([&] { bounds_disk_in_boundary(s, fixture::figure_eight(1)); }) == "curve-not-simple");
}

TEST_CASE("oracle on the ball: contractible with a checked disk") {
    std::mt19937 rng(12);
    auto b = fixture::ball();
    auto s = boundary_surface(b);
    for (const auto& c : fixture::simple_ball_curves(rng, s, 9, 20)) {
        auto ans = simple_contractible(b, c, kDefaultBound);
        CHECK(ans.contractible_in_M);
        CHECK(ans.boundary_status);
        CHECK_FALSE(ans.returned_curve);
        REQUIRE(ans.witness);
        auto sub = subdivide_along_curve(b, c);
        CHECK(oracle::check_disk(b, c, sub, ans.witness->coords).ok());
        CHECK(verify_disk_witness(b, c, *ans.witness));
    }
}

TEST_CASE("oracle on the solid torus agrees with first homology") {
    auto tor = fixture::torus();
    auto mer = tor.chart.from_plane({kStart}, tor.meridian);
    auto lon = tor.chart.from_plane({kStart}, tor.longitude);

    auto am = simple_contractible(tor.tri, mer, kDefaultBound);
    CHECK(oracle::curve_homology(tor.tri, mer).free_coords == std::vector<long long>{0});
    CHECK(am.contractible_in_M);
    CHECK_FALSE(am.boundary_status);
    REQUIRE(am.returned_curve);
    CHECK(am.returned_curve->points == mer.points);
    REQUIRE(am.witness);
    auto sub = subdivide_along_curve(tor.tri, mer);
    CHECK(oracle::check_disk(tor.tri, mer, sub, am.witness->coords).ok());

    auto al = simple_contractible(tor.tri, lon, kDefaultBound);
    CHECK(std::abs(oracle::curve_homology(tor.tri, lon).free_coords.at(0)) == 1);
    CHECK_FALSE(al.contractible_in_M);
    CHECK(al.negative == NegativeKind::Certified);
    CHECK_FALSE(al.witness);

    // other slopes: contractible exactly when the homology class vanishes
    for (Point2 shift : {Point2{tor.meridian.x + tor.longitude.x, tor.meridian.y + tor.longitude.y},
                         Point2{2 * tor.longitude.x + tor.meridian.x, 2 * tor.longitude.y + tor.meridian.y}}) {
        auto c = tor.chart.from_plane({kStart}, shift);
        auto h = oracle::curve_homology(tor.tri, c);
        CHECK(simple_contractible(tor.tri, c, kDefaultBound).contractible_in_M == (h.free_coords.at(0) == 0));
    }
}

TEST_CASE("stream around the meridian contains a disk") {
    auto tor = fixture::torus();
    auto mer = tor.chart.from_plane({kStart}, tor.meridian);
    auto sub = subdivide_along_curve(tor.tri, mer);
    auto target = parallel_curve(sub);
    int disks = 0;
    enumerate_admissible(
        sub.tri, 2,
        [&](const NormalVector& v) {
            if (is_spanning_disk(build_surface(sub.tri, v), target)) ++disks;
            return disks == 0;
        },
        &target);
    CHECK(disks == 1);
}

TEST_CASE("negative answers are monotone in the bound") {
    std::mt19937 rng(5);
    auto b = fixture::ball();
    auto s = boundary_surface(b);
    for (const auto& c : fixture::simple_ball_curves(rng, s, 6, 12)) {
        bool low = simple_contractible(b, c, 1).contractible_in_M;
        bool high = simple_contractible(b, c, 3).contractible_in_M;
        CHECK((!low || high));
    }
}

TEST_CASE("disk witnesses: tampering is rejected") {
    auto tor = fixture::torus();
    auto mer = tor.chart.from_plane({kStart}, tor.meridian);
    auto ans = simple_contractible(tor.tri, mer, kDefaultBound);
    REQUIRE(ans.witness);
    CHECK(verify_disk_witness(tor.tri, mer, *ans.witness));
    for (std::size_t i = 0; i < ans.witness->coords.size(); i += 5) {
        NormalVector v = *ans.witness;
        v.coords[i] += 1;
        CHECK_FALSE(verify_disk_witness(tor.tri, mer, v));
    }
    CHECK_FALSE(verify_disk_witness(tor.tri, mer, NormalVector{{1, 2, 3}}));
}

TEST_CASE("bad bounds") {
    CHECK(error_code([] { enumerate_admissible(fixture::ball(), -1, [](const NormalVector&) { return true; }); }) ==
          "bad-bound");
    auto b = fixture::ball();
    auto s = boundary_surface(b);
    CHECK(error_code([&] { simple_contractible(b, fixture::vertex_loop(s, 0, 0, Rational(1, 3)), 0); }) == "bad-bound");
}
