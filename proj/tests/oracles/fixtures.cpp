#include "oracles/fixtures.hpp"

#include "contract/error.hpp"
#include "oracles/independent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <array>

namespace fixture {

using contract::BoundarySurface;
using contract::CurvePoint;
using contract::PLCurve;
using contract::Triangulation;

std::string ball_text() { return "tets 1\nbdry bdry bdry bdry\n"; }

Triangulation ball() { return contract::parse_triangulation(ball_text()); }

std::string closed_pair_text() {
    return "tets 2\n"
           "1:0:123 1:1:023 1:2:013 1:3:012\n"
           "0:0:123 0:1:023 0:2:013 0:3:012\n";
}

Triangulation solid_torus() {
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            contract::Perm p{0, 1, 2, 3};
            do {
                if (p[a] != b) continue;
                Triangulation t;
                t.gluings.resize(1);
                t.labels.resize(1);
                t.gluings[0][a] = contract::Gluing{0, b, p};
                t.gluings[0][b] = contract::Gluing{0, a, contract::inverse(p)};
                if (!contract::validate_manifold(t).is_manifold) continue;
                BoundarySurface s;
                try {
                    s = contract::boundary_surface(t);
                } catch (const contract::Error&) {
                    continue;
                }
                const auto& comps = s.summary.components;
                if (comps.size() == 1 && comps[0].euler == 0 && comps[0].orientable) return t;
            } while (std::next_permutation(p.begin(), p.end()));
        }
    throw std::runtime_error("no one-tetrahedron solid torus found");
}

namespace {

Rational cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
Point2 sub(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
Point2 add(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }

Rational floor_q(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

}  // namespace

Point2 affine_coords(const std::array<Point2, 3>& c, const Point2& x) {
    Rational d = cross(sub(c[1], c[0]), sub(c[2], c[0]));
    Rational l1 = cross(sub(x, c[0]), sub(c[2], c[0])) / d;
    Rational l2 = cross(sub(c[1], c[0]), sub(x, c[0])) / d;
    return {1 - l1 - l2, l1};
}

TorusChart::TorusChart(const Triangulation& tri) : surface_(contract::boundary_surface(tri)) {
    if (surface_.size() != 2) throw std::runtime_error("torus chart needs a two-triangle boundary");
    up_ = {0, {Point2{0, 0}, Point2{1, 0}, Point2{0, 1}}};
    down_ = neighbour(up_, 0);
    // every neighbour must agree with the translated lattice
    for (const Placement* base : {&up_, &down_})
        for (int k = 0; k < 3; ++k) {
            Placement n = neighbour(*base, k);
            Point2 centre{(n.corner[0].x + n.corner[1].x + n.corner[2].x) / 3,
                          (n.corner[0].y + n.corner[1].y + n.corner[2].y) / 3};
            Placement l = locate(centre);
            if (l.tri != n.tri || l.corner != n.corner) throw std::runtime_error("boundary is not a flat lattice torus");
        }
}

TorusChart::Placement TorusChart::neighbour(const Placement& p, int side) const {
    const auto& link = surface_.complex.sides[p.tri][side];
    Placement q;
    q.tri = link.tri;
    for (int c = 0; c < 3; ++c)
        if (c != side) q.corner[link.corner_map[c]] = p.corner[c];
    q.corner[link.side] = sub(add(p.corner[(side + 1) % 3], p.corner[(side + 2) % 3]), p.corner[side]);
    return q;
}

TorusChart::Placement TorusChart::lookup(const Rational& i, const Rational& j, bool up) const {
    Placement p = up ? up_ : down_;
    for (auto& c : p.corner) c = add(c, Point2{i, j});
    return p;
}

TorusChart::Placement TorusChart::locate(const Point2& p) const {
    Rational i = floor_q(p.x), j = floor_q(p.y);
    Rational s = p.x - i + p.y - j;
    if (s == 1 || p.x == i || p.y == j) throw std::runtime_error("plane point on a lattice edge");
    return lookup(i, j, s < 1);
}

PLCurve TorusChart::from_plane(const std::vector<Point2>& pts, const Point2& shift) const {
    PLCurve out;
    const int k = static_cast<int>(pts.size());
    for (int i = 0; i < k; ++i) {
        Point2 a = pts[i];
        Point2 b = i + 1 < k ? pts[i + 1] : add(pts[0], shift);
        Placement cur = locate(a);
        out.points.push_back({cur.tri, affine_coords(cur.corner, a)});
        while (true) {
            auto la = contract::barycentric(affine_coords(cur.corner, a));
            auto lb = contract::barycentric(affine_coords(cur.corner, b));
            int side = -1;
            Rational best;
            bool tie = false;
            for (int c = 0; c < 3; ++c) {
                if (lb[c] >= 0) continue;
                Rational t = la[c] / (la[c] - lb[c]);
                if (side < 0 || t < best) {
                    side = c;
                    best = t;
                    tie = false;
                } else if (t == best) {
                    tie = true;
                }
            }
            if (side < 0) {
                for (int c = 0; c < 3; ++c)
                    if (lb[c] == 0) throw std::runtime_error("plane polyline vertex on a lattice edge");
                break;
            }
            if (tie) throw std::runtime_error("plane polyline passes through a lattice vertex");
            Point2 x = contract::lerp(a, b, best);
            cur = neighbour(cur, side);
            out.points.push_back({cur.tri, affine_coords(cur.corner, x)});
            a = x;
        }
    }
    return out;
}

Triangulation one_four_move(const Triangulation& t, int tet) {
    Triangulation out = t;
    const int n = t.size();
    std::array<int, 4> id{tet, n, n + 1, n + 2};
    out.gluings.resize(n + 3);
    out.labels.resize(n + 3);
    for (int k = 0; k < 4; ++k) out.gluings[id[k]] = {};
    auto moved = [&](int a, int f) { return a == tet ? id[f] : a; };
    for (int a = 0; a < n; ++a)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluings[a][f];
            if (!g) continue;
            out.gluings[moved(a, f)][f] = contract::Gluing{moved(g->tet, g->face), g->face, g->perm};
        }
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) {
            if (j == k) continue;
            contract::Perm swap{0, 1, 2, 3};
            std::swap(swap[j], swap[k]);
            out.gluings[id[k]][j] = contract::Gluing{id[j], k, swap};
        }
    return out;
}

Torus torus() {
    Triangulation t = solid_torus();
    BoundarySurface s = contract::boundary_surface(t);
    TorusChart chart(t);
    Torus out{t, s, chart, {}, {}};
    Point2 start{Rational(1, 7), Rational(2, 11)};
    auto image = [&](const Point2& shift) {
        auto h = oracle::curve_homology(t, chart.from_plane({start}, shift));
        if (h.free_rank != 1 || !h.torsion.empty()) throw std::runtime_error("H1 of the solid torus is not Z");
        return h.free_coords[0];
    };
    long long a = image({1, 0}), b = image({0, 1});
    // extended gcd: x a + y b = g
    long long x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = a, r1 = b;
    while (r1 != 0) {
        long long q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    if (std::llabs(r0) != 1) throw std::runtime_error("boundary does not surject onto H1");
    out.meridian = {Rational(static_cast<long>(b)), Rational(static_cast<long>(-a))};
    out.longitude = {Rational(static_cast<long>(x0)), Rational(static_cast<long>(y0))};
    return out;
}

namespace {

const Point2 kTorusStart{Rational(1, 7), Rational(2, 11)};

Point2 plus(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }

Point2 hundredths(int x, int y) { return {Rational(x, 100), Rational(y, 100)}; }

}  // namespace

PLCurve torus_meridian(const Torus& t) { return t.chart.from_plane({kTorusStart}, t.meridian); }

PLCurve torus_longitude(const Torus& t) { return t.chart.from_plane({kTorusStart}, t.longitude); }

PLCurve wiggly_meridian(const Torus& t) {
    return t.chart.from_plane({kTorusStart, {Rational(9, 700), Rational(-2176, 1100)}}, t.meridian);
}

PLCurve doubled_meridian(const Torus& t) {
    Point2 mid = plus(plus(kTorusStart, t.meridian), hundredths(-17, 6));
    return t.chart.from_plane({kTorusStart, mid}, plus(t.meridian, t.meridian));
}

PLCurve doubled_meridian_two(const Torus& t) {
    Point2 a = plus(kTorusStart, hundredths(5, -15));
    Point2 b = plus(plus(kTorusStart, t.meridian), hundredths(-14, -17));
    return t.chart.from_plane({kTorusStart, a, b}, plus(t.meridian, t.meridian));
}

PLCurve meridian_longitude_eight(const Torus& t) {
    Point2 a = plus(plus(kTorusStart, t.meridian), hundredths(8, 13));
    Point2 b = plus(plus(kTorusStart, t.meridian), hundredths(13, -14));
    return t.chart.from_plane({kTorusStart, a, b}, plus(t.meridian, t.longitude));
}

PLCurve polygon(int tri, const std::vector<Point2>& pts) {
    PLCurve c;
    for (auto p : pts) {
        p.x.canonicalize();
        p.y.canonicalize();
        c.points.push_back({tri, p});
    }
    return c;
}

PLCurve vertex_loop(const BoundarySurface& s, int tri, int corner, const Rational& r) {
    PLCurve out;
    int t = tri, c = corner, in = (corner + 1) % 3;
    do {
        int outside = 3 - c - in;
        int other = (outside + 1) % 3 == c ? (outside + 2) % 3 : (outside + 1) % 3;
        const auto& link = s.complex.sides[t][outside];
        std::array<Rational, 3> l{0, 0, 0};
        l[link.corner_map[c]] = 1 - r;
        l[link.corner_map[other]] = r;
        t = link.tri;
        c = link.corner_map[c];
        in = link.side;
        out.points.push_back({t, {l[0], l[1]}});
        if (out.size() > 64) throw std::runtime_error("vertex loop does not close");
    } while (!(t == tri && c == corner && in == (corner + 1) % 3));
    return out;
}

PLCurve random_polygon(std::mt19937& rng, int tri, int n) {
    std::uniform_int_distribution<int> d(1, 96);
    PLCurve c;
    while (c.size() < n) {
        int x = d(rng), y = d(rng);
        if (x + y >= 97) continue;
        c.points.push_back({tri, {Rational(x, 97), Rational(y, 97)}});
    }
    return c;
}

PLCurve random_star(std::mt19937& rng, int tri, int n) {
    // centre (1/3, 1/3); rays along integer directions, radius keeping the point inside
    std::uniform_int_distribution<int> dir(-20, 20);
    std::uniform_int_distribution<int> frac(10, 90);
    std::vector<std::pair<double, Point2>> rays;
    while (static_cast<int>(rays.size()) < n) {
        int dx = dir(rng), dy = dir(rng);
        if (dx == 0 && dy == 0) continue;
        double ang = std::atan2(static_cast<double>(dy), static_cast<double>(dx));
        bool dup = false;
        for (const auto& r : rays)
            if (std::abs(r.first - ang) < 1e-9) dup = true;
        if (dup) continue;
        Point2 d{Rational(dx), Rational(dy)};
        // largest s with the point still inside: x>0, y>0, x+y<1
        Rational smax = -1;
        auto bound = [&](const Rational& val, const Rational& rate) {
            if (rate < 0) {
                Rational s = -val / rate;
                if (smax < 0 || s < smax) smax = s;
            }
        };
        Rational third(1, 3);
        bound(third, d.x);
        bound(third, d.y);
        bound(third, -(d.x + d.y));
        Rational s = smax * Rational(frac(rng), 100);
        rays.push_back({ang, Point2{third + s * d.x, third + s * d.y}});
    }
    std::sort(rays.begin(), rays.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    PLCurve c;
    for (const auto& r : rays) c.points.push_back({tri, r.second});
    return c;
}

PLCurve random_curve_with_crossings(std::mt19937& rng, const BoundarySurface& s, int tri, int lo, int hi) {
    std::uniform_int_distribution<int> len(4, 9);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        PLCurve c = random_polygon(rng, tri, len(rng));
        try {
            auto x = contract::compute_crossings(s, c);
            if (x.general_position && x.size() >= lo && x.size() <= hi) return c;
        } catch (const contract::Error&) {
        }
    }
    throw std::runtime_error("no random curve with the requested crossing count");
}

PLCurve figure_eight(int tri) {
    return polygon(tri, {{Rational(1, 10), Rational(1, 10)},
                         {Rational(1, 10), Rational(4, 10)},
                         {Rational(6, 10), Rational(1, 10)},
                         {Rational(6, 10), Rational(3, 10)}});
}

PLCurve random_equator(std::mt19937& rng, const BoundarySurface& ball, int extra) {
    std::uniform_int_distribution<int> pick(10, 87), wiggle(-6, 6), count(0, extra);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Rational a[4];
        for (auto& x : a) x = Rational(pick(rng), 97);
        std::vector<CurvePoint> ring{{1, {a[0], 1 - a[0]}}, {2, {a[1], 0}}, {0, {a[2], 0}}, {3, {0, a[3]}}};
        PLCurve c;
        bool inside = true;
        for (int i = 0; i < 4; ++i) {
            c.points.push_back(ring[i]);
            Point2 from = ring[i].p, to = *contract::express_in(ball, ring[(i + 1) % 4], ring[i].tri);
            Point2 dir = sub(to, from);
            Point2 normal{-dir.y, dir.x};
            int k = count(rng);
            for (int j = 1; j <= k; ++j) {
                Point2 p = contract::lerp(from, to, Rational(j, k + 1));
                Rational d(wiggle(rng), 200);
                p = add(p, Point2{d * normal.x, d * normal.y});
                p.x.canonicalize();
                p.y.canonicalize();
                if (p.x <= 0 || p.y <= 0 || p.x + p.y >= 1) inside = false;
                c.points.push_back({ring[i].tri, p});
            }
        }
        if (!inside) continue;
        try {
            auto x = contract::compute_crossings(ball, c);
            if (x.general_position && x.size() == 0) return c;
        } catch (const contract::Error&) {
        }
    }
    throw std::runtime_error("no random equator found");
}

std::vector<PLCurve> simple_ball_curves(std::mt19937& rng, const BoundarySurface& ball, int count, int max_points) {
    std::vector<PLCurve> out;
    std::uniform_int_distribution<int> tri(0, 3), corner(0, 2);
    int kind = 0;
    while (static_cast<int>(out.size()) < count) {
        PLCurve c;
        switch (kind++ % 3) {
            case 0:
                c = random_star(rng, tri(rng), 3 + static_cast<int>(rng() % (max_points - 2)));
                break;
            case 1:
                c = vertex_loop(ball, tri(rng), corner(rng), Rational(1 + static_cast<int>(rng() % 9), 10));
                break;
            default:
                c = random_equator(rng, ball, std::max(0, (max_points - 4) / 4));
        }
        if (c.size() <= max_points) out.push_back(c);
    }
    return out;
}

}  // namespace fixture
