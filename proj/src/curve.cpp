#include "contract/curve.hpp"

#include "contract/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace contract {

namespace {

std::vector<std::pair<std::string_view, int>> split_line(std::string_view line) {
    std::vector<std::pair<std::string_view, int>> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

bool to_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

Rational cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
Point2 sub(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }

bool on_closed_segment(const Point2& a, const Point2& b, const Point2& p) {
    if (orientation(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

}  // namespace

PLCurve parse_curve(std::string_view text) {
    PLCurve c;
    int count = -1;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        auto toks = split_line(line);
        if (!toks.empty() && toks[0].first[0] != '#') {
            if (count < 0) {
                if (toks.size() != 2 || toks[0].first != "curve")
                    throw ParseError("syntax-error", "expected header 'curve <n>'", line_no, toks[0].second);
                if (!to_int(toks[1].first, count) || count < 1)
                    throw ParseError("syntax-error", "point count must be a positive integer", line_no,
                                     toks[1].second);
            } else {
                if (c.size() >= count) throw ParseError("syntax-error", "more points than declared", line_no, 1);
                if (toks.size() != 4 || toks[0].first != "tri")
                    throw ParseError("syntax-error", "expected 'tri <id> <p>/<q> <r>/<s>'", line_no,
                                     toks[0].second);
                CurvePoint q;
                if (!to_int(toks[1].first, q.tri) || q.tri < 0)
                    throw ParseError("syntax-error", "triangle id must be a non-negative integer", line_no,
                                     toks[1].second);
                for (int k = 0; k < 2; ++k) {
                    try {
                        (k == 0 ? q.p.x : q.p.y) = parse_rational(toks[2 + k].first);
                    } catch (const Error& e) {
                        throw ParseError("syntax-error", e.what(), line_no, toks[2 + k].second);
                    }
                }
                if (q.p.x < 0 || q.p.y < 0 || q.p.x + q.p.y > 1)
                    throw ParseError("bad-barycentric", "barycentric coordinates must be non-negative", line_no,
                                     toks[2].second);
                c.points.push_back(q);
            }
        }
        if (end == text.size()) break;
    }
    if (count < 0) throw ParseError("syntax-error", "missing header 'curve <n>'", line_no, 1);
    if (c.size() != count) throw ParseError("syntax-error", "fewer points than declared", line_no, 1);
    return c;
}

std::string serialize_curve(const PLCurve& c) {
    std::ostringstream out;
    out << "curve " << c.size() << "\n";
    for (const auto& q : c.points)
        out << "tri " << q.tri << " " << format_rational(q.p.x) << " " << format_rational(q.p.y) << "\n";
    return out.str();
}

int edge_of_point(const Point2& p) {
    auto l = barycentric(p);
    int zeros = 0, k = -1;
    for (int i = 0; i < 3; ++i)
        if (l[i] == 0) {
            ++zeros;
            k = i;
        }
    if (zeros >= 2) throw Error("curve-through-vertex", "curve passes through a vertex of the triangulation");
    return k;
}

Point2 map_across(const BoundarySurface& s, int t, int side, const Point2& p) {
    const SideLink& link = s.complex.sides[t][side];
    auto l = barycentric(p);
    std::array<Rational, 3> m;
    for (int c = 0; c < 3; ++c)
        if (c != side) m[link.corner_map[c]] = l[c];
    return {m[0], m[1]};
}

std::optional<Point2> express_in(const BoundarySurface& s, const CurvePoint& q, int tri) {
    if (q.tri == tri) return q.p;
    int k = edge_of_point(q.p);
    if (k < 0) return std::nullopt;
    if (s.complex.sides[q.tri][k].tri != tri) return std::nullopt;
    return map_across(s, q.tri, k, q.p);
}

std::vector<Segment> curve_segments(const BoundarySurface& s, const PLCurve& c) {
    const int n = c.size();
    if (n < 3) throw Error("curve-too-short", "a closed curve needs at least three vertices");
    for (int i = 0; i < n; ++i) {
        const auto& q = c.points[i];
        if (q.tri < 0 || q.tri >= s.size())
            throw Error("bad-triangle", "point " + std::to_string(i) + " names an unknown boundary triangle");
        if (q.p.x < 0 || q.p.y < 0 || q.p.x + q.p.y > 1)
            throw Error("bad-barycentric", "point " + std::to_string(i) + " lies outside its triangle");
        edge_of_point(q.p);
    }
    std::vector<Segment> segs;
    segs.reserve(n);
    for (int i = 0; i < n; ++i) {
        const auto& q = c.points[i];
        auto b = express_in(s, c.points[(i + 1) % n], q.tri);
        if (!b)
            throw Error("disconnected-segment",
                        "points " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                            " do not share a triangle");
        if (*b == q.p) throw Error("degenerate-segment", "segment " + std::to_string(i) + " has zero length");
        int ea = edge_of_point(q.p), eb = edge_of_point(*b);
        if (ea >= 0 && ea == eb)
            throw Error("segment-along-edge", "segment " + std::to_string(i) + " runs along a triangulation edge");
        segs.push_back({q.tri, q.p, *b});
    }
    return segs;
}

std::vector<std::array<int, 2>> edge_representatives(const BoundarySurface& s) {
    std::vector<std::array<int, 2>> reps(s.summary.edge_count, {-1, -1});
    for (int t = 0; t < s.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            int e = s.summary.edge_of_side[3 * t + k];
            if (reps[e][0] < 0) reps[e] = {t, k};
        }
    return reps;
}

PointKey point_key(const BoundarySurface& s, const CurvePoint& q) {
    int k = edge_of_point(q.p);
    if (k < 0) return {0, q.tri, q.p};
    int e = s.summary.edge_of_side[3 * q.tri + k];
    auto l = barycentric(q.p);
    Rational pos = l[(k + 2) % 3];
    int rt = -1, rk = -1;
    for (int t = 0; t < s.size() && rt < 0; ++t)
        for (int j = 0; j < 3; ++j)
            if (s.summary.edge_of_side[3 * t + j] == e) {
                rt = t;
                rk = j;
                break;
            }
    if (rt != q.tri || rk != k) {
        const SideLink& link = s.complex.sides[q.tri][k];
        if (link.corner_map[(k + 2) % 3] != (rk + 2) % 3) pos = 1 - pos;
    }
    return {1, e, {pos, Rational(0)}};
}

CrossingSet compute_crossings(const BoundarySurface& s, const PLCurve& c) {
    const int n = c.size();
    auto segs = curve_segments(s, c);
    CrossingSet out;
    auto defect = [&](std::string d) {
        out.general_position = false;
        out.defects.push_back(std::move(d));
    };
    std::map<PointKey, int> keys;
    for (int i = 0; i < n; ++i) {
        auto [it, fresh] = keys.try_emplace(point_key(s, c.points[i]), i);
        if (!fresh) defect("vertices " + std::to_string(it->second) + " and " + std::to_string(i) + " coincide");
    }
    std::map<int, std::vector<int>> by_tri;
    for (int i = 0; i < n; ++i) by_tri[segs[i].tri].push_back(i);
    for (const auto& [tri, ids] : by_tri) {
        for (std::size_t x = 0; x < ids.size(); ++x) {
            for (std::size_t y = x + 1; y < ids.size(); ++y) {
                int i = ids[x], j = ids[y];
                const Segment& si = segs[i];
                const Segment& sj = segs[j];
                bool next = j == i + 1;
                bool wrap = i == 0 && j == n - 1;
                if (next || wrap) {
                    const Segment& first = next ? si : sj;
                    const Segment& second = next ? sj : si;
                    Point2 d1 = sub(first.b, first.a), d2 = sub(second.b, second.a);
                    if (cross(d1, d2) == 0 && d1.x * d2.x + d1.y * d2.y < 0)
                        defect("segments " + std::to_string(i) + " and " + std::to_string(j) + " fold back");
                    continue;
                }
                int o1 = orientation(si.a, si.b, sj.a), o2 = orientation(si.a, si.b, sj.b);
                int o3 = orientation(sj.a, sj.b, si.a), o4 = orientation(sj.a, sj.b, si.b);
                if (o1 * o2 < 0 && o3 * o4 < 0) {
                    Point2 d1 = sub(si.b, si.a), d2 = sub(sj.b, sj.a), w = sub(sj.a, si.a);
                    Rational den = cross(d1, d2);
                    Rational ti = cross(w, d2) / den;
                    Rational tj = cross(w, d1) / den;
                    Crossing cr;
                    cr.tri = tri;
                    cr.where = lerp(si.a, si.b, ti);
                    cr.passes = {Passage{i, ti}, Passage{j, tj}};
                    out.crossings.push_back(cr);
                } else if (on_closed_segment(si.a, si.b, sj.a) || on_closed_segment(si.a, si.b, sj.b) ||
                           on_closed_segment(sj.a, sj.b, si.a) || on_closed_segment(sj.a, sj.b, si.b)) {
                    defect("segments " + std::to_string(i) + " and " + std::to_string(j) + " touch");
                }
            }
        }
    }
    std::sort(out.crossings.begin(), out.crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.passes[0] < b.passes[0]; });
    std::map<std::pair<int, Point2>, int> at;
    for (const auto& cr : out.crossings)
        if (++at[{cr.tri, cr.where}] == 2) defect("three strands meet at one point");
    return out;
}

bool interlaced(const CrossingSet& x, int u, int v) {
    if (u == v) throw Error("same-crossing", "interlacement needs two distinct crossings");
    if (u < 0 || v < 0 || u >= x.size() || v >= x.size()) throw Error("unknown-crossing", "crossing out of range");
    std::vector<std::pair<Passage, int>> ev;
    for (int w : {u, v})
        for (const auto& p : x.crossings[w].passes) ev.push_back({p, w});
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return ev[0].second != ev[1].second && ev[1].second != ev[2].second && ev[2].second != ev[3].second;
}

}  // namespace contract
