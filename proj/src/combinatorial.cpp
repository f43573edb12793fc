#include "contract/combinatorial.hpp"

#include "contract/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace contract {

std::shared_ptr<const RootCurve> make_root(const BoundarySurface& s, const PLCurve& c) {
    auto root = std::make_shared<RootCurve>();
    root->surface = s;
    root->curve = c;
    root->segments = curve_segments(s, c);
    root->crossings = compute_crossings(s, c);
    if (!root->crossings.general_position)
        throw Error("non-general-position", "curve is not in general position: " + root->crossings.defects.front());
    for (int x = 0; x < root->crossings.size(); ++x)
        for (int w = 0; w < 2; ++w) root->passages.push_back({x, w, root->crossings.crossings[x].passes[w]});
    std::sort(root->passages.begin(), root->passages.end(),
              [](const auto& a, const auto& b) { return a.at < b.at; });
    return root;
}

CombinatorialCurve CombinatorialCurve::whole(std::shared_ptr<const RootCurve> root) {
    Word w;
    for (int k = 0; k < root->arc_count(); ++k) w.push_back(k + 1);
    return CombinatorialCurve(std::move(root), std::move(w));
}

int CombinatorialCurve::start_passage(int i) const {
    int a = letters_[i];
    int k = std::abs(a) - 1;
    int p = root_->arc_count();
    return a > 0 ? k : (k + 1) % p;
}

int CombinatorialCurve::end_passage(int i) const {
    int a = letters_[i];
    int k = std::abs(a) - 1;
    int p = root_->arc_count();
    return a > 0 ? (k + 1) % p : k;
}

CombinatorialCurve::CombinatorialCurve(std::shared_ptr<const RootCurve> root, Word letters)
    : root_(std::move(root)), letters_(std::move(letters)) {
    const int arcs = root_->arc_count();
    if (letters_.empty()) throw Error("bad-curve", "empty combinatorial curve");
    std::vector<char> used(arcs, 0);
    for (int a : letters_) {
        int k = std::abs(a) - 1;
        if (a == 0 || k >= arcs) throw Error("bad-curve", "letter outside the arc alphabet");
        if (used[k]) throw Error("bad-curve", "arc used twice");
        used[k] = 1;
    }
    if (root_->passages.empty()) return;
    const int l = length();
    std::set<int> straight, turned;
    for (int j = 0; j < l; ++j) {
        int pe = end_passage(j), ps = start_passage((j + 1) % l);
        int xe = root_->passages[pe].crossing, xs = root_->passages[ps].crossing;
        if (xe != xs) throw Error("bad-curve", "consecutive arcs do not meet at a crossing");
        if (pe == ps)
            straight.insert(pe);
        else
            turned.insert(xe);
    }
    straight_.assign(straight.begin(), straight.end());
    for (int x = 0; x < root_->crossings.size(); ++x) {
        bool both = true;
        for (int p = 0; p < static_cast<int>(root_->passages.size()); ++p)
            if (root_->passages[p].crossing == x && !straight.count(p)) both = false;
        if (both) alive_.push_back(x);
    }
    smoothed_.assign(turned.begin(), turned.end());
    for (int j = 0; j < l; ++j) {
        int pe = end_passage(j);
        if (pe == start_passage((j + 1) % l) && has_crossing(root_->passages[pe].crossing))
            events_.push_back({j, root_->passages[pe].crossing, pe});
    }
}

bool CombinatorialCurve::has_crossing(int x) const { return std::binary_search(alive_.begin(), alive_.end(), x); }

bool CombinatorialCurve::interlaced(int u, int v) const {
    if (u == v) throw Error("same-crossing", "interlacement needs two distinct crossings");
    if (!has_crossing(u) || !has_crossing(v)) throw Error("unknown-crossing", "not a crossing of this curve");
    std::vector<int> seq;
    for (const auto& e : events_)
        if (e.crossing == u || e.crossing == v) seq.push_back(e.crossing);
    return seq[0] != seq[1] && seq[1] != seq[2] && seq[2] != seq[3];
}

CombinatorialCurve CombinatorialCurve::reversed() const { return CombinatorialCurve(root_, invert(letters_)); }

Decomposition decompose_at(const CombinatorialCurve& c, int u, int v) {
    if (u == v) throw Error("same-crossing", "decomposition needs two distinct crossings");
    if (!c.has_crossing(u) || !c.has_crossing(v)) throw Error("unknown-crossing", "not a crossing of this curve");
    std::vector<Event> ev;
    for (const auto& e : c.events())
        if (e.crossing == u || e.crossing == v) ev.push_back(e);
    Decomposition d;
    d.interlaced = ev[0].crossing != ev[1].crossing && ev[1].crossing != ev[2].crossing &&
                   ev[2].crossing != ev[3].crossing;
    int si = -1;
    for (int i = 0; i < 4 && si < 0; ++i) {
        if (ev[i].crossing != u) continue;
        if (d.interlaced || ev[(i + 1) % 4].crossing == v) si = i;
    }
    const Word& w = c.letters();
    const int l = c.length();
    const int s = ev[si].junction;
    d.rho.assign(w.begin(), w.begin() + s + 1);
    Word rot(w.begin() + s + 1, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + s + 1);
    std::array<int, 5> cut{0, 0, 0, 0, l};
    for (int k = 1; k < 4; ++k) cut[k] = (ev[(si + k) % 4].junction - s + l) % l;
    auto piece = [&](int k) { return Word(rot.begin() + cut[k], rot.begin() + cut[k + 1]); };
    d.alpha = piece(0);
    d.beta = piece(1);
    d.gamma = piece(2);
    d.delta = piece(3);
    return d;
}

namespace {

Term term(const Word& rho, const Word& conj, int curve, int exponent) {
    return {reduce(concat(rho, conj)), curve, exponent};
}

Smoothing make_smoothing(const CombinatorialCurve& c, Word first, Word second, std::vector<Term> terms) {
    CombinatorialCurve a(c.root_ptr(), first), b(c.root_ptr(), second);
    ConjugationFormula f{c.letters(), {std::move(first), std::move(second)}, std::move(terms)};
    return {std::move(a), std::move(b), checked(std::move(f))};
}

}  // namespace

Smoothing smooth_noninterlaced(const CombinatorialCurve& c, int u, int v) {
    Decomposition d = decompose_at(c, u, v);
    if (d.interlaced) throw Error("interlaced-pair", "crossings are interlaced");
    Word c1 = concat(d.alpha, d.gamma);
    Word c2 = concat({d.alpha, invert(d.beta), d.gamma, invert(d.delta)});
    Word dinv = invert(d.delta);
    return make_smoothing(c, c1, c2,
                          {term(d.rho, {}, 0, 1), term(d.rho, dinv, 1, -1), term(d.rho, dinv, 0, 1)});
}

std::pair<Smoothing, Smoothing> smooth_interlaced(const CombinatorialCurve& c, int u, int v) {
    Decomposition d = decompose_at(c, u, v);
    if (!d.interlaced) throw Error("noninterlaced-pair", "crossings are not interlaced");
    Word gd = invert(concat(d.gamma, d.delta));
    Smoothing one = make_smoothing(c, concat(d.alpha, invert(d.gamma)), concat({d.alpha, d.delta, d.gamma, d.beta}),
                                   {term(d.rho, {}, 0, 1), term(d.rho, gd, 0, -1), term(d.rho, gd, 1, 1)});
    Word ada = concat(d.alpha, invert(concat(d.delta, d.alpha)));
    Smoothing two = make_smoothing(c, concat(d.beta, invert(d.delta)), concat({d.beta, d.alpha, d.delta, d.gamma}),
                                   {term(d.rho, d.alpha, 0, 1), term(d.rho, ada, 0, -1), term(d.rho, ada, 1, 1)});
    return {std::move(one), std::move(two)};
}

namespace {

// Curve vertices strictly inside arc k, in forward order.
std::vector<int> arc_vertices(const RootCurve& r, int k) {
    const int n = r.curve.size();
    const int p = static_cast<int>(r.passages.size());
    const auto& from = r.passages[k].at;
    const auto& to = r.passages[(k + 1) % p].at;
    int d = to.segment - from.segment;
    if ((k + 1) % p <= k) d += n;
    if (d > n) d -= n;
    std::vector<int> out;
    for (int i = 1; i <= d; ++i) out.push_back((from.segment + i) % n);
    return out;
}

struct HalfEdge {
    int passage;
    bool toward_end;  // leaves the crossing toward the segment's end point
};

}  // namespace

PLCurve realize(const CombinatorialCurve& c) {
    const RootCurve& r = c.root();
    const int n = r.curve.size();
    if (r.passages.empty()) {
        if (c.letters().front() > 0) return r.curve;
        PLCurve out;
        for (int i = 0; i < n; ++i) {
            int v = (n - i) % n;
            int prev = (v - 1 + n) % n;
            out.points.push_back({r.segments[prev].tri, r.segments[prev].b});
        }
        return out;
    }
    const int l = c.length();
    std::vector<std::pair<HalfEdge, HalfEdge>> turns(l);
    std::vector<char> turning(l, 0);
    Rational eps(1, 4);
    for (int j = 0; j < l; ++j) {
        int pe = c.end_passage(j), ps = c.start_passage((j + 1) % l);
        if (pe == ps) continue;
        turning[j] = 1;
        turns[j] = {HalfEdge{pe, c.letters()[j] < 0}, HalfEdge{ps, c.letters()[(j + 1) % l] > 0}};
        for (const HalfEdge& h : {turns[j].first, turns[j].second}) {
            const Passage& at = r.passages[h.passage].at;
            Rational room = h.toward_end ? Rational(1 - at.t) : at.t;
            for (const auto& other : r.passages) {
                if (other.at.segment != at.segment || other.at == at) continue;
                if (h.toward_end == (other.at.t > at.t)) {
                    Rational gap = h.toward_end ? Rational(other.at.t - at.t) : Rational(at.t - other.at.t);
                    room = std::min(room, gap);
                }
            }
            Rational span = h.toward_end ? Rational(1 - at.t) : at.t;
            Rational limit = room / span / 2;
            eps = std::min(eps, limit);
        }
    }
    std::set<std::pair<int, Point2>> expected;
    for (int x : c.crossings()) expected.insert({r.crossings.crossings[x].tri, r.crossings.crossings[x].where});

    auto port = [&](const HalfEdge& h, const Rational& e) {
        const Passage& at = r.passages[h.passage].at;
        const Segment& s = r.segments[at.segment];
        Point2 x = lerp(s.a, s.b, at.t);
        return CurvePoint{s.tri, lerp(x, h.toward_end ? s.b : s.a, e)};
    };

    for (int attempt = 0; attempt < 64; ++attempt, eps /= 2) {
        PLCurve out;
        for (int j = 0; j < l; ++j) {
            int a = c.letters()[j];
            auto verts = arc_vertices(r, std::abs(a) - 1);
            if (a > 0) {
                for (int v : verts) out.points.push_back(r.curve.points[v]);
            } else {
                for (auto it = verts.rbegin(); it != verts.rend(); ++it) {
                    int prev = (*it - 1 + n) % n;
                    out.points.push_back({r.segments[prev].tri, r.segments[prev].b});
                }
            }
            if (turning[j]) {
                out.points.push_back(port(turns[j].first, eps));
                out.points.push_back(port(turns[j].second, eps));
            }
        }
        CrossingSet got;
        try {
            got = compute_crossings(r.surface, out);
        } catch (const Error&) {
            continue;
        }
        if (!got.general_position || got.size() != static_cast<int>(expected.size())) continue;
        bool same = true;
        for (const auto& cr : got.crossings)
            if (!expected.count({cr.tri, cr.where})) same = false;
        if (same) return out;
    }
    throw Error("realize-failed", "could not push the curve off its smoothed crossings");
}

PLCurve realize_embedded(const CombinatorialCurve& c) {
    if (c.crossing_count() != 0) throw Error("unsmoothed-crossings", "curve still has unsmoothed crossings");
    return realize(c);
}

}  // namespace contract
