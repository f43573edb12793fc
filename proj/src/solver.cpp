#include "contract/solver.hpp"

#include "contract/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace contract {

std::shared_ptr<const OracleAnswer> Recursion::ask(const CombinatorialCurve& c) {
    auto it = cache_.find(c.letters());
    if (it != cache_.end()) {
        ++stats_.cache_hits;
        return it->second;
    }
    ++stats_.oracle_calls;
    auto ans = std::make_shared<const OracleAnswer>(oracle_(realize_embedded(c)));
    if (!ans->contractible_in_M && ans->negative == NegativeKind::Bounded) stats_.bounded_negative = true;
    cache_.emplace(c.letters(), ans);
    return ans;
}

Recursion::Result Recursion::run(const CombinatorialCurve& c) {
    stats_.live_units = 0;
    return visit(c, 0);
}

Recursion::Result Recursion::visit(const CombinatorialCurve& c, int depth) {
    const long first_call = ++stats_.calls;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    const int m = c.crossing_count();
    const long frame = c.length() + m + 1;
    stats_.live_units += frame;
    stats_.peak_units = std::max(stats_.peak_units, stats_.live_units);

    Result r;
    TraceNode& node = r.trace;
    node.curve = c.letters();
    node.crossings = m;

    if (m == 0) {
        node.kind = TraceNode::Kind::Oracle;
        node.answer = ask(c);
        r.ok = node.answer->contractible_in_M;
        if (r.ok && node.answer->returned_curve) r.witness = node.answer->returned_curve;
    } else if (m == 1) {
        node.kind = TraceNode::Kind::Forced;
    } else {
        node.kind = TraceNode::Kind::Internal;
        auto attempt = [&](Smoothing& s, int u, int v, bool inter, int branch) {
            const long held = s.first.length() + s.second.length();
            stats_.max_frame_units = std::max(stats_.max_frame_units, frame + held);
            stats_.live_units += held;
            stats_.peak_units = std::max(stats_.peak_units, stats_.live_units);
            Result a = visit(s.first, depth + 1);
            Result b;
            bool ok = a.ok && (b = visit(s.second, depth + 1)).ok;
            stats_.live_units -= held;
            if (!ok) return false;
            node.u = u;
            node.v = v;
            node.interlaced = inter;
            node.branch = branch;
            node.formula = std::move(s.formula);
            r.witness = a.witness ? std::move(a.witness) : std::move(b.witness);
            node.children.push_back(std::move(a.trace));
            node.children.push_back(std::move(b.trace));
            return true;
        };
        const auto xs = c.crossings();
        for (std::size_t i = 0; i < xs.size() && !r.ok; ++i) {
            for (std::size_t j = i + 1; j < xs.size() && !r.ok; ++j) {
                ++node.pairs_tried;
                if (c.interlaced(xs[i], xs[j])) {
                    auto [one, two] = smooth_interlaced(c, xs[i], xs[j]);
                    r.ok = attempt(one, xs[i], xs[j], true, 1) || attempt(two, xs[i], xs[j], true, 2);
                } else {
                    Smoothing s = smooth_noninterlaced(c, xs[i], xs[j]);
                    r.ok = attempt(s, xs[i], xs[j], false, 0);
                }
            }
        }
    }
    node.result = r.ok;
    node.subtree_calls = stats_.calls - first_call + 1;
    long& best = stats_.max_calls_by_m[m];
    best = std::max(best, node.subtree_calls);
    stats_.max_frame_units = std::max(stats_.max_frame_units, frame);
    stats_.live_units -= frame;
    return r;
}

Recursion::Result special_recursion(const Triangulation& m, const CombinatorialCurve& c, int bound) {
    Recursion rec([&](const PLCurve& pl) { return simple_contractible(m, pl, bound); });
    return rec.run(c);
}

namespace {

// Next k-subset of {0..n-1} in lexicographic order; false after the last.
bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

}  // namespace

Verdict decide_contractible(const BoundarySurface& s, const PLCurve& c, const SimpleOracle& oracle, int bound) {
    auto root = make_root(s, c);
    CombinatorialCurve whole = CombinatorialCurve::whole(root);
    const std::vector<int> all = whole.crossings();
    const int m = static_cast<int>(all.size());
    if (m > 30) throw Error("too-many-crossings", "more than 30 self-crossings");

    Recursion rec(oracle);
    Verdict v;
    v.bound = bound;
    v.curve = whole;
    for (int k = 0; k <= m; ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        do {
            SubsetAttempt at;
            for (int i : idx) at.x.push_back(all[i]);
            CrossingGraph g = build_crossing_graph(whole, at.x);
            SpanningTree t = spanning_tree(g);
            std::vector<ElementaryCycle> cycles = elementary_cycles(g, t);
            at.cycles = static_cast<int>(cycles.size());
            std::vector<RecursionTrace> traces;
            std::optional<PLCurve> witness;
            at.ok = true;
            for (std::size_t i = 0; i < cycles.size(); ++i) {
                auto r = rec.run(cycle_curve(g, cycles[i]));
                if (!r.ok) {
                    at.ok = false;
                    at.failed_cycle = static_cast<int>(i);
                    break;
                }
                if (!witness && r.witness) witness = std::move(r.witness);
                traces.push_back(std::move(r.trace));
            }
            v.attempts.push_back(at);
            if (at.ok) {
                v.contractible = true;
                v.witness_curve = std::move(witness);
                v.chosen_x = at.x;
                v.traces = std::move(traces);
                v.graph = std::move(g);
                v.tree = std::move(t);
                v.cycles = std::move(cycles);
                v.stats = rec.stats();
                v.bounded_negative = v.stats.bounded_negative;
                return v;
            }
        } while (next_combination(idx, m));
    }
    v.stats = rec.stats();
    v.bounded_negative = v.stats.bounded_negative;
    return v;
}

Verdict decide_contractible(const Triangulation& m, const PLCurve& c, int bound) {
    if (bound < 1) throw Error("bad-bound", "bound must be positive");
    ValidationReport rep = validate_manifold(m);
    if (!rep.is_manifold) throw Error("not-a-manifold", rep.violations.front().description);
    BoundarySurface s = boundary_surface(m);
    return decide_contractible(
        s, c, [&](const PLCurve& pl) { return simple_contractible(m, pl, bound); }, bound);
}

namespace {

struct Piece {
    Word conj;
    Word curve;
    int exponent;
};

void expand(const TraceNode& n, const Word& conj, int exponent, std::vector<Piece>& out) {
    if (!n.result) throw Error("trace-incomplete", "trace node did not return (i)");
    if (n.kind == TraceNode::Kind::Oracle) {
        out.push_back({conj, n.curve, exponent});
        return;
    }
    if (n.kind != TraceNode::Kind::Internal || n.children.size() != 2)
        throw Error("trace-incomplete", "internal node without children");
    const auto& terms = n.formula.terms;
    auto one = [&](const Term& t) {
        expand(n.children.at(t.curve), reduce(concat(conj, t.conjugator)), exponent * t.exponent, out);
    };
    if (exponent > 0)
        std::for_each(terms.begin(), terms.end(), one);
    else
        std::for_each(terms.rbegin(), terms.rend(), one);
}

}  // namespace

FormulaStats formula_stats(const ConjugationFormula& f, int crossings) {
    FormulaStats st;
    st.leaf_curves = static_cast<int>(f.curves.size());
    std::set<Word> paths;
    for (const Term& t : f.terms)
        if (!t.conjugator.empty()) paths.insert(t.conjugator);
    st.paths = static_cast<int>(paths.size());
    st.terms = static_cast<int>(f.terms.size());
    const long double half = std::pow(2.0L, crossings / 2.0L);
    st.leaf_limit = static_cast<long>(std::floor(3 * half + 1e-9L));
    st.path_limit = static_cast<long>(std::floor(half + 1e-9L));
    return st;
}

ConjugationFormula emit_formula(const Verdict& v, FormulaStats* stats) {
    if (!v.contractible || !v.graph || !v.tree || !v.curve) throw Error("trace-incomplete", "no contractible verdict");
    const CrossingGraph& g = *v.graph;
    ConjugationFormula top = formula_to_arcs(g, walk_as_conjugate_product(g, *v.tree, curve_walk(g)));
    if (top.curves.size() != v.traces.size()) throw Error("trace-incomplete", "one trace per elementary cycle expected");
    std::vector<Piece> pieces;
    for (const Term& t : top.terms) {
        const TraceNode& n = v.traces.at(t.curve);
        if (n.curve != top.curves[t.curve]) throw Error("trace-incomplete", "trace does not match its cycle");
        expand(n, reduce(concat(g.rho, t.conjugator)), t.exponent, pieces);
    }
    ConjugationFormula f;
    f.lhs = v.curve->letters();
    std::map<Word, int> index;
    for (Piece& p : pieces) {
        auto [it, fresh] = index.emplace(p.curve, static_cast<int>(f.curves.size()));
        if (fresh) f.curves.push_back(p.curve);
        f.terms.push_back({std::move(p.conj), it->second, p.exponent});
    }
    if (!f.holds()) throw Error("internal", "composed formula does not reduce");
    FormulaStats st = formula_stats(f, v.curve->crossing_count());
    if (st.leaf_curves > st.leaf_limit) throw Error("formula-bound", "formula has more leaf curves than allowed");
    if (stats) *stats = st;
    return f;
}

bool verify_formula(const ConjugationFormula& f, int arc_count) {
    auto check = [&](const Word& w) {
        for (int l : w)
            if (l == 0 || std::abs(l) > arc_count) throw Error("unknown-arc", "letter outside the arc alphabet");
    };
    check(f.lhs);
    for (const Word& w : f.curves) check(w);
    for (const Term& t : f.terms) {
        check(t.conjugator);
        if (t.curve < 0 || t.curve >= static_cast<int>(f.curves.size()))
            throw Error("unknown-curve", "term references unknown curve");
    }
    return f.holds();
}

namespace {

std::string subset_text(const std::vector<int>& x) {
    std::string out = "{";
    for (std::size_t i = 0; i < x.size(); ++i) out += (i ? " " : "") + std::to_string(x[i]);
    return out + "}";
}

void write_node(std::ostream& out, const TraceNode& n, int depth) {
    out << "node " << depth << " ";
    switch (n.kind) {
    case TraceNode::Kind::Oracle:
        out << "oracle " << n.answer->reason;
        break;
    case TraceNode::Kind::Forced:
        out << "forced";
        break;
    case TraceNode::Kind::Internal:
        out << "internal calls " << n.subtree_calls << " pairs " << n.pairs_tried;
        if (n.result)
            out << " pair " << n.u << " " << n.v << " " << (n.interlaced ? "interlaced" : "plain") << " branch "
                << n.branch;
        break;
    }
    out << " " << (n.result ? "(i)" : "(ii)") << " crossings " << n.crossings << " curve " << format_word(n.curve)
        << "\n";
    for (const TraceNode& ch : n.children) write_node(out, ch, depth + 1);
}

}  // namespace

std::string serialize_trace(const Verdict& v) {
    std::ostringstream out;
    out << "contract-trace 1\n";
    out << "answer " << (v.contractible ? "contractible" : v.inconclusive() ? "inconclusive" : "not-contractible")
        << "\n";
    out << "bound " << v.bound << "\n";
    out << "crossings " << (v.curve ? v.curve->crossing_count() : 0) << "\n";
    out << "attempts " << v.attempts.size() << "\n";
    for (const SubsetAttempt& a : v.attempts) {
        out << "attempt " << subset_text(a.x) << " cycles " << a.cycles;
        if (a.ok)
            out << " ok\n";
        else
            out << " failed " << a.failed_cycle << "\n";
    }
    if (v.chosen_x) {
        out << "chosen " << subset_text(*v.chosen_x) << "\n";
        for (std::size_t i = 0; i < v.traces.size(); ++i) {
            out << "cycle " << i << "\n";
            write_node(out, v.traces[i], 0);
        }
    }
    const RecursionStats& s = v.stats;
    out << "stats calls " << s.calls << " oracle " << s.oracle_calls << " cached " << s.cache_hits << " depth "
        << s.max_depth << " peak " << s.peak_units << "\n";
    out << "end\n";
    return out.str();
}

}  // namespace contract
