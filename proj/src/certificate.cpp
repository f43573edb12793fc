#include "contract/error.hpp"
#include "contract/solver.hpp"

#include <charconv>
#include <deque>
#include <sstream>

namespace contract {

namespace {

const ComplexComponent& component_of(const BoundarySurface& s, const PLCurve& c) {
    if (c.points.empty()) throw Error("empty-curve", "curve has no points");
    int t = c.points.front().tri;
    if (t < 0 || t >= s.size()) throw Error("bad-curve", "triangle out of range");
    return s.summary.components[s.summary.component_of_tri[t]];
}

}  // namespace

bool on_torus_component(const BoundarySurface& s, const PLCurve& c) {
    const ComplexComponent& comp = component_of(s, c);
    return comp.euler == 0 && comp.orientable && comp.free_sides == 0;
}

std::array<mpz_class, 2> torus_class(const BoundarySurface& s, const PLCurve& c) {
    if (!on_torus_component(s, c)) throw Error("kind-mismatch", "curve does not lie on a torus component");
    const ComplexComponent& comp = component_of(s, c);
    const ComplexSummary& sum = s.summary;
    const auto& sides = s.complex.sides;

    std::vector<std::array<int, 2>> rep(sum.edge_count, {-1, -1});
    for (int t : comp.triangles)
        for (int k = 0; k < 3; ++k) {
            auto& r = rep[sum.edge_of_side[3 * t + k]];
            if (r[0] < 0) r = {t, k};
        }
    auto ends = [&](int e) {
        auto [t, k] = rep[e];
        return std::array<int, 2>{sum.vertex_of_corner[3 * t + (k + 1) % 3], sum.vertex_of_corner[3 * t + (k + 2) % 3]};
    };
    // +1 when side (t, k) read from corner k+1 to k+2 runs like the representative
    auto rel = [&](int t, int k) {
        auto [rt, rk] = rep[sum.edge_of_side[3 * t + k]];
        if (rt == t && rk == k) return 1;
        const SideLink& l = sides[t][k];
        return l.corner_map[(k + 1) % 3] == (rk + 1) % 3 ? 1 : -1;
    };

    std::vector<int> edges;
    for (int e = 0; e < sum.edge_count; ++e)
        if (rep[e][0] >= 0) edges.push_back(e);

    // spanning tree of the vertices
    std::vector<char> in_tree(sum.edge_count, 0);
    std::vector<int> up_edge(sum.vertex_count, -1), up_sign(sum.vertex_count, 0);
    std::vector<char> seen(sum.vertex_count, 0);
    int root = ends(edges.front())[0];
    seen[root] = 1;
    for (bool grew = true; grew;) {
        grew = false;
        for (int e : edges) {
            auto [a, b] = ends(e);
            if (seen[a] == seen[b]) continue;
            int child = seen[a] ? b : a;
            seen[child] = 1;
            in_tree[e] = 1;
            up_edge[child] = e;
            up_sign[child] = child == a ? 1 : -1;
            grew = true;
        }
    }
    // spanning tree of the dual graph avoiding tree edges
    std::vector<char> in_cotree(sum.edge_count, 0);
    std::vector<char> reached(s.size(), 0);
    std::deque<int> queue{comp.triangles.front()};
    reached[comp.triangles.front()] = 1;
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        for (int k = 0; k < 3; ++k) {
            int e = sum.edge_of_side[3 * t + k];
            const SideLink& l = sides[t][k];
            if (in_tree[e] || l.tri < 0 || reached[l.tri]) continue;
            reached[l.tri] = 1;
            in_cotree[e] = 1;
            queue.push_back(l.tri);
        }
    }
    std::vector<int> left;
    for (int e : edges)
        if (!in_tree[e] && !in_cotree[e]) left.push_back(e);
    if (left.size() != 2) throw Error("internal", "tree-cotree left the wrong number of generators");

    // intersection points of c with the boundary edges, as signed exits
    std::vector<Segment> segs = curve_segments(s, c);
    std::vector<std::array<int, 2>> exits;  // (tri, side)
    const int n = static_cast<int>(segs.size());
    for (int i = 0; i < n; ++i) {
        int k = edge_of_point(segs[i].b);
        if (k < 0) continue;
        const Segment& next = segs[(i + 1) % n];
        int k2 = edge_of_point(next.a);
        if (next.tri == segs[i].tri && k2 == k) continue;
        exits.push_back({segs[i].tri, k});
    }

    std::array<mpz_class, 2> out;
    for (int g = 0; g < 2; ++g) {
        std::vector<int> coef(sum.edge_count, 0);
        int e = left[g];
        coef[e] += 1;
        auto [a, b] = ends(e);
        for (int x = b; up_edge[x] >= 0;) {
            coef[up_edge[x]] += up_sign[x];
            auto [p, q] = ends(up_edge[x]);
            x = p == x ? q : p;
        }
        for (int x = a; up_edge[x] >= 0;) {
            coef[up_edge[x]] -= up_sign[x];
            auto [p, q] = ends(up_edge[x]);
            x = p == x ? q : p;
        }
        long total = 0;
        for (auto [t, k] : exits) total += static_cast<long>(sum.orientation[t]) * rel(t, k) * coef[sum.edge_of_side[3 * t + k]];
        out[g] = total;
    }
    return out;
}

std::string format_binary(const mpz_class& z) { return z.get_str(2); }

mpz_class parse_binary(const std::string& s) {
    std::size_t i = !s.empty() && s[0] == '-' ? 1 : 0;
    if (i == s.size() || (s[i] == '0' && s.size() != i + 1) || (i == 1 && s == "-0"))
        throw Error("bad-certificate", "malformed binary number");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] != '0' && s[j] != '1') throw Error("bad-certificate", "malformed binary number");
    return mpz_class(s, 2);
}

namespace {

void collect_answers(const TraceNode& n, std::map<Word, std::shared_ptr<const OracleAnswer>>& out) {
    if (n.kind == TraceNode::Kind::Oracle) out.emplace(n.curve, n.answer);
    for (const TraceNode& ch : n.children) collect_answers(ch, out);
}

Witness witness_for(const std::map<Word, std::shared_ptr<const OracleAnswer>>& answers, const Word& curve, int index) {
    auto it = answers.find(curve);
    if (it == answers.end() || !it->second->contractible_in_M)
        throw Error("internal", "formula curve without an oracle answer");
    Witness w;
    w.curve = index;
    if (it->second->witness)
        w.disk = it->second->witness;
    else if (!it->second->boundary_status)
        throw Error("internal", "contractible leaf without a witness");
    return w;
}

}  // namespace

Certificate make_certificate(const Triangulation& m, const Verdict& v, CertificateKind kind) {
    (void)m;
    ConjugationFormula f = emit_formula(v);
    std::map<Word, std::shared_ptr<const OracleAnswer>> answers;
    for (const TraceNode& t : v.traces) collect_answers(t, answers);

    Certificate cert;
    cert.kind = kind;
    cert.arcs = v.curve->root().arc_count();
    const BoundarySurface& s = v.curve->root().surface;
    if (kind == CertificateKind::FewCrossings) {
        for (std::size_t i = 0; i < f.curves.size(); ++i)
            cert.witnesses.push_back(witness_for(answers, f.curves[i], static_cast<int>(i)));
        cert.formula = std::move(f);
        return cert;
    }
    if (!on_torus_component(s, v.curve->root().curve))
        throw Error("kind-mismatch", "the boundary component containing the curve is not a torus");
    cert.cls = torus_class(s, v.curve->root().curve);
    std::array<mpz_class, 2> sum{0, 0};
    for (std::size_t i = 0; i < f.curves.size(); ++i) {
        Constituent k;
        k.exponent = 0;
        for (const Term& t : f.terms)
            if (t.curve == static_cast<int>(i)) k.exponent += t.exponent;
        k.curve = f.curves[i];
        k.cls = torus_class(s, realize_embedded(CombinatorialCurve(v.curve->root_ptr(), k.curve)));
        sum[0] += k.exponent * k.cls[0];
        sum[1] += k.exponent * k.cls[1];
        cert.constituents.push_back(std::move(k));
        cert.witnesses.push_back(witness_for(answers, f.curves[i], static_cast<int>(i)));
    }
    if (sum != cert.cls) throw Error("internal", "abelian identity fails");
    return cert;
}

std::string serialize_certificate(const Certificate& cert) {
    std::ostringstream out;
    out << "contract-certificate 1\n";
    out << "kind " << (cert.kind == CertificateKind::Torus ? "torus" : "few-crossings") << "\n";
    out << "arcs " << cert.arcs << "\n";
    if (cert.kind == CertificateKind::FewCrossings) {
        out << serialize_formula(cert.formula);
    } else {
        out << "class " << format_binary(cert.cls[0]) << " " << format_binary(cert.cls[1]) << "\n";
        out << "constituents " << cert.constituents.size() << "\n";
        for (std::size_t i = 0; i < cert.constituents.size(); ++i) {
            const Constituent& k = cert.constituents[i];
            out << "constituent " << i << " " << format_binary(k.exponent) << " " << format_binary(k.cls[0]) << " "
                << format_binary(k.cls[1]) << " " << format_word(k.curve) << "\n";
        }
    }
    out << "witnesses " << cert.witnesses.size() << "\n";
    for (const Witness& w : cert.witnesses) {
        if (w.disk) {
            out << "disk " << w.curve;
            for (int x : w.disk->coords) out << " " << x;
            out << "\n";
        } else {
            out << "boundary " << w.curve << "\n";
        }
    }
    out << "end\n";
    return out.str();
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error("bad-certificate", msg); }

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

long parse_int(const std::string& s) {
    long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad("malformed integer '" + s + "'");
    return v;
}

std::string rest_after(const std::string& line, std::string_view key) {
    if (line.compare(0, key.size(), key) != 0 || line.size() <= key.size() || line[key.size()] != ' ')
        bad("expected '" + std::string(key) + "'");
    return line.substr(key.size() + 1);
}

}  // namespace

Certificate parse_certificate(const std::string& text) {
    if (text.empty() || text.back() != '\n') bad("certificate must end with a newline");
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    std::size_t pos = 0;
    auto take = [&]() -> const std::string& {
        if (pos >= lines.size()) bad("certificate truncated");
        return lines[pos++];
    };
    if (take() != "contract-certificate 1") bad("unknown header");
    Certificate cert;
    std::string kind = rest_after(take(), "kind");
    if (kind == "few-crossings")
        cert.kind = CertificateKind::FewCrossings;
    else if (kind == "torus")
        cert.kind = CertificateKind::Torus;
    else
        bad("unknown kind");
    cert.arcs = static_cast<int>(parse_int(rest_after(take(), "arcs")));
    std::size_t curves = 0;
    if (cert.kind == CertificateKind::FewCrossings) {
        cert.formula = parse_formula(lines, pos);
        curves = cert.formula.curves.size();
    } else {
        auto cls = split_words(rest_after(take(), "class"));
        if (cls.size() != 2) bad("class needs two numbers");
        cert.cls = {parse_binary(cls[0]), parse_binary(cls[1])};
        curves = static_cast<std::size_t>(parse_int(rest_after(take(), "constituents")));
        if (curves > lines.size()) bad("too many constituents");
        for (std::size_t i = 0; i < curves; ++i) {
            std::string rest = rest_after(take(), "constituent");
            auto w = split_words(rest);
            if (w.size() < 5 || parse_int(w[0]) != static_cast<long>(i)) bad("constituent lines out of order");
            Constituent k;
            k.exponent = parse_binary(w[1]);
            k.cls = {parse_binary(w[2]), parse_binary(w[3])};
            std::size_t skip = 0;
            for (int f = 0; f < 4; ++f) skip += w[f].size() + 1;
            k.curve = parse_word(rest.substr(skip));
            cert.constituents.push_back(std::move(k));
        }
    }
    std::size_t nw = static_cast<std::size_t>(parse_int(rest_after(take(), "witnesses")));
    if (nw != curves) bad("one witness per curve expected");
    for (std::size_t i = 0; i < nw; ++i) {
        auto w = split_words(take());
        if (w.size() < 2 || parse_int(w[1]) != static_cast<long>(i)) bad("witness lines out of order");
        Witness x;
        x.curve = static_cast<int>(i);
        if (w[0] == "disk") {
            NormalVector v;
            for (std::size_t j = 2; j < w.size(); ++j) {
                long c = parse_int(w[j]);
                if (c < 0 || c > 1000000) bad("disk coordinate out of range");
                v.coords.push_back(static_cast<int>(c));
            }
            x.disk = std::move(v);
        } else if (w[0] != "boundary" || w.size() != 2) {
            bad("unknown witness");
        }
        cert.witnesses.push_back(std::move(x));
    }
    if (take() != "end" || pos != lines.size()) bad("trailing data");
    return cert;
}

namespace {

// The constituent as an embedded curve, or nothing when it is not a simple sub-curve of c.
std::optional<PLCurve> constituent_curve(const std::shared_ptr<const RootCurve>& root, const Word& w) {
    try {
        CombinatorialCurve cc(root, w);
        if (cc.crossing_count() != 0) return std::nullopt;
        return realize_embedded(cc);
    } catch (const Error&) {
        return std::nullopt;
    }
}

bool check_witness(const Triangulation& m, const BoundarySurface& s, const PLCurve& pl, const Witness& w) {
    if (w.disk) return verify_disk_witness(m, pl, *w.disk);
    return bounds_disk_in_boundary(s, pl);
}

}  // namespace

CertificateCheck verify_certificate(const Triangulation& m, const PLCurve& c, const std::string& text) {
    auto reject = [](std::string why) { return CertificateCheck{false, std::move(why)}; };
    Certificate cert;
    try {
        cert = parse_certificate(text);
    } catch (const Error& e) {
        return reject(e.code());
    }
    if (serialize_certificate(cert) != text) return reject("non-canonical");
    if (!validate_manifold(m).is_manifold) return reject("not-a-manifold");
    BoundarySurface s = boundary_surface(m);
    auto root = make_root(s, c);
    if (cert.arcs != root->arc_count()) return reject("arc-count");
    const int crossings = root->crossings.size();

    if (cert.kind == CertificateKind::FewCrossings) {
        if (cert.formula.lhs != CombinatorialCurve::whole(root).letters()) return reject("lhs-mismatch");
        try {
            if (!verify_formula(cert.formula, cert.arcs)) return reject("formula");
        } catch (const Error& e) {
            return reject(e.code());
        }
        for (std::size_t i = 0; i < cert.formula.curves.size(); ++i) {
            auto pl = constituent_curve(root, cert.formula.curves[i]);
            if (!pl) return reject("constituent-not-simple");
            if (!check_witness(m, s, *pl, cert.witnesses[i])) return reject("witness");
        }
        return {true, "ok"};
    }

    if (!on_torus_component(s, c)) return reject("kind-mismatch");
    const mpz_class limit = 2 * (crossings + c.size());
    auto small = [&](const std::array<mpz_class, 2>& k) { return abs(k[0]) <= limit && abs(k[1]) <= limit; };
    if (!small(cert.cls) || torus_class(s, c) != cert.cls) return reject("class");
    std::array<mpz_class, 2> sum{0, 0};
    for (std::size_t i = 0; i < cert.constituents.size(); ++i) {
        const Constituent& k = cert.constituents[i];
        auto pl = constituent_curve(root, k.curve);
        if (!pl) return reject("constituent-not-simple");
        if (!small(k.cls) || torus_class(s, *pl) != k.cls) return reject("constituent-class");
        if (!check_witness(m, s, *pl, cert.witnesses[i])) return reject("witness");
        sum[0] += k.exponent * k.cls[0];
        sum[1] += k.exponent * k.cls[1];
    }
    if (sum != cert.cls) return reject("homology-identity");
    return {true, "ok"};
}

}  // namespace contract
