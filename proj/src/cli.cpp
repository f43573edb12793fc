#include "contract/cli.hpp"

#include "contract/error.hpp"
#include "contract/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace contract::cli {

namespace {

using nlohmann::json;

struct Config {
    std::string tri, curve, cert, out, formula_out, trace_out, kind = "few-crossings", format = "text";
    int bound = kDefaultBound;
    bool witness = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("input-not-found", "cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error("output-not-writable", "cannot write " + path);
}

void require_distinct(const std::vector<std::string>& paths) {
    std::vector<std::filesystem::path> seen;
    for (const std::string& p : paths) {
        if (p.empty()) continue;
        auto canon = std::filesystem::weakly_canonical(p);
        if (std::find(seen.begin(), seen.end(), canon) != seen.end())
            throw Error("paths-not-distinct", p + " is used twice");
        seen.push_back(canon);
    }
}

void check_bound(int b) {
    if (b < 1) throw Error("bad-bound", "--max-coord must be at least 1");
}

std::string fraction(Rational q) {
    q.canonicalize();
    return q.get_str();
}

json curve_json(const PLCurve& c) {
    json pts = json::array();
    for (const CurvePoint& p : c.points) pts.push_back({{"tri", p.tri}, {"x", fraction(p.p.x)}, {"y", fraction(p.p.y)}});
    return pts;
}

std::string subset_text(const std::vector<int>& x) {
    std::string s = "{";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " " : "") + std::to_string(x[i]);
    return s + "}";
}

const char* answer_name(const Verdict& v) {
    return v.contractible ? "contractible" : v.inconclusive() ? "inconclusive" : "not-contractible";
}

int answer_code(const Verdict& v) {
    return v.contractible ? kContractible : v.inconclusive() ? kInconclusive : kNotContractible;
}

Triangulation load_tri(const Config& cfg) { return parse_triangulation(read_file(cfg.tri)); }
PLCurve load_curve(const std::string& path) { return parse_curve(read_file(path)); }

int decide(const Config& cfg, std::ostream& out) {
    check_bound(cfg.bound);
    require_distinct({cfg.tri, cfg.curve, cfg.formula_out, cfg.trace_out});
    Triangulation t = load_tri(cfg);
    PLCurve c = load_curve(cfg.curve);
    Verdict v = decide_contractible(t, c, cfg.bound);
    std::optional<ConjugationFormula> f;
    FormulaStats st;
    if (v.contractible && !cfg.formula_out.empty()) {
        f = emit_formula(v, &st);
        write_file(cfg.formula_out, "contract-formula 1\n" + serialize_formula(*f) + "end\n");
    }
    if (!cfg.trace_out.empty()) write_file(cfg.trace_out, serialize_trace(v));

    if (cfg.format == "json") {
        json j;
        j["answer"] = answer_name(v);
        j["bound"] = v.bound;
        j["bounded_negative"] = v.bounded_negative;
        j["crossings"] = v.curve->crossing_count();
        j["chosen_x"] = v.chosen_x ? json(*v.chosen_x) : json(nullptr);
        j["witness_curve"] = v.witness_curve ? curve_json(*v.witness_curve) : json(nullptr);
        j["subsets_tried"] = v.attempts.size();
        j["recursion"] = {{"calls", v.stats.calls},
                          {"oracle_calls", v.stats.oracle_calls},
                          {"max_depth", v.stats.max_depth},
                          {"peak_units", v.stats.peak_units}};
        if (f) j["formula"] = {{"leaf_curves", st.leaf_curves}, {"paths", st.paths}, {"terms", st.terms}};
        out << j.dump(2) << "\n";
    } else {
        out << "answer " << answer_name(v) << "\n";
        out << "crossings " << v.curve->crossing_count() << "\n";
        out << "bound " << v.bound << (v.bounded_negative ? " exhausted" : "") << "\n";
        out << "subsets-tried " << v.attempts.size() << "\n";
        if (v.chosen_x) out << "chosen-x " << subset_text(*v.chosen_x) << "\n";
        if (v.witness_curve)
            out << "witness-curve\n" << serialize_curve(*v.witness_curve);
        else
            out << "witness-curve none\n";
    }
    return answer_code(v);
}

int certify(const Config& cfg, std::ostream& out) {
    check_bound(cfg.bound);
    if (cfg.out.empty()) throw Error("missing-output", "--out is required");
    require_distinct({cfg.tri, cfg.curve, cfg.out});
    CertificateKind kind = cfg.kind == "torus" ? CertificateKind::Torus : CertificateKind::FewCrossings;
    Triangulation t = load_tri(cfg);
    PLCurve c = load_curve(cfg.curve);
    if (kind == CertificateKind::Torus && !on_torus_component(boundary_surface(t), c))
        throw Error("kind-mismatch", "the boundary component containing the curve is not a torus");
    Verdict v = decide_contractible(t, c, cfg.bound);
    if (v.contractible) write_file(cfg.out, serialize_certificate(make_certificate(t, v, kind)));
    if (cfg.format == "json") {
        json j{{"answer", answer_name(v)}, {"kind", cfg.kind}, {"written", v.contractible}};
        out << j.dump(2) << "\n";
    } else {
        out << "answer " << answer_name(v) << "\n";
        out << (v.contractible ? "certificate " + cfg.kind + " written" : std::string("no certificate")) << "\n";
    }
    return answer_code(v);
}

int verify(const Config& cfg, std::ostream& out) {
    Triangulation t = load_tri(cfg);
    PLCurve c = load_curve(cfg.curve);
    std::string text = read_file(cfg.cert);
    CertificateCheck chk = verify_certificate(t, c, text);
    if (cfg.format == "json")
        out << json{{"accepted", chk.ok}, {"reason", chk.reason}}.dump(2) << "\n";
    else
        out << (chk.ok ? "accepted" : "rejected " + chk.reason) << "\n";
    return chk.ok ? kContractible : kNotContractible;
}

std::string vector_line(const NormalVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.coords.size(); ++i) s += (i ? " " : "") + std::to_string(v.coords[i]);
    return s;
}

int enumerate(const Config& cfg, std::ostream& out) {
    check_bound(cfg.bound);
    Triangulation t = load_tri(cfg);
    const bool js = cfg.format == "json";
    if (cfg.witness) {
        if (cfg.curve.empty()) throw Error("missing-curve", "--witness needs --curve");
        OracleAnswer a = simple_contractible(t, load_curve(cfg.curve), cfg.bound);
        if (js)
            out << json{{"reason", a.reason}, {"witness", a.witness ? json(a.witness->coords) : json(nullptr)}}.dump(2)
                << "\n";
        else if (a.witness)
            out << vector_line(*a.witness) << "\n";
        else
            out << "none " << a.reason << "\n";
        if (a.witness) return kContractible;
        return a.negative == NegativeKind::Bounded ? kInconclusive : kNotContractible;
    }
    std::vector<NormalVector> found;
    auto emit = [&](const NormalVector& v) {
        if (js)
            found.push_back(v);
        else
            out << vector_line(v) << "\n";
        return true;
    };
    if (cfg.curve.empty()) {
        enumerate_admissible(t, cfg.bound, emit);
    } else {
        Subdivision sub = subdivide_along_curve(t, load_curve(cfg.curve));
        auto target = parallel_curve(sub);
        enumerate_admissible(sub.tri, cfg.bound, emit, &target);
    }
    if (js) {
        json arr = json::array();
        for (const auto& v : found) arr.push_back(v.coords);
        out << json{{"vectors", arr}}.dump(2) << "\n";
    }
    return 0;
}

int validate(const Config& cfg, std::ostream& out) {
    Triangulation t = load_tri(cfg);
    ValidationReport r = validate_manifold(t);
    if (cfg.format == "json") {
        json v = json::array();
        for (const auto& x : r.violations)
            v.push_back({{"check", static_cast<int>(x.check)}, {"description", x.description}});
        json l = json::array();
        for (const auto& x : r.links)
            l.push_back({{"vertex", x.vertex_class}, {"sphere", x.sphere}, {"disk", x.disk}, {"euler", x.euler}});
        out << json{{"is_manifold", r.is_manifold}, {"violations", v}, {"links", l}}.dump(2) << "\n";
    } else {
        out << "manifold " << (r.is_manifold ? "yes" : "no") << "\n";
        for (const auto& x : r.violations)
            out << "violation " << static_cast<int>(x.check) << " " << x.description << "\n";
        for (const auto& x : r.links)
            out << "link " << x.vertex_class << " " << (x.sphere ? "sphere" : x.disk ? "disk" : "other") << "\n";
    }
    return r.is_manifold ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app("Decide contractibility of a closed curve on the boundary of a triangulated 3-manifold", "contract");
    app.require_subcommand(1);
    auto fmt = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };
    auto bound = [&](CLI::App* sub) {
        sub->add_option("--max-coord", cfg.bound, "largest normal coordinate searched (default 8)");
    };

    CLI::App* dec = app.add_subcommand("decide", "decide contractibility");
    dec->add_option("--tri", cfg.tri, "triangulation file")->required();
    dec->add_option("--curve", cfg.curve, "curve file")->required();
    bound(dec);
    dec->add_option("--emit-formula", cfg.formula_out, "write the homotopy formula here");
    dec->add_option("--trace", cfg.trace_out, "write the recursion trace here");
    fmt(dec);

    CLI::App* cer = app.add_subcommand("certify", "decide and write a certificate");
    cer->add_option("--kind", cfg.kind, "few-crossings or torus")->check(CLI::IsMember({"few-crossings", "torus"}));
    cer->add_option("--tri", cfg.tri, "triangulation file")->required();
    cer->add_option("--curve", cfg.curve, "curve file")->required();
    cer->add_option("--out", cfg.out, "certificate file")->required();
    bound(cer);
    fmt(cer);

    CLI::App* ver = app.add_subcommand("verify", "check a certificate");
    ver->add_option("--cert", cfg.cert, "certificate file")->required();
    ver->add_option("--tri", cfg.tri, "triangulation file")->required();
    ver->add_option("--curve", cfg.curve, "curve file")->required();
    fmt(ver);

    CLI::App* nor = app.add_subcommand("normal", "normal surface tools");
    nor->require_subcommand(1);
    CLI::App* en = nor->add_subcommand("enumerate", "list admissible normal vectors");
    en->add_option("--tri", cfg.tri, "triangulation file")->required();
    en->add_option("--curve", cfg.curve, "restrict to surfaces bounded by this curve");
    en->add_option("--max-coord", cfg.bound, "largest coordinate")->required();
    en->add_flag("--witness", cfg.witness, "print the first spanning disk of --curve");
    fmt(en);

    CLI::App* val = app.add_subcommand("validate", "run the manifold checks");
    val->add_option("--tri", cfg.tri, "triangulation file")->required();
    fmt(val);

    std::vector<const char*> argv{"contract"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "usage: " << msg << "\n";
        return kInputError;
    }

    try {
        if (dec->parsed()) return decide(cfg, out);
        if (cer->parsed()) return certify(cfg, out);
        if (ver->parsed()) return verify(cfg, out);
        if (en->parsed()) return enumerate(cfg, out);
        if (val->parsed()) return validate(cfg, out);
    } catch (const Error& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << e.code() << ": " << msg << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace contract::cli
