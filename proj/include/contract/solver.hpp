#pragma once

#include "contract/combinatorial.hpp"
#include "contract/crossing_graph.hpp"
#include "contract/normal.hpp"
#include "contract/word.hpp"

#include <gmpxx.h>

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace contract {

// Decides a simple curve realized on the boundary.
using SimpleOracle = std::function<OracleAnswer(const PLCurve&)>;

struct TraceNode {
    enum class Kind { Oracle, Forced, Internal };

    Kind kind = Kind::Forced;
    Word curve;
    int crossings = 0;
    bool result = false;  // (i)
    std::shared_ptr<const OracleAnswer> answer;  // oracle leaves
    // internal nodes returning (i): the pair that worked and both children
    int u = -1, v = -1;
    bool interlaced = false;
    int branch = 0;  // 1 or 2 for interlaced pairs
    ConjugationFormula formula;
    std::vector<TraceNode> children;
    // internal nodes: pairs examined, and the number of calls in this subtree
    long pairs_tried = 0;
    long subtree_calls = 1;
};

using RecursionTrace = TraceNode;

struct RecursionStats {
    long calls = 0;
    long oracle_calls = 0;
    long cache_hits = 0;
    int max_depth = 0;
    // live words held by open frames, in letters
    long live_units = 0;
    long peak_units = 0;
    long max_frame_units = 0;
    bool bounded_negative = false;
    std::map<int, long> max_calls_by_m;
};

class Recursion {
public:
    explicit Recursion(SimpleOracle oracle) : oracle_(std::move(oracle)) {}

    struct Result {
        bool ok = false;  // (i)
        std::optional<PLCurve> witness;
        TraceNode trace;
    };

    Result run(const CombinatorialCurve& c);
    const RecursionStats& stats() const { return stats_; }
    RecursionStats& stats() { return stats_; }

private:
    Result visit(const CombinatorialCurve& c, int depth);
    std::shared_ptr<const OracleAnswer> ask(const CombinatorialCurve& c);

    SimpleOracle oracle_;
    RecursionStats stats_;
    std::map<Word, std::shared_ptr<const OracleAnswer>> cache_;
};

// Recursion on one curve with the normal-surface oracle at bound B.
Recursion::Result special_recursion(const Triangulation& m, const CombinatorialCurve& c, int bound);

struct SubsetAttempt {
    std::vector<int> x;
    bool ok = false;
    int cycles = 0;
    int failed_cycle = -1;
};

struct Verdict {
    bool contractible = false;
    std::optional<PLCurve> witness_curve;
    std::optional<std::vector<int>> chosen_x;
    std::vector<RecursionTrace> traces;  // per elementary cycle of the chosen subset
    int bound = 0;
    bool bounded_negative = false;       // some oracle leaf ran out of bound
    std::vector<SubsetAttempt> attempts;
    RecursionStats stats;
    // for formula emission
    std::optional<CombinatorialCurve> curve;
    std::optional<CrossingGraph> graph;
    std::optional<SpanningTree> tree;
    std::vector<ElementaryCycle> cycles;

    bool inconclusive() const { return !contractible && bounded_negative; }
};

Verdict decide_contractible(const Triangulation& m, const PLCurve& c, int bound);
Verdict decide_contractible(const BoundarySurface& s, const PLCurve& c, const SimpleOracle& oracle, int bound = 0);

struct FormulaStats {
    int leaf_curves = 0;
    int paths = 0;  // distinct nonempty conjugators
    int terms = 0;
    long leaf_limit = 0;
    long path_limit = 0;
};

// Throws trace-incomplete unless the verdict is contractible, formula-bound when there are more
// than 3 * 2^(m/2) leaf curves. The path count is only reported.
ConjugationFormula emit_formula(const Verdict& v, FormulaStats* stats = nullptr);
FormulaStats formula_stats(const ConjugationFormula& f, int crossings);

// Throws unknown-arc when a letter is outside the arc alphabet.
bool verify_formula(const ConjugationFormula& f, int arc_count);

std::string serialize_trace(const Verdict& v);

// Class of a curve in H1 of its boundary component, which must be a torus, in the basis dual to
// a tree-cotree generating pair.
std::array<mpz_class, 2> torus_class(const BoundarySurface& s, const PLCurve& c);
bool on_torus_component(const BoundarySurface& s, const PLCurve& c);

enum class CertificateKind { FewCrossings, Torus };

struct Witness {
    int curve = 0;
    std::optional<NormalVector> disk;  // none: the curve bounds a disk in the boundary
};

struct Constituent {
    mpz_class exponent;
    std::array<mpz_class, 2> cls;
    Word curve;
};

struct Certificate {
    CertificateKind kind = CertificateKind::FewCrossings;
    int arcs = 0;
    ConjugationFormula formula;               // few-crossings
    std::array<mpz_class, 2> cls;             // torus: class of c
    std::vector<Constituent> constituents;    // torus
    std::vector<Witness> witnesses;
};

Certificate make_certificate(const Triangulation& m, const Verdict& v, CertificateKind kind);
std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

struct CertificateCheck {
    bool ok = false;
    std::string reason;
};

CertificateCheck verify_certificate(const Triangulation& m, const PLCurve& c, const std::string& text);

std::string format_binary(const mpz_class& z);
mpz_class parse_binary(const std::string& s);

}  // namespace contract
