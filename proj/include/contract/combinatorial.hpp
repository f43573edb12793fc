#pragma once

#include "contract/curve.hpp"
#include "contract/word.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace contract {

// The input curve with its crossings; arc k runs from passage k to passage k+1 (cyclically).
// Without crossings there is one closed arc.
struct RootCurve {
    struct PassageInfo {
        int crossing = 0;
        int which = 0;  // 0 or 1: index into Crossing::passes
        Passage at;
    };

    BoundarySurface surface;
    PLCurve curve;
    std::vector<Segment> segments;
    CrossingSet crossings;
    std::vector<PassageInfo> passages;

    int arc_count() const { return passages.empty() ? 1 : static_cast<int>(passages.size()); }
};

// Throws non-general-position when the curve is not in general position.
std::shared_ptr<const RootCurve> make_root(const BoundarySurface& s, const PLCurve& c);

// A passage of the curve straight through one of its own crossings.
struct Event {
    int junction = 0;  // between letter junction and letter junction+1
    int crossing = 0;  // root crossing id
    int passage = 0;   // root passage id
};

// A closed walk through root arcs, each used at most once. Consecutive arcs meet at a crossing;
// the walk either continues straight there or turns (a smoothed crossing).
class CombinatorialCurve {
public:
    CombinatorialCurve(std::shared_ptr<const RootCurve> root, Word letters);
    static CombinatorialCurve whole(std::shared_ptr<const RootCurve> root);

    const RootCurve& root() const { return *root_; }
    const std::shared_ptr<const RootCurve>& root_ptr() const { return root_; }
    const Word& letters() const { return letters_; }
    int length() const { return static_cast<int>(letters_.size()); }
    // Root crossings still present in this curve, ascending.
    const std::vector<int>& crossings() const { return alive_; }
    int crossing_count() const { return static_cast<int>(alive_.size()); }
    bool has_crossing(int x) const;
    // Root crossings where the curve turns.
    const std::vector<int>& smoothed() const { return smoothed_; }
    const std::vector<Event>& events() const { return events_; }
    // Passage ids where the curve passes straight through (alive or not).
    const std::vector<int>& straight_passages() const { return straight_; }

    bool interlaced(int u, int v) const;
    CombinatorialCurve reversed() const;

    int start_passage(int letter_index) const;
    int end_passage(int letter_index) const;

private:
    std::shared_ptr<const RootCurve> root_;
    Word letters_;
    std::vector<int> alive_, smoothed_, straight_;
    std::vector<Event> events_;
};

struct Decomposition {
    bool interlaced = false;
    Word rho;  // letters = rho * (alpha beta gamma delta) * rho^-1
    Word alpha, beta, gamma, delta;
};

Decomposition decompose_at(const CombinatorialCurve& c, int u, int v);

struct Smoothing {
    CombinatorialCurve first;   // c'
    CombinatorialCurve second;  // c''
    ConjugationFormula formula;
};

Smoothing smooth_noninterlaced(const CombinatorialCurve& c, int u, int v);
std::pair<Smoothing, Smoothing> smooth_interlaced(const CombinatorialCurve& c, int u, int v);

// Pushes turning junctions off their crossing by a small exact offset; the result crosses itself
// exactly at the curve's remaining crossings.
PLCurve realize(const CombinatorialCurve& c);
// Same, for curves without remaining crossings; throws otherwise.
PLCurve realize_embedded(const CombinatorialCurve& c);

}  // namespace contract
