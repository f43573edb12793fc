#pragma once

#include "contract/combinatorial.hpp"

#include <vector>

namespace contract {

struct GraphEdge {
    int from = 0;  // vertex index
    int to = 0;
    Word arcs;     // root arc letters traversed along the curve
};

// Vertices are the crossings of X in order of first passage; edges are the pieces of the curve
// between consecutive X passages, numbered in curve order. For X empty there is one synthetic
// vertex carrying the whole curve as a self-edge.
struct CrossingGraph {
    CombinatorialCurve curve;
    std::vector<int> crossings;  // vertex -> root crossing id (empty for the synthetic vertex)
    std::vector<GraphEdge> edges;
    std::vector<int> residual;   // crossings of the curve not in X
    Word rho;                    // curve letters = rho * (edge arcs in order) * rho^-1
    int vertex_count = 1;
};

CrossingGraph build_crossing_graph(const CombinatorialCurve& c, const std::vector<int>& x);

struct SpanningTree {
    int root = 0;
    std::vector<char> in_tree;    // per edge
    std::vector<int> parent_edge; // per vertex, -1 at the root
    std::vector<int> parent;      // per vertex
    std::vector<int> depth;
};

SpanningTree spanning_tree(const CrossingGraph& g);

// Graph letters: +(e+1) traverses edge e forward, -(e+1) backward.
struct ElementaryCycle {
    int edge = 0;      // the non-tree edge
    Word steps;        // edge letters: the edge, then the tree path back to its tail
};

std::vector<ElementaryCycle> elementary_cycles(const CrossingGraph& g, const SpanningTree& t);

// Tree path from the root to v as edge letters.
Word root_path(const CrossingGraph& g, const SpanningTree& t, int v);

// Rewrites the closed edge walk as a product of conjugates of elementary cycles (edge alphabet).
// The formula's curves are the cycles in the order returned by elementary_cycles.
ConjugationFormula walk_as_conjugate_product(const CrossingGraph& g, const SpanningTree& t, const Word& walk);

// Replaces each edge letter by its arcs.
Word edge_word_to_arcs(const CrossingGraph& g, const Word& edge_word);
ConjugationFormula formula_to_arcs(const CrossingGraph& g, const ConjugationFormula& f);

// The curve traced by an elementary cycle, in the root arc alphabet.
CombinatorialCurve cycle_curve(const CrossingGraph& g, const ElementaryCycle& z);

// The closed walk tracing the whole curve: all edges forward in order.
Word curve_walk(const CrossingGraph& g);

}  // namespace contract
