#pragma once

// Structural machinery: block decomposition, SPQR and contracted SPQR trees
// built from the recursive split definition, fan- and twin-class reductions,
// glued-edge bookkeeping with parallel-minor search, and exact evaluation of
// the closed-form bound functions.

#include "linfdim/graph.hpp"

#include <optional>

namespace linfdim {

struct BlockDecomposition {
    std::vector<Graph> blocks;  // maximal 2-connected pieces, bridges, isolated vertices
    std::set<Vertex> cut_vertices;
};

BlockDecomposition blocks(const Graph& g);

// ---------------------------------------------------------------------------
// SPQR trees

enum class SpqrKind { S, P, R, O };

std::string to_string(SpqrKind kind);

struct SpqrNode {
    SpqrKind kind;
    MultiGraph minor;
};

struct SpqrTreeEdge {
    int a = 0, b = 0;  // node indices
    Edge shared;       // ends of the virtual edge the two minors have in common
};

struct SpqrTree {
    std::vector<SpqrNode> nodes;
    std::vector<SpqrTreeEdge> edges;
};

// Recursive construction: split at the lexicographically smallest 2-cutset
// whose two vertices have degree >= 3, bottoming out at cycles (S) and
// 3-connected graphs (R). Every input edge ends up real in exactly one node.
SpqrTree spqr(const Graph& g);

// Contracts every maximal subtree of S- and P-nodes into an O-node whose
// minor is the corresponding 2-sum composition.
SpqrTree contract_spqr(const SpqrTree& t);

// One 2-sum per tree edge; reproduces the decomposed graph exactly.
Graph spqr_recompose(const SpqrTree& t);

int spqr_tree_diameter(const SpqrTree& t);

// Trigger flag for minor hunting downstream: diameter >= 6k.
bool spqr_diameter_check(const SpqrTree& contracted, int k);

// Series-parallel reduction test: a 2-connected multigraph has treewidth <= 2
// iff deleting parallel duplicates and suppressing degree-2 vertices reduces
// it to a single edge.
bool treewidth_at_most_2(const MultiGraph& g);

bool multigraph_two_connected(const MultiGraph& g);

// ---------------------------------------------------------------------------
// reductions

struct FanReductionStep {
    Vertex center;
    std::vector<Vertex> outer_path;  // the fan's outer path before contraction
    Vertex merged_into;              // name carrying the contracted middle path
};

struct FanReductionResult {
    Graph graph;
    std::vector<FanReductionStep> log;
};

// Repeatedly contracts the middle path of a maximal reducible fan (>= 5 outer
// vertices, inner outer vertices of degree exactly 3) until none remains.
// Overlapping maximal fans are processed greedily in canonical vertex order.
FanReductionResult fan_reduction(const Graph& g);

// Trims every maximal twin class (stable, common neighborhood of size <= h,
// at least h+1 members) down to its h+1 lexicographically smallest members.
// Preserves the vertex cover number; requires a 3-connected input and h >= 3.
Graph h_reduction(const Graph& g, int h);

// ---------------------------------------------------------------------------
// glued edges

struct GluedGraph {
    Graph base;
    std::set<Edge> glued;
    std::map<Edge, Graph> attachments;  // optional; each shares exactly the edge ends
};

void validate_glued(const GluedGraph& gg);

struct GlumpkinResult {
    bool found = false;
    MinorModel model;                 // two-sided contraction witness (pattern K2)
    std::vector<Edge> parallel_edges; // the k glued edges made parallel
};

// Brute-force search for two disjoint connected vertex sets with k glued
// edges between them (containing `root` when given).
GlumpkinResult glumpkin_search(const GluedGraph& gg, int k, std::optional<Edge> root = {});

// ---------------------------------------------------------------------------
// bound functions

// Order-of-magnitude stand-in for values whose decimal expansion does not
// fit in memory: `value` with `tower` applications of 10^x on top.
struct Magnitude {
    int tower = 0;
    double value = 0.0;
    std::string str() const;
};

struct BoundEntry {
    std::string name;
    std::string args;
    std::optional<Int> exact;      // present whenever the value fits the digit guard
    Magnitude approx;              // always populated
};

struct BoundTable {
    std::vector<BoundEntry> entries;
    const BoundEntry& at(const std::string& name) const;
};

// Exact big-integer evaluation of every closed-form threshold and their
// compositions, falling back to magnitude estimates once the digit count
// itself becomes astronomical.
BoundTable bound_functions(int k, std::optional<int> p = {}, std::optional<int> q = {},
                           std::optional<Int> M = {});

}  // namespace linfdim
