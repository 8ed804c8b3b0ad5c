#pragma once

// Graph and metric-graph representations, the named graph families with
// their certificate distance functions, elementary surgery (sums,
// contraction, suppression) and brute-force minor-model search.
//
// Vertex ids are opaque strings. Generators use the conventional names
// (v, w, v1, w1, v0, ...) so fixtures read like the figures they model.
// All types are immutable-after-construction values; operations are pure.

#include "linfdim/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace linfdim {

using Vertex = std::string;

// Unordered pair, normalized so u <= v. Loops are rejected.
struct Edge {
    Vertex u, v;
    Edge() = default;
    Edge(Vertex a, Vertex b);
    auto operator<=>(const Edge&) const = default;
};

std::string to_string(const Edge& e);

// Ordered pair (an orientation of an edge).
struct Arc {
    Vertex from, to;
    auto operator<=>(const Arc&) const = default;
};

inline Edge arc_edge(const Arc& a) { return Edge(a.from, a.to); }
inline Arc reversed(const Arc& a) { return Arc{a.to, a.from}; }

std::string to_string(const Arc& a);

// Simple undirected graph.
class Graph {
public:
    Graph() = default;
    Graph(std::vector<Vertex> vertices, std::vector<Edge> edges);

    void add_vertex(const Vertex& v);
    void add_edge(const Vertex& a, const Vertex& b);
    void remove_edge(const Edge& e);
    void remove_vertex(const Vertex& v);  // drops incident edges

    bool has_vertex(const Vertex& v) const { return verts_.count(v) > 0; }
    bool has_edge(const Edge& e) const { return edges_.count(e) > 0; }
    bool adjacent(const Vertex& a, const Vertex& b) const;

    const std::set<Vertex>& vertices() const { return verts_; }
    const std::set<Edge>& edges() const { return edges_; }
    std::size_t num_vertices() const { return verts_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    std::vector<Vertex> neighbors(const Vertex& v) const;
    std::size_t degree(const Vertex& v) const;

    Graph induced(const std::set<Vertex>& keep) const;

    auto operator<=>(const Graph&) const = default;

private:
    std::set<Vertex> verts_;
    std::set<Edge> edges_;
};

// Multigraph with real/virtual edge flags; only used by the SPQR machinery.
// Parallel edges are permitted, loops are not.
struct MultiEdge {
    Vertex u, v;  // normalized u <= v
    bool real = true;
    MultiEdge() = default;
    MultiEdge(Vertex a, Vertex b, bool is_real);
    auto operator<=>(const MultiEdge&) const = default;
};

struct MultiGraph {
    std::set<Vertex> vertices;
    std::vector<MultiEdge> edges;  // multiset, kept sorted for determinism

    void add_vertex(const Vertex& v) { vertices.insert(v); }
    void add_edge(const Vertex& a, const Vertex& b, bool real);
    std::size_t degree(const Vertex& v) const;
    bool simple() const;  // no parallel pairs
    Graph as_graph() const;

    auto operator<=>(const MultiGraph&) const = default;
};

// Graph plus an exact rational distance function on its edges.
// Invariant (checked by validate_metric): d(vw) equals the d-weighted
// shortest-path distance between v and w, for every edge vw.
struct MetricGraph {
    Graph graph;
    std::map<Edge, Rat> d;

    const Rat& dist(const Edge& e) const;
    void set(const Vertex& a, const Vertex& b, Rat value);
};

// Verdict of validate_metric. On failure, `shorter_path` is a vertex walk
// from one end of `violating` to the other whose weight `path_weight` is
// strictly below d(violating).
struct MetricVerdict {
    bool valid = true;
    Edge violating;
    std::vector<Vertex> shorter_path;
    Rat path_weight;
};

MetricVerdict validate_metric(const MetricGraph& mg);

// ---------------------------------------------------------------------------
// family generators

enum class Family { S, P, F, N, Wheel, Ladder, Fan, Complete, SquareGrid, TriGrid };

Family family_from_string(const std::string& name);
std::string family_to_string(Family f);

// The named graph on parameter k. Only the S/P/F/N families carry a
// certificate distance function; requesting one elsewhere is an input error.
Graph gen_family(Family family, int k);
MetricGraph gen_family_certificate(Family family, int k);

// The designated matching whose members are pairwise incompatible under the
// certificate distance function (k+1 edges for each of S/P/F/N).
std::vector<Edge> certificate_matching(Family family, int k);

// ---------------------------------------------------------------------------
// surgery

enum class SumKind { OneSum, TwoSumKeep, TwoSumDelete };

// G1 +_v G2, G1 (+)_e G2 (edge kept) or G1 +_e G2 (edge deleted).
// The operands must intersect exactly in the shared vertex / edge ends.
Graph graph_sum(const Graph& g1, const Graph& g2, SumKind kind,
                const Vertex& a, const Vertex& b = Vertex());

// Deletes a degree-2 vertex and joins its neighbors (if not already joined).
Graph suppress_degree2(const Graph& g, const Vertex& v);

// Contracts edge uv; the merged vertex keeps the name `into` (must be u or v).
Graph contract_edge(const Graph& g, const Edge& e, const Vertex& into);

// ---------------------------------------------------------------------------
// minor models

struct MinorModel {
    Graph host;
    Graph pattern;
    std::map<Vertex, std::set<Vertex>> images;  // pattern vertex -> host subset
};

bool verify_model(const MinorModel& m);

struct MinorSearchOptions {
    std::size_t pattern_cap = 8;    // hard refusal above this
    std::size_t host_cap = 14;      // default working range, overridable
    std::uint64_t max_nodes = 20'000'000;
};

enum class MinorSearchStatus { Found, NotFound, BudgetExhausted };

struct MinorSearchResult {
    MinorSearchStatus status = MinorSearchStatus::NotFound;
    MinorModel model;  // valid when status == Found
    std::uint64_t nodes_explored = 0;
};

// Plain backtracking over image assignments with connectivity pruning.
// Deterministic: fixed exploration order, so the witness is reproducible.
MinorSearchResult find_minor_model(const Graph& host, const Graph& pattern,
                                   const MinorSearchOptions& opts = {});

// ---------------------------------------------------------------------------
// shared graph utilities

bool is_connected(const Graph& g);
std::vector<std::set<Vertex>> connected_components(const Graph& g);
bool is_two_connected(const Graph& g);
bool is_three_connected(const Graph& g);
bool is_cycle_graph(const Graph& g);

// Weighted shortest paths from `source` (Dijkstra; weights must be >= 0).
// Unreachable vertices are absent from the returned map.
std::map<Vertex, Rat> shortest_path_lengths(const MetricGraph& mg, const Vertex& source);

// Shortest u--v path as a vertex sequence, or empty if unreachable.
std::vector<Vertex> shortest_path(const MetricGraph& mg, const Vertex& from, const Vertex& to);

// The unique Hamiltonian cycle of a 2-connected outerplanar graph, in cyclic
// order, or nullopt when the graph is not 2-connected outerplanar.
std::optional<std::vector<Vertex>> outer_cycle(const Graph& g);

// Backtracking isomorphism search; intended for the small named families.
std::optional<std::map<Vertex, Vertex>> find_isomorphism(const Graph& a, const Graph& b);

inline bool isomorphic(const Graph& a, const Graph& b) {
    return find_isomorphism(a, b).has_value();
}

}  // namespace linfdim
