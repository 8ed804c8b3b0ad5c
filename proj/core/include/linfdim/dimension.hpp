#pragma once

// Exact computation of the max-norm dimension of a fixed metric graph at
// desk scale: branch-and-bound partition into flattenable classes, certified
// lower bounds from pairwise-incompatible edges, exact vertex cover upper
// bounds, wheel covers, the coloring gadget, and randomized probing of the
// supremum over distance functions.

#include "linfdim/flat_cover.hpp"

#include <cstdint>

namespace linfdim {

struct Budget {
    std::uint64_t max_nodes = 5'000'000;
    int max_classes = 0;  // 0 = unbounded
};

struct DimResult {
    int dimension = 0;
    FlatCovering covering;                 // |covering| == dimension
    std::vector<Edge> lower_bound_witness; // pairwise incompatible, size <= dimension
    std::uint64_t nodes_explored = 0;
};

enum class DimStatus { Solved, BudgetExhausted };

struct DimOutcome {
    DimStatus status = DimStatus::Solved;
    DimResult result;       // the answer when Solved; best known covering otherwise
    int lower_bound = 0;    // proven interval, meaningful when exhausted
    int upper_bound = 0;
};

// Minimal number of flattenable classes partitioning the edges (equivalently
// the least k admitting a size-k flat covering). Edges are assigned in
// decreasing-distance order with incompatibility and flattenability pruning;
// deterministic for a fixed input.
DimOutcome exact_dim(const MetricGraph& mg, const Budget& budget = {});

// Maximum clique in the incompatibility graph (exact up to 40 edges, greedy
// beyond) and its witness.
std::pair<int, std::vector<Edge>> lower_bound_incompat(const MetricGraph& mg, IncompatMode mode);

struct VertexCoverResult {
    std::size_t size = 0;
    std::set<Vertex> cover;
    bool exact = true;  // false when the greedy fallback was used
};

// Exact minimum vertex cover by branch and bound for up to 30 vertices;
// greedy 2-approximation beyond, flagged.
VertexCoverResult upper_bound_tau(const Graph& g);

// A flat covering of a wheel with at most 4 sets (delegates to exact_dim
// with the class count capped at 4).
FlatCovering wheel_cover(const MetricGraph& mg, const Budget& budget = {});

// Each vertex v becomes an adjacent pair v_1 v_2 at distance 2; each edge vw
// becomes a complete bipartite gadget with unit cross distances. The
// dimension of the result equals the chromatic number of the input.
MetricGraph coloring_gadget(const Graph& h);

// Exact chromatic number by exhaustive coloring (default cap 12 vertices).
int chromatic_oracle(const Graph& h, std::size_t cap = 12);

// Solves each 2-connected block separately and merges the per-block
// coverings coordinatewise; the dimension is the maximum over blocks.
DimOutcome dim_blocks(const MetricGraph& mg, const Budget& budget = {});

// Random positive integer weights replaced by their shortest-path closure;
// always a valid distance function.
MetricGraph random_distance_function(const Graph& g, std::uint64_t seed);

struct ProbeResult {
    int best_dimension = 0;
    MetricGraph best;
    int trials_run = 0;
    bool certificate_included = false;
};

// Lower-bound sampler for the supremum over distance functions: random valid
// distance functions, plus the family certificate when the graph is
// recognized as one of the certified families.
ProbeResult sup_dim_probe(const Graph& g, int trials, std::uint64_t seed,
                          const Budget& per_trial = {});

// Recognition of the certified families by isomorphism against the generators.
std::optional<std::pair<Family, int>> recognize_family(const Graph& g);

}  // namespace linfdim
