#pragma once

// Signed arc weights, flat-set verification by negative-cycle detection,
// potential extraction, flattenability search, pairwise incompatibility,
// frames, and assembly/verification of max-norm embeddings from coverings.
//
// Conventions. For a metric graph (G,d), every edge is bidirected; an arc
// (v,w) in the chosen set F carries weight -d(vw), every other arc carries
// +d. F is flat iff this weighting admits no negative directed cycle, which
// happens iff a potential p exists with p(v) - p(w) = d(vw) on every arc of
// F and |p(x) - p(y)| <= d(xy) everywhere. All arithmetic here is exact.

#include "linfdim/graph.hpp"

#include <array>
#include <cstdint>

namespace linfdim {

using ArcSet = std::set<Arc>;
using Potential = std::map<Vertex, Rat>;
using FlatCovering = std::vector<ArcSet>;

// Throws input_error unless every arc of F lies over a host edge and no edge
// appears in both directions (except zero-length edges).
void validate_arcset(const MetricGraph& mg, const ArcSet& F);

ArcSet reversed_arcs(const ArcSet& F);

// All arcs leaving `center` (a flat set for every vertex of every metric graph).
ArcSet star_arcs(const Graph& g, const Vertex& center);

struct FlatCheck {
    bool flat = false;
    Potential potential;         // tight on every arc of F when flat
    std::vector<Arc> cycle;      // a negative directed cycle when not flat
    Rat cycle_weight;
};

FlatCheck is_flat(const MetricGraph& mg, const ArcSet& F);

// Shortest-path potential for a flat set; when F is not flat the returned
// check carries the negative cycle instead of a potential.
FlatCheck find_potential(const MetricGraph& mg, const ArcSet& F);

struct FlattenOptions {
    std::size_t cap = 20;  // refuse larger sets unless force is on
    bool force = false;
};

// Depth-first search over orientations of S with incremental negative-cycle
// pruning; the first edge's orientation is fixed (global reversal symmetry).
std::optional<ArcSet> is_flattenable(const MetricGraph& mg, const std::set<Edge>& S,
                                     const FlattenOptions& opts = {});

// Exact incompatibility: {e,f} admits no flat orientation. Adjacent edges are
// never incompatible.
bool incompatible_exact(const MetricGraph& mg, const Edge& e, const Edge& f);

// The shortest-path criterion: both cross-pairings of end-to-end paths sum
// strictly below d(e) + d(f). Implies incompatible_exact.
bool incompatible_sufficient(const MetricGraph& mg, const Edge& e, const Edge& f);

enum class IncompatMode { Exact, Sufficient };

// Vertices are the edges of mg (named via to_string(Edge)); adjacency is the
// chosen incompatibility test.
Graph incompatibility_graph(const MetricGraph& mg, IncompatMode mode);

// ---------------------------------------------------------------------------
// coverings and embeddings

struct CoveringError : input_error {
    CoveringError(const std::string& what, std::size_t offender, std::optional<Edge> missing)
        : input_error(what), offender_index(offender), uncovered(std::move(missing)) {}
    std::size_t offender_index;   // index of a non-flat member, or npos
    std::optional<Edge> uncovered;
};

// Every member flat and every edge covered; throws CoveringError otherwise.
void validate_covering(const MetricGraph& mg, const FlatCovering& cov);

struct LinfEmbedding {
    std::size_t dim = 0;
    std::map<Vertex, std::vector<Rat>> coords;
};

// Coordinate i is a potential of cov[i]; dimension = |cov|.
LinfEmbedding assemble_embedding(const MetricGraph& mg, const FlatCovering& cov);

struct LinfVerdict {
    bool valid = true;
    Edge violating;
    Rat expected, actual;
};

// Exact check that every edge's max-coordinate gap equals its distance.
LinfVerdict verify_linf(const MetricGraph& mg, const LinfEmbedding& emb);

// ---------------------------------------------------------------------------
// frames

// A frame holds a flattenable edge set (`tight`) together with a subset
// (`shrinkable`) whose equalities can be scaled by any factors in [0,1]
// while staying feasible.
struct Frame {
    std::set<Edge> shrinkable;
    std::set<Edge> tight;
};

// Merge two frames across a shared edge of a 2-sum. With e tight-not-
// shrinkable on both sides the union is a frame and keeps e; with e
// shrinkable on either side both sets drop e. Anything else is refused.
Frame merge_frames_2sum(const Frame& fr1, const Frame& fr2, const Edge& e);

// Three frames on a 2-connected outerplanar host such that every edge is in
// some tight set and every outer-cycle edge is in exactly two tight sets and
// exactly one shrinkable set. Inner faces are triangulated internally; the
// helper chords never appear in the returned frames.
std::array<Frame, 3> three_frames_outerplanar(const MetricGraph& mg);

struct OuterFramesVerdict {
    bool ok = true;
    std::string reason;
};

// Mechanical check of the covering property above plus flattenability of
// each tight set.
OuterFramesVerdict check_outer_frames(const MetricGraph& mg, const std::array<Frame, 3>& frames);

struct FrameSamplePlan {
    std::size_t corner_limit = 6;   // enumerate all 0/1 corners up to this size
    int random_samples = 32;
    int denominator = 64;           // random factors are rationalized on this grid
    std::uint64_t seed = 1;
};

struct FrameCheck {
    bool refuted = false;
    std::map<Edge, Rat> witness_lambda;  // an infeasible scaling when refuted
    int samples_passed = 0;
};

// Sound for refutation, sampled for acceptance: each sampled scaling of the
// shrinkable equalities is tested for a feasible potential over all sign
// patterns; one infeasible sample refutes the frame for good.
FrameCheck check_frame(const MetricGraph& mg, const Frame& frame,
                       const FrameSamplePlan& plan = {});

}  // namespace linfdim
