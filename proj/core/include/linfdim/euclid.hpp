#pragma once

// Triangular-grid constructions: the recursive Euclidean embedding and its
// induced distance function, the regular-simplex check on the first row, a
// numerical rigidity probe, and the periodic triangular-in-square minor
// model. Euclidean computations use doubles with explicit tolerances; exact
// dyadic coordinates are kept alongside for square-distance checks.

#include "linfdim/graph.hpp"

#include <cstdint>

namespace linfdim {

struct L2Embedding {
    std::size_t dim = 0;
    std::map<Vertex, std::vector<double>> coords;
};

struct TriGridEmbedding {
    Graph graph;                                   // the triangular grid
    L2Embedding embedding;                         // recursive midpoint embedding
    std::map<Vertex, std::vector<Rat>> coords_exact;  // the same coordinates, dyadic
    std::map<Edge, double> lengths;                // induced distances
    std::map<Edge, Rat> squared;                   // exact squared distances

    // Rounds every length up onto the grid 1/denominator; rounding up is
    // subadditive, so the result is still a distance function.
    MetricGraph rationalized(const Int& denominator) const;
};

TriGridEmbedding tri_grid_embedding(int r);

struct L2Verdict {
    bool valid = true;
    Edge worst;
    double error = 0.0;
};

// Every edge's Euclidean gap must match its distance within tol.
L2Verdict verify_l2(const Graph& g, const std::map<Edge, double>& d, const L2Embedding& emb,
                    double tol);
L2Verdict verify_l2(const MetricGraph& mg, const L2Embedding& emb, double tol);

struct SimplexReport {
    std::vector<Vertex> points;                    // first-row vertices
    std::vector<std::vector<double>> distances;    // pairwise, symmetric, zero diagonal
    double max_deviation = 0.0;                    // from sqrt(2)
};

SimplexReport simplex_check(int r);

struct StressProbe {
    double best_residual = 0.0;  // sqrt of the smallest stress over all attempts
    int attempts = 0;
    bool evidence_only = true;   // a probe, never a proof of infeasibility
};

// Randomized local minimization of the squared edge-length violations when
// embedding the triangular grid into a fixed dimension. A target dimension of
// r-1 or more also tries the exact projected embedding as a warm start.
StressProbe rigidity_probe(int r, int target_dim, int attempts, std::uint64_t seed);

// The periodic staircase model of the order-(k+2) triangular grid inside the
// order-(2k+2) square grid.
MinorModel tri_in_square_model(int k);

}  // namespace linfdim
