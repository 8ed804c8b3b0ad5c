#pragma once

// Graph file format (JSON), DOT emitters and input digests. The JSON schema:
//
//   {
//     "vertices": ["v", "w", ...],
//     "edges": [{"u": "v", "v": "w", "d": "7/2"}, ...],
//     "metadata": {"family": "S", "k": 2}          // optional
//   }
//
// Distances are optional but all-or-nothing; they serialize as bare integers
// or "p/q" strings, never as floats. Emission is canonical (sorted vertices
// and edges), so emitting is deterministic and parse(emit(x)) == x.

#include "linfdim/graph.hpp"
#include "linfdim/structure.hpp"

#include <string>

namespace linfdim {

struct GraphFile {
    Graph graph;
    std::map<Edge, Rat> distances;
    bool has_distances = false;
    std::string family_tag;  // optional metadata
    int family_k = 0;

    bool operator==(const GraphFile& other) const {
        return graph == other.graph && distances == other.distances &&
               has_distances == other.has_distances;
    }
};

GraphFile parse_graph_file(const std::string& text);
std::string emit_graph_file(const GraphFile& gf);

GraphFile from_graph(const Graph& g);
GraphFile from_metric(const MetricGraph& mg);
MetricGraph to_metric(const GraphFile& gf);

// DOT output; `colors` maps edges to DOT color names (certificate matchings
// and glued edges are drawn red by the CLI), `labels` optionally prints the
// distance on each edge.
std::string emit_dot(const Graph& g, const std::map<Edge, std::string>& colors = {},
                     const std::map<Edge, Rat>* labels = nullptr);
std::string emit_dot(const SpqrTree& t);

// FNV-1a digest of the canonical input bytes, used in run reports.
std::string input_digest(const std::string& bytes);

}  // namespace linfdim
