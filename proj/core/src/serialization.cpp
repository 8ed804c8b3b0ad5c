#include "linfdim/serialization.hpp"

#include <json.hpp>

#include <sstream>

namespace linfdim {

namespace {

using ordered_json = nlohmann::ordered_json;

Rat rat_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw input_error("distances must be integers or \"p/q\" strings");
}

ordered_json rat_to_json(const Rat& r) {
    if (denominator(r) == 1) {
        const Int& n = numerator(r);
        if (n >= Int(std::numeric_limits<std::int64_t>::min()) &&
            n <= Int(std::numeric_limits<std::int64_t>::max()))
            return ordered_json(n.convert_to<std::int64_t>());
    }
    return ordered_json(rat_to_string(r));
}

}  // namespace

GraphFile parse_graph_file(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw input_error("graph file needs 'vertices' and 'edges'");

    GraphFile gf;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_string()) throw input_error("vertex ids must be strings");
        gf.graph.add_vertex(v.get<std::string>());
    }
    bool any_d = false, all_d = true;
    for (const auto& e : j.at("edges")) {
        if (!e.is_object() || !e.contains("u") || !e.contains("v"))
            throw input_error("each edge needs 'u' and 'v'");
        Vertex u = e.at("u").get<std::string>();
        Vertex v = e.at("v").get<std::string>();
        gf.graph.add_edge(u, v);
        if (e.contains("d")) {
            any_d = true;
            Rat d = rat_from_json(e.at("d"));
            if (d < 0) throw input_error("negative distance on edge " + u + "--" + v);
            gf.distances[Edge(u, v)] = d;
        } else {
            all_d = false;
        }
    }
    if (any_d && !all_d) throw input_error("either all edges carry 'd' or none do");
    gf.has_distances = any_d && gf.graph.num_edges() > 0;
    if (j.contains("metadata") && j.at("metadata").is_object()) {
        const auto& md = j.at("metadata");
        if (md.contains("family")) gf.family_tag = md.at("family").get<std::string>();
        if (md.contains("k")) gf.family_k = md.at("k").get<int>();
    }
    return gf;
}

std::string emit_graph_file(const GraphFile& gf) {
    ordered_json j;
    j["vertices"] = ordered_json::array();
    for (const auto& v : gf.graph.vertices()) j["vertices"].push_back(v);
    j["edges"] = ordered_json::array();
    for (const auto& e : gf.graph.edges()) {
        ordered_json je;
        je["u"] = e.u;
        je["v"] = e.v;
        if (gf.has_distances) je["d"] = rat_to_json(gf.distances.at(e));
        j["edges"].push_back(std::move(je));
    }
    if (!gf.family_tag.empty()) {
        j["metadata"]["family"] = gf.family_tag;
        if (gf.family_k > 0) j["metadata"]["k"] = gf.family_k;
    }
    return j.dump(2) + "\n";
}

GraphFile from_graph(const Graph& g) {
    GraphFile gf;
    gf.graph = g;
    return gf;
}

GraphFile from_metric(const MetricGraph& mg) {
    GraphFile gf;
    gf.graph = mg.graph;
    gf.distances = mg.d;
    gf.has_distances = mg.graph.num_edges() > 0;
    return gf;
}

MetricGraph to_metric(const GraphFile& gf) {
    if (!gf.has_distances && gf.graph.num_edges() > 0)
        throw input_error("graph file carries no distances");
    MetricGraph mg;
    mg.graph = gf.graph;
    mg.d = gf.distances;
    return mg;
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string emit_dot(const Graph& g, const std::map<Edge, std::string>& colors,
                     const std::map<Edge, Rat>* labels) {
    std::ostringstream os;
    os << "graph {\n";
    for (const auto& v : g.vertices()) os << "  " << dot_quote(v) << ";\n";
    for (const auto& e : g.edges()) {
        os << "  " << dot_quote(e.u) << " -- " << dot_quote(e.v);
        std::vector<std::string> attrs;
        auto c = colors.find(e);
        if (c != colors.end()) attrs.push_back("color=" + c->second + ", penwidth=2");
        if (labels && labels->count(e))
            attrs.push_back("label=" + dot_quote(rat_to_string(labels->at(e))));
        if (!attrs.empty()) {
            os << " [";
            for (std::size_t i = 0; i < attrs.size(); ++i)
                os << (i ? ", " : "") << attrs[i];
            os << "]";
        }
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string emit_dot(const SpqrTree& t) {
    std::ostringstream os;
    os << "graph {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& node = t.nodes[i];
        std::ostringstream label;
        label << to_string(node.kind) << " #" << i << "\\n";
        for (const auto& me : node.minor.edges)
            label << me.u << "-" << me.v << (me.real ? "" : "*") << " ";
        os << "  n" << i << " [label=" << dot_quote(label.str()) << "];\n";
    }
    for (const auto& te : t.edges)
        os << "  n" << te.a << " -- n" << te.b << " [label=" << dot_quote(to_string(te.shared))
           << "];\n";
    os << "}\n";
    return os.str();
}

std::string input_digest(const std::string& bytes) { return fnv1a_hex(bytes); }

}  // namespace linfdim
