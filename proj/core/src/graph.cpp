#include "linfdim/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace linfdim {

Edge::Edge(Vertex a, Vertex b) {
    if (a == b) throw input_error("loop edge at '" + a + "'");
    if (b < a) std::swap(a, b);
    u = std::move(a);
    v = std::move(b);
}

std::string to_string(const Edge& e) { return e.u + "--" + e.v; }
std::string to_string(const Arc& a) { return a.from + ">" + a.to; }

Graph::Graph(std::vector<Vertex> vertices, std::vector<Edge> edges) {
    for (auto& v : vertices) add_vertex(v);
    for (auto& e : edges) add_edge(e.u, e.v);
}

void Graph::add_vertex(const Vertex& v) { verts_.insert(v); }

void Graph::add_edge(const Vertex& a, const Vertex& b) {
    Edge e(a, b);
    if (!has_vertex(e.u) || !has_vertex(e.v))
        throw input_error("edge " + to_string(e) + " references missing vertex");
    edges_.insert(e);
}

void Graph::remove_edge(const Edge& e) { edges_.erase(e); }

void Graph::remove_vertex(const Vertex& v) {
    verts_.erase(v);
    for (auto it = edges_.begin(); it != edges_.end();) {
        if (it->u == v || it->v == v)
            it = edges_.erase(it);
        else
            ++it;
    }
}

bool Graph::adjacent(const Vertex& a, const Vertex& b) const {
    if (a == b) return false;
    return edges_.count(Edge(a, b)) > 0;
}

std::vector<Vertex> Graph::neighbors(const Vertex& v) const {
    std::vector<Vertex> out;
    for (const auto& e : edges_) {
        if (e.u == v) out.push_back(e.v);
        else if (e.v == v) out.push_back(e.u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t Graph::degree(const Vertex& v) const {
    std::size_t d = 0;
    for (const auto& e : edges_)
        if (e.u == v || e.v == v) ++d;
    return d;
}

Graph Graph::induced(const std::set<Vertex>& keep) const {
    Graph g;
    for (const auto& v : keep)
        if (has_vertex(v)) g.add_vertex(v);
    for (const auto& e : edges_)
        if (keep.count(e.u) && keep.count(e.v)) g.add_edge(e.u, e.v);
    return g;
}

MultiEdge::MultiEdge(Vertex a, Vertex b, bool is_real) : real(is_real) {
    if (a == b) throw input_error("loop edge at '" + a + "'");
    if (b < a) std::swap(a, b);
    u = std::move(a);
    v = std::move(b);
}

void MultiGraph::add_edge(const Vertex& a, const Vertex& b, bool real) {
    MultiEdge e(a, b, real);
    vertices.insert(e.u);
    vertices.insert(e.v);
    edges.insert(std::upper_bound(edges.begin(), edges.end(), e), e);
}

std::size_t MultiGraph::degree(const Vertex& v) const {
    std::size_t d = 0;
    for (const auto& e : edges)
        if (e.u == v || e.v == v) ++d;
    return d;
}

bool MultiGraph::simple() const {
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v) return false;
    return true;
}

Graph MultiGraph::as_graph() const {
    Graph g;
    for (const auto& v : vertices) g.add_vertex(v);
    for (const auto& e : edges)
        if (!g.has_edge(Edge(e.u, e.v))) g.add_edge(e.u, e.v);
    return g;
}

const Rat& MetricGraph::dist(const Edge& e) const {
    auto it = d.find(e);
    if (it == d.end()) throw input_error("missing distance on edge " + to_string(e));
    return it->second;
}

void MetricGraph::set(const Vertex& a, const Vertex& b, Rat value) {
    if (value < 0) throw input_error("negative distance on edge " + a + "--" + b);
    d[Edge(a, b)] = std::move(value);
}

// ---------------------------------------------------------------------------
// shortest paths

namespace {

struct Indexed {
    std::vector<Vertex> names;
    std::map<Vertex, int> index;
    std::vector<std::vector<std::pair<int, Rat>>> adj;  // weighted
};

Indexed index_metric(const MetricGraph& mg) {
    Indexed ix;
    for (const auto& v : mg.graph.vertices()) {
        ix.index[v] = static_cast<int>(ix.names.size());
        ix.names.push_back(v);
    }
    ix.adj.resize(ix.names.size());
    for (const auto& e : mg.graph.edges()) {
        const Rat& w = mg.dist(e);
        int a = ix.index.at(e.u), b = ix.index.at(e.v);
        ix.adj[a].push_back({b, w});
        ix.adj[b].push_back({a, w});
    }
    return ix;
}

// Dijkstra with exact weights; returns (dist, parent) with parent(-1) roots.
void dijkstra(const Indexed& ix, int src, std::vector<std::optional<Rat>>& dist,
              std::vector<int>& parent) {
    int n = static_cast<int>(ix.names.size());
    dist.assign(n, std::nullopt);
    parent.assign(n, -1);
    using Item = std::pair<Rat, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[src] = Rat(0);
    pq.push({Rat(0), src});
    while (!pq.empty()) {
        auto [dv, v] = pq.top();
        pq.pop();
        if (!dist[v] || *dist[v] < dv) continue;
        for (const auto& [w, len] : ix.adj[v]) {
            Rat cand = dv + len;
            if (!dist[w] || cand < *dist[w]) {
                dist[w] = cand;
                parent[w] = v;
                pq.push({cand, w});
            }
        }
    }
}

}  // namespace

std::map<Vertex, Rat> shortest_path_lengths(const MetricGraph& mg, const Vertex& source) {
    if (!mg.graph.has_vertex(source)) throw input_error("unknown vertex '" + source + "'");
    Indexed ix = index_metric(mg);
    std::vector<std::optional<Rat>> dist;
    std::vector<int> parent;
    dijkstra(ix, ix.index.at(source), dist, parent);
    std::map<Vertex, Rat> out;
    for (std::size_t i = 0; i < ix.names.size(); ++i)
        if (dist[i]) out[ix.names[i]] = *dist[i];
    return out;
}

std::vector<Vertex> shortest_path(const MetricGraph& mg, const Vertex& from, const Vertex& to) {
    Indexed ix = index_metric(mg);
    std::vector<std::optional<Rat>> dist;
    std::vector<int> parent;
    dijkstra(ix, ix.index.at(from), dist, parent);
    int t = ix.index.at(to);
    if (!dist[t]) return {};
    std::vector<Vertex> path;
    for (int cur = t; cur != -1; cur = parent[cur]) path.push_back(ix.names[cur]);
    std::reverse(path.begin(), path.end());
    return path;
}

MetricVerdict validate_metric(const MetricGraph& mg) {
    for (const auto& e : mg.graph.edges()) {
        const Rat& w = mg.dist(e);  // throws on missing weight
        if (w < 0) throw input_error("negative distance on edge " + to_string(e));
    }
    Indexed ix = index_metric(mg);
    std::vector<std::optional<Rat>> dist;
    std::vector<int> parent;
    for (const auto& v : mg.graph.vertices()) {
        int src = ix.index.at(v);
        bool touches = false;
        for (const auto& e : mg.graph.edges())
            if (e.u == v) { touches = true; break; }
        if (!touches) continue;  // only sources that start an edge need a run
        dijkstra(ix, src, dist, parent);
        for (const auto& e : mg.graph.edges()) {
            if (e.u != v) continue;
            int t = ix.index.at(e.v);
            if (dist[t] && *dist[t] < mg.dist(e)) {
                MetricVerdict verdict;
                verdict.valid = false;
                verdict.violating = e;
                verdict.path_weight = *dist[t];
                for (int cur = t; cur != -1; cur = parent[cur])
                    verdict.shorter_path.push_back(ix.names[cur]);
                std::reverse(verdict.shorter_path.begin(), verdict.shorter_path.end());
                return verdict;
            }
        }
    }
    return MetricVerdict{};
}

// ---------------------------------------------------------------------------
// family generators

namespace {
std::string nm(const std::string& base, int i) { return base + std::to_string(i); }
std::string grid_name(int i, int j) { return "v" + std::to_string(i) + "," + std::to_string(j); }
}  // namespace

Family family_from_string(const std::string& name) {
    if (name == "S") return Family::S;
    if (name == "P") return Family::P;
    if (name == "F") return Family::F;
    if (name == "N") return Family::N;
    if (name == "wheel") return Family::Wheel;
    if (name == "ladder") return Family::Ladder;
    if (name == "fan") return Family::Fan;
    if (name == "complete") return Family::Complete;
    if (name == "square_grid") return Family::SquareGrid;
    if (name == "tri_grid") return Family::TriGrid;
    throw input_error("unknown family '" + name + "'");
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::S: return "S";
        case Family::P: return "P";
        case Family::F: return "F";
        case Family::N: return "N";
        case Family::Wheel: return "wheel";
        case Family::Ladder: return "ladder";
        case Family::Fan: return "fan";
        case Family::Complete: return "complete";
        case Family::SquareGrid: return "square_grid";
        case Family::TriGrid: return "tri_grid";
    }
    throw input_error("unknown family");
}

Graph gen_family(Family family, int k) {
    if (k < 1) throw input_error("family parameter must be >= 1");
    Graph g;
    switch (family) {
        case Family::S: {
            g.add_vertex("v");
            g.add_vertex("w");
            for (int i = 1; i <= k; ++i) {
                g.add_vertex(nm("v", i));
                g.add_vertex(nm("w", i));
            }
            if (k == 1) g.add_edge("v", "w");  // the shared edge is kept in the single copy
            for (int i = 1; i <= k; ++i) {
                g.add_edge("v", nm("v", i));
                g.add_edge("v", nm("w", i));
                g.add_edge("w", nm("v", i));
                g.add_edge("w", nm("w", i));
                g.add_edge(nm("v", i), nm("w", i));
            }
            return g;
        }
        case Family::P: {
            for (int i = 0; i <= k; ++i) {
                g.add_vertex(nm("v", i));
                g.add_vertex(nm("w", i));
            }
            g.add_edge("v0", "w0");
            g.add_edge(nm("v", k), nm("w", k));
            for (int i = 1; i <= k; ++i) {
                g.add_edge(nm("v", i - 1), nm("v", i));
                g.add_edge(nm("v", i - 1), nm("w", i));
                g.add_edge(nm("w", i - 1), nm("v", i));
                g.add_edge(nm("w", i - 1), nm("w", i));
            }
            return g;
        }
        case Family::F: {
            for (int i = 0; i <= 2 * k + 1; ++i) g.add_vertex(nm("v", i));
            g.add_edge("v0", "v1");
            g.add_edge("v0", nm("v", 2 * k + 1));
            for (int i = 1; i <= k; ++i) {
                g.add_edge("v0", nm("v", 2 * i));
                g.add_edge(nm("v", 2 * i - 1), nm("v", 2 * i));
                g.add_edge(nm("v", 2 * i - 1), nm("v", 2 * i + 1));
                g.add_edge(nm("v", 2 * i), nm("v", 2 * i + 1));
            }
            return g;
        }
        case Family::N: {
            for (int i = 0; i <= k; ++i) {
                g.add_vertex(nm("v", i));
                g.add_vertex(nm("w", i));
            }
            for (int i = 1; i <= k; ++i) {
                g.add_edge(nm("v", i - 1), nm("v", i));
                g.add_edge(nm("v", i), nm("w", i));
                g.add_edge(nm("v", i - 1), nm("w", i));
                g.add_edge(nm("w", i - 1), nm("w", i));
            }
            g.add_edge("v0", "w0");
            g.add_edge("w0", nm("v", k));
            return g;
        }
        case Family::Wheel: {
            if (k < 3) throw input_error("wheel needs k >= 3");
            g.add_vertex("v0");
            for (int i = 1; i <= k; ++i) g.add_vertex(nm("v", i));
            for (int i = 1; i <= k; ++i) {
                g.add_edge("v0", nm("v", i));
                g.add_edge(nm("v", i), nm("v", i % k + 1));
            }
            return g;
        }
        case Family::Ladder: {
            for (int i = 1; i <= k; ++i) {
                g.add_vertex(nm("v", i));
                g.add_vertex(nm("w", i));
                g.add_edge(nm("v", i), nm("w", i));
            }
            for (int i = 1; i < k; ++i) {
                g.add_edge(nm("v", i), nm("v", i + 1));
                g.add_edge(nm("w", i), nm("w", i + 1));
            }
            return g;
        }
        case Family::Fan: {
            g.add_vertex("v0");
            for (int i = 1; i <= k; ++i) g.add_vertex(nm("v", i));
            for (int i = 1; i <= k; ++i) g.add_edge("v0", nm("v", i));
            for (int i = 1; i < k; ++i) g.add_edge(nm("v", i), nm("v", i + 1));
            return g;
        }
        case Family::Complete: {
            if (k < 3) throw input_error("complete needs k >= 3");
            for (int i = 1; i <= k; ++i) g.add_vertex(nm("v", i));
            for (int i = 1; i <= k; ++i)
                for (int j = i + 1; j <= k; ++j) g.add_edge(nm("v", i), nm("v", j));
            return g;
        }
        case Family::SquareGrid: {
            for (int i = 1; i <= k; ++i)
                for (int j = 1; j <= k; ++j) g.add_vertex(grid_name(i, j));
            for (int i = 1; i <= k; ++i)
                for (int j = 1; j <= k; ++j) {
                    if (i < k) g.add_edge(grid_name(i, j), grid_name(i + 1, j));
                    if (j < k) g.add_edge(grid_name(i, j), grid_name(i, j + 1));
                }
            return g;
        }
        case Family::TriGrid: {
            for (int i = 1; i <= k; ++i)
                for (int j = i; j <= k; ++j) g.add_vertex(grid_name(i, j));
            for (int i = 1; i <= k; ++i)
                for (int j = i; j <= k; ++j) {
                    if (j < k) g.add_edge(grid_name(i, j), grid_name(i, j + 1));
                    if (i < j && i + 1 <= k) g.add_edge(grid_name(i, j), grid_name(i + 1, j));
                    if (j < k) g.add_edge(grid_name(i, j), grid_name(i + 1, j + 1));
                }
            return g;
        }
    }
    throw input_error("unknown family");
}

MetricGraph gen_family_certificate(Family family, int k) {
    if (k < 1) throw input_error("family parameter must be >= 1");
    MetricGraph mg;
    mg.graph = gen_family(family, k);
    switch (family) {
        case Family::S: {
            if (k == 1) mg.set("v", "w", 3);
            for (int i = 1; i <= k; ++i) {
                Rat side = (i == 1) ? Rat(4 * k) : Rat(2 * (k + i - 1));
                mg.set("v", nm("v", i), side);
                mg.set("w", nm("w", i), side);
                mg.set("w", nm("v", i), k + i - 1);
                mg.set("v", nm("w", i), k + i - 1);
                mg.set(nm("v", i), nm("w", i), 3 * (k + i - 1));
            }
            return mg;
        }
        case Family::P: {
            Int pow2k = Int(1) << k;
            mg.set("v0", "w0", Rat(pow2k));
            mg.set(nm("v", k), nm("w", k), Rat(pow2k));
            for (int i = 1; i <= k; ++i) {
                Rat rail, cross;
                if (i % 2 == 1) {
                    rail = Rat(pow2k + 1);
                    cross = 1;
                } else if (i % 4 == 2) {
                    rail = Rat(pow2k - 1);
                    cross = 1;
                } else {  // i % 4 == 0
                    Int jump = Int(1) << (1 + i / 2);
                    rail = Rat(pow2k - jump);
                    cross = Rat(jump);
                }
                mg.set(nm("v", i - 1), nm("v", i), rail);
                mg.set(nm("w", i - 1), nm("w", i), rail);
                mg.set(nm("v", i - 1), nm("w", i), cross);
                mg.set(nm("w", i - 1), nm("v", i), cross);
            }
            return mg;
        }
        case Family::F: {
            mg.set("v0", "v1", 1);
            mg.set("v0", nm("v", 2 * k + 1), k + 1);
            for (int i = 1; i <= k; ++i) {
                mg.set("v0", nm("v", 2 * i), 1);
                mg.set(nm("v", 2 * i - 1), nm("v", 2 * i + 1), 1);
                mg.set(nm("v", 2 * i), nm("v", 2 * i + 1), i);
                mg.set(nm("v", 2 * i), nm("v", 2 * i - 1), i + 1);
            }
            return mg;
        }
        case Family::N: {
            mg.set("w0", nm("v", k), 1);
            for (int i = 1; i <= k; ++i) {
                mg.set(nm("v", i - 1), nm("v", i), 1);
                mg.set(nm("w", i - 1), nm("w", i), 1);
                mg.set(nm("v", i - 1), nm("w", i), k);
            }
            for (int i = 0; i <= k; ++i) mg.set(nm("v", i), nm("w", i), k + 1);
            return mg;
        }
        default:
            throw input_error("family '" + family_to_string(family) +
                              "' has no certificate distance function");
    }
}

std::vector<Edge> certificate_matching(Family family, int k) {
    if (k < 1) throw input_error("family parameter must be >= 1");
    std::vector<Edge> m;
    switch (family) {
        case Family::S:
            m.emplace_back("v", nm("v", 1));
            m.emplace_back("w", nm("w", 1));
            for (int i = 2; i <= k; ++i) m.emplace_back(nm("v", i), nm("w", i));
            return m;
        case Family::P:
            for (int i = 1; i <= k; i += 2) {
                m.emplace_back(nm("v", i - 1), nm("v", i));
                m.emplace_back(nm("w", i - 1), nm("w", i));
            }
            if (k % 2 == 0) m.emplace_back(nm("v", k), nm("w", k));
            return m;
        case Family::F:
            m.emplace_back("v0", nm("v", 2 * k + 1));
            for (int i = 1; i <= k; ++i) m.emplace_back(nm("v", 2 * i), nm("v", 2 * i - 1));
            return m;
        case Family::N:
            for (int i = 0; i <= k; ++i) m.emplace_back(nm("v", i), nm("w", i));
            return m;
        default:
            throw input_error("family '" + family_to_string(family) +
                              "' has no certificate matching");
    }
}

// ---------------------------------------------------------------------------
// surgery

Graph graph_sum(const Graph& g1, const Graph& g2, SumKind kind,
                const Vertex& a, const Vertex& b) {
    std::set<Vertex> shared;
    for (const auto& v : g1.vertices())
        if (g2.has_vertex(v)) shared.insert(v);

    if (kind == SumKind::OneSum) {
        if (!g1.has_vertex(a) || !g2.has_vertex(a))
            throw input_error("one-sum vertex '" + a + "' missing from an operand");
        if (shared != std::set<Vertex>{a})
            throw input_error("one-sum operands must intersect exactly in the shared vertex");
    } else {
        Edge e(a, b);
        if (!g1.has_edge(e) || !g2.has_edge(e))
            throw input_error("two-sum edge " + to_string(e) + " missing from an operand");
        if (shared != std::set<Vertex>{e.u, e.v})
            throw input_error("two-sum operands must intersect exactly in the shared edge ends");
    }

    Graph g;
    for (const auto& v : g1.vertices()) g.add_vertex(v);
    for (const auto& v : g2.vertices()) g.add_vertex(v);
    for (const auto& e : g1.edges()) g.add_edge(e.u, e.v);
    for (const auto& e : g2.edges())
        if (!g.has_edge(e)) g.add_edge(e.u, e.v);
    if (kind == SumKind::TwoSumDelete) g.remove_edge(Edge(a, b));
    return g;
}

Graph suppress_degree2(const Graph& g, const Vertex& v) {
    if (!g.has_vertex(v)) throw input_error("unknown vertex '" + v + "'");
    if (g.degree(v) != 2) throw input_error("vertex '" + v + "' does not have degree 2");
    auto nb = g.neighbors(v);
    Graph out = g;
    out.remove_vertex(v);
    if (!out.adjacent(nb[0], nb[1])) out.add_edge(nb[0], nb[1]);
    return out;
}

Graph contract_edge(const Graph& g, const Edge& e, const Vertex& into) {
    if (!g.has_edge(e)) throw input_error("missing edge " + to_string(e));
    if (into != e.u && into != e.v) throw input_error("contraction target must be an end of the edge");
    Vertex gone = (into == e.u) ? e.v : e.u;
    Graph out;
    for (const auto& v : g.vertices())
        if (v != gone) out.add_vertex(v);
    for (const auto& ed : g.edges()) {
        Vertex x = (ed.u == gone) ? into : ed.u;
        Vertex y = (ed.v == gone) ? into : ed.v;
        if (x == y) continue;
        if (!out.has_edge(Edge(x, y))) out.add_edge(x, y);
    }
    return out;
}

// ---------------------------------------------------------------------------
// connectivity

std::vector<std::set<Vertex>> connected_components(const Graph& g) {
    std::set<Vertex> seen;
    std::vector<std::set<Vertex>> comps;
    for (const auto& start : g.vertices()) {
        if (seen.count(start)) continue;
        std::set<Vertex> comp;
        std::vector<Vertex> stack{start};
        seen.insert(start);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.insert(v);
            for (const auto& w : g.neighbors(v))
                if (!seen.count(w)) {
                    seen.insert(w);
                    stack.push_back(w);
                }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph& g) {
    if (g.num_vertices() <= 1) return true;
    return connected_components(g).size() == 1;
}

bool is_two_connected(const Graph& g) {
    if (g.num_vertices() < 3) return false;
    if (!is_connected(g)) return false;
    for (const auto& v : g.vertices()) {
        std::set<Vertex> rest = g.vertices();
        rest.erase(v);
        if (!is_connected(g.induced(rest))) return false;
    }
    return true;
}

bool is_three_connected(const Graph& g) {
    if (g.num_vertices() < 4) return false;
    if (!is_two_connected(g)) return false;
    std::vector<Vertex> vs(g.vertices().begin(), g.vertices().end());
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            std::set<Vertex> rest = g.vertices();
            rest.erase(vs[i]);
            rest.erase(vs[j]);
            if (!is_connected(g.induced(rest))) return false;
        }
    return true;
}

bool is_cycle_graph(const Graph& g) {
    if (g.num_vertices() < 3 || !is_connected(g)) return false;
    for (const auto& v : g.vertices())
        if (g.degree(v) != 2) return false;
    return true;
}

// ---------------------------------------------------------------------------
// minor models

bool verify_model(const MinorModel& m) {
    std::set<Vertex> used;
    for (const auto& pv : m.pattern.vertices()) {
        auto it = m.images.find(pv);
        if (it == m.images.end() || it->second.empty()) return false;
        for (const auto& hv : it->second) {
            if (!m.host.has_vertex(hv)) return false;
            if (!used.insert(hv).second) return false;  // overlap
        }
        if (!is_connected(m.host.induced(it->second))) return false;
    }
    for (const auto& [pv, img] : m.images)
        if (!m.pattern.has_vertex(pv)) return false;
    for (const auto& pe : m.pattern.edges()) {
        const auto& a = m.images.at(pe.u);
        const auto& b = m.images.at(pe.v);
        bool hit = false;
        for (const auto& x : a) {
            for (const auto& y : b)
                if (m.host.adjacent(x, y)) {
                    hit = true;
                    break;
                }
            if (hit) break;
        }
        if (!hit) return false;
    }
    return true;
}

namespace {

struct MinorSearcher {
    const std::vector<Vertex>& hosts;
    const std::vector<Vertex>& pats;
    std::vector<std::vector<char>> hadj;           // host adjacency
    std::vector<std::pair<int, int>> pedges;       // pattern edges (indices)
    std::vector<std::set<int>> images;             // per pattern vertex
    std::vector<char> taken;                       // host vertex used
    std::uint64_t nodes = 0;
    std::uint64_t budget;
    bool out_of_budget = false;

    bool edge_satisfied(int pe) const {
        for (int x : images[pedges[pe].first])
            for (int y : images[pedges[pe].second])
                if (hadj[x][y]) return true;
        return false;
    }

    bool solve() {
        if (++nodes > budget) {
            out_of_budget = true;
            return false;
        }
        // first pattern vertex without an image gets seeded
        for (std::size_t p = 0; p < images.size(); ++p) {
            if (!images[p].empty()) continue;
            for (std::size_t h = 0; h < hosts.size(); ++h) {
                if (taken[h]) continue;
                taken[h] = 1;
                images[p].insert(static_cast<int>(h));
                if (solve()) return true;
                images[p].erase(static_cast<int>(h));
                taken[h] = 0;
                if (out_of_budget) return false;
            }
            return false;
        }
        // all seeded: fix the first unrealized pattern edge by growing a side
        for (std::size_t pe = 0; pe < pedges.size(); ++pe) {
            if (edge_satisfied(static_cast<int>(pe))) continue;
            for (int side : {pedges[pe].first, pedges[pe].second}) {
                std::set<int> frontier;
                for (int x : images[side])
                    for (std::size_t h = 0; h < hosts.size(); ++h)
                        if (!taken[h] && hadj[x][h]) frontier.insert(static_cast<int>(h));
                for (int h : frontier) {
                    taken[h] = 1;
                    images[side].insert(h);
                    if (solve()) return true;
                    images[side].erase(h);
                    taken[h] = 0;
                    if (out_of_budget) return false;
                }
            }
            return false;
        }
        return true;  // every pattern edge realized
    }
};

}  // namespace

MinorSearchResult find_minor_model(const Graph& host, const Graph& pattern,
                                   const MinorSearchOptions& opts) {
    if (pattern.num_vertices() > opts.pattern_cap)
        throw input_error("pattern exceeds the configured cap of " +
                          std::to_string(opts.pattern_cap) + " vertices");

    MinorSearchResult res;
    if (pattern.num_vertices() > host.num_vertices()) return res;  // NotFound

    std::vector<Vertex> hosts(host.vertices().begin(), host.vertices().end());
    std::vector<Vertex> pats(pattern.vertices().begin(), pattern.vertices().end());
    std::map<Vertex, int> hix, pix;
    for (std::size_t i = 0; i < hosts.size(); ++i) hix[hosts[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < pats.size(); ++i) pix[pats[i]] = static_cast<int>(i);

    MinorSearcher s{hosts, pats};
    s.hadj.assign(hosts.size(), std::vector<char>(hosts.size(), 0));
    for (const auto& e : host.edges()) {
        s.hadj[hix[e.u]][hix[e.v]] = 1;
        s.hadj[hix[e.v]][hix[e.u]] = 1;
    }
    for (const auto& e : pattern.edges()) s.pedges.push_back({pix[e.u], pix[e.v]});
    s.images.resize(pats.size());
    s.taken.assign(hosts.size(), 0);
    s.budget = opts.max_nodes;

    bool found = s.solve();
    res.nodes_explored = s.nodes;
    if (found) {
        res.status = MinorSearchStatus::Found;
        res.model.host = host;
        res.model.pattern = pattern;
        for (std::size_t p = 0; p < pats.size(); ++p) {
            std::set<Vertex> img;
            for (int h : s.images[p]) img.insert(hosts[h]);
            res.model.images[pats[p]] = std::move(img);
        }
    } else {
        res.status = s.out_of_budget ? MinorSearchStatus::BudgetExhausted
                                     : MinorSearchStatus::NotFound;
    }
    return res;
}

// ---------------------------------------------------------------------------
// outer cycle (2-connected outerplanar recognition)

namespace {

bool extend_hamilton(const Graph& g, std::vector<Vertex>& order, std::set<Vertex>& used) {
    if (order.size() == g.num_vertices())
        return g.adjacent(order.back(), order.front());
    for (const auto& w : g.neighbors(order.back())) {
        if (used.count(w)) continue;
        used.insert(w);
        order.push_back(w);
        if (extend_hamilton(g, order, used)) return true;
        order.pop_back();
        used.erase(w);
    }
    return false;
}

}  // namespace

std::optional<std::vector<Vertex>> outer_cycle(const Graph& g) {
    std::size_t n = g.num_vertices();
    if (n < 3 || !is_two_connected(g)) return std::nullopt;
    if (g.num_edges() > 2 * n - 3) return std::nullopt;  // outerplanar edge bound
    std::vector<Vertex> order{*g.vertices().begin()};
    std::set<Vertex> used{order.front()};
    if (!extend_hamilton(g, order, used)) return std::nullopt;
    // chords must be pairwise non-crossing in this cyclic order
    std::map<Vertex, int> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> chords;
    for (const auto& e : g.edges()) {
        int a = pos[e.u], b = pos[e.v];
        if (a > b) std::swap(a, b);
        if (b - a == 1 || (a == 0 && b == static_cast<int>(n) - 1)) continue;
        chords.push_back({a, b});
    }
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j) {
            auto [a, b] = chords[i];
            auto [c, d] = chords[j];
            if (a == c || a == d || b == c || b == d) continue;  // shared ends never cross
            bool c_in = a < c && c < b;
            bool d_in = a < d && d < b;
            if (c_in != d_in) return std::nullopt;
        }
    return order;
}

// ---------------------------------------------------------------------------
// isomorphism

namespace {

bool iso_extend(const Graph& a, const Graph& b, const std::vector<Vertex>& avs,
                std::map<Vertex, Vertex>& map_ab, std::set<Vertex>& used_b) {
    if (map_ab.size() == avs.size()) return true;
    const Vertex& next = avs[map_ab.size()];
    for (const auto& cand : b.vertices()) {
        if (used_b.count(cand)) continue;
        if (b.degree(cand) != a.degree(next)) continue;
        bool ok = true;
        for (const auto& [av, bv] : map_ab)
            if (a.adjacent(next, av) != b.adjacent(cand, bv)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        map_ab[next] = cand;
        used_b.insert(cand);
        if (iso_extend(a, b, avs, map_ab, used_b)) return true;
        map_ab.erase(next);
        used_b.erase(cand);
    }
    return false;
}

}  // namespace

std::optional<std::map<Vertex, Vertex>> find_isomorphism(const Graph& a, const Graph& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges())
        return std::nullopt;
    std::multiset<std::size_t> da, db;
    for (const auto& v : a.vertices()) da.insert(a.degree(v));
    for (const auto& v : b.vertices()) db.insert(b.degree(v));
    if (da != db) return std::nullopt;
    std::vector<Vertex> avs(a.vertices().begin(), a.vertices().end());
    std::stable_sort(avs.begin(), avs.end(), [&](const Vertex& x, const Vertex& y) {
        return a.degree(x) > a.degree(y);
    });
    std::map<Vertex, Vertex> map_ab;
    std::set<Vertex> used_b;
    if (iso_extend(a, b, avs, map_ab, used_b)) return map_ab;
    return std::nullopt;
}

}  // namespace linfdim
