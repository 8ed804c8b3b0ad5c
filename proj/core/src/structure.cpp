#include "linfdim/structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace linfdim {

// ---------------------------------------------------------------------------
// blocks

namespace {

struct BlockDfs {
    const Graph& g;
    std::map<Vertex, int> disc, low;
    int timer = 0;
    std::vector<Edge> stack;
    BlockDecomposition out;

    void pop_block(const Edge& until) {
        Graph blk;
        while (true) {
            Edge e = stack.back();
            stack.pop_back();
            blk.add_vertex(e.u);
            blk.add_vertex(e.v);
            blk.add_edge(e.u, e.v);
            if (e == until) break;
        }
        out.blocks.push_back(std::move(blk));
    }

    void dfs(const Vertex& u, const Vertex& parent) {
        disc[u] = low[u] = ++timer;
        int children = 0;
        for (const auto& v : g.neighbors(u)) {
            if (!disc.count(v)) {
                ++children;
                Edge e(u, v);
                stack.push_back(e);
                dfs(v, u);
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= disc[u]) {
                    if (!parent.empty() || children > 1) out.cut_vertices.insert(u);
                    pop_block(e);
                }
            } else if (v != parent && disc[v] < disc[u]) {
                stack.push_back(Edge(u, v));
                low[u] = std::min(low[u], disc[v]);
            }
        }
        if (parent.empty() && children > 1) out.cut_vertices.insert(u);
    }
};

}  // namespace

BlockDecomposition blocks(const Graph& g) {
    BlockDfs b{g};
    for (const auto& v : g.vertices()) {
        if (b.disc.count(v)) continue;
        if (g.degree(v) == 0) {
            Graph single;
            single.add_vertex(v);
            b.out.blocks.push_back(std::move(single));
            b.disc[v] = ++b.timer;
            continue;
        }
        b.dfs(v, Vertex());
    }
    return b.out;
}

// ---------------------------------------------------------------------------
// SPQR trees

std::string to_string(SpqrKind kind) {
    switch (kind) {
        case SpqrKind::S: return "S";
        case SpqrKind::P: return "P";
        case SpqrKind::R: return "R";
        case SpqrKind::O: return "O";
    }
    return "?";
}

namespace {

// flips one real copy of edge e to virtual inside the minor
void make_virtual(MultiGraph& m, const Edge& e) {
    for (auto& me : m.edges)
        if (me.u == e.u && me.v == e.v && me.real) {
            me.real = false;
            std::sort(m.edges.begin(), m.edges.end());
            return;
        }
    throw std::logic_error("real edge " + to_string(e) + " missing from minor");
}

int spqr_build(const Graph& cur, SpqrTree& t) {
    auto whole = [&](SpqrKind kind) {
        MultiGraph m;
        for (const auto& v : cur.vertices()) m.add_vertex(v);
        for (const auto& e : cur.edges()) m.add_edge(e.u, e.v, true);
        t.nodes.push_back({kind, std::move(m)});
        return static_cast<int>(t.nodes.size()) - 1;
    };
    if (is_cycle_graph(cur)) return whole(SpqrKind::S);
    if (is_three_connected(cur)) return whole(SpqrKind::R);

    // lexicographically smallest 2-cutset whose ends both have degree >= 3
    std::vector<Vertex> vs(cur.vertices().begin(), cur.vertices().end());
    Vertex x, y;
    bool found = false;
    for (std::size_t i = 0; i < vs.size() && !found; ++i) {
        if (cur.degree(vs[i]) < 3) continue;
        for (std::size_t j = i + 1; j < vs.size() && !found; ++j) {
            if (cur.degree(vs[j]) < 3) continue;
            std::set<Vertex> rest = cur.vertices();
            rest.erase(vs[i]);
            rest.erase(vs[j]);
            if (!is_connected(cur.induced(rest))) {
                x = vs[i];
                y = vs[j];
                found = true;
            }
        }
    }
    if (!found) throw std::logic_error("no qualifying split pair in a non-cycle, non-3-connected graph");

    std::set<Vertex> rest = cur.vertices();
    rest.erase(x);
    rest.erase(y);
    auto comps = connected_components(cur.induced(rest));

    MultiGraph pm;
    pm.add_vertex(x);
    pm.add_vertex(y);
    bool real_xy = cur.has_edge(Edge(x, y));
    if (real_xy) pm.add_edge(x, y, true);
    for (std::size_t i = 0; i < comps.size(); ++i) pm.add_edge(x, y, false);
    t.nodes.push_back({SpqrKind::P, std::move(pm)});
    int pidx = static_cast<int>(t.nodes.size()) - 1;

    for (const auto& comp : comps) {
        std::set<Vertex> keep = comp;
        keep.insert(x);
        keep.insert(y);
        Graph child = cur.induced(keep);
        if (!child.has_edge(Edge(x, y))) child.add_edge(x, y);
        std::size_t before = t.nodes.size();
        spqr_build(child, t);
        int attach = -1;
        for (std::size_t ni = before; ni < t.nodes.size(); ++ni)
            for (const auto& me : t.nodes[ni].minor.edges)
                if (me.real && Edge(me.u, me.v) == Edge(x, y)) attach = static_cast<int>(ni);
        if (attach < 0) throw std::logic_error("child tree lost its split edge");
        make_virtual(t.nodes[attach].minor, Edge(x, y));
        t.edges.push_back({pidx, attach, Edge(x, y)});
    }
    return pidx;
}

// 2-sum across a tree edge: one virtual copy of the shared edge disappears
// from each side, everything else is kept
MultiGraph spqr_two_sum(const MultiGraph& a, const MultiGraph& b, const Edge& shared) {
    auto drop_one_virtual = [&](std::vector<MultiEdge> edges) {
        for (auto it = edges.begin(); it != edges.end(); ++it)
            if (it->u == shared.u && it->v == shared.v && !it->real) {
                edges.erase(it);
                return edges;
            }
        throw input_error("virtual edge " + to_string(shared) + " missing during 2-sum");
    };
    MultiGraph out;
    out.vertices = a.vertices;
    out.vertices.insert(b.vertices.begin(), b.vertices.end());
    auto ea = drop_one_virtual(a.edges);
    auto eb = drop_one_virtual(b.edges);
    out.edges = std::move(ea);
    out.edges.insert(out.edges.end(), eb.begin(), eb.end());
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

}  // namespace

SpqrTree spqr(const Graph& g) {
    if (!is_two_connected(g))
        throw input_error("SPQR decomposition needs a 2-connected graph on >= 3 vertices");
    SpqrTree t;
    spqr_build(g, t);
    return t;
}

SpqrTree contract_spqr(const SpqrTree& t) {
    int n = static_cast<int>(t.nodes.size());
    std::vector<int> rep(n);
    std::iota(rep.begin(), rep.end(), 0);
    std::function<int(int)> find = [&](int v) { return rep[v] == v ? v : rep[v] = find(rep[v]); };
    auto contractible = [&](int v) {
        return t.nodes[v].kind == SpqrKind::S || t.nodes[v].kind == SpqrKind::P;
    };
    for (const auto& te : t.edges)
        if (contractible(te.a) && contractible(te.b)) rep[find(te.a)] = find(te.b);

    // compose each group's minor along its internal tree edges
    std::map<int, MultiGraph> minors;
    for (int i = 0; i < n; ++i)
        if (find(i) == i) minors[i] = t.nodes[i].minor;
    std::vector<char> merged_into(n, 0);
    std::map<int, MultiGraph> partial;
    for (int i = 0; i < n; ++i) partial[i] = t.nodes[i].minor;
    std::vector<int> where(n);
    std::iota(where.begin(), where.end(), 0);
    std::function<int(int)> group_at = [&](int v) {
        return where[v] == v ? v : where[v] = group_at(where[v]);
    };
    for (const auto& te : t.edges) {
        if (!(contractible(te.a) && contractible(te.b))) continue;
        int ra = group_at(te.a), rb = group_at(te.b);
        if (ra == rb) throw std::logic_error("cycle in SPQR tree");
        MultiGraph m = spqr_two_sum(partial[ra], partial[rb], te.shared);
        where[rb] = ra;
        partial[ra] = std::move(m);
        partial.erase(rb);
    }

    SpqrTree out;
    std::map<int, int> new_index;
    for (int i = 0; i < n; ++i) {
        if (group_at(i) != i) continue;
        SpqrKind kind = contractible(i) ? SpqrKind::O : t.nodes[i].kind;
        new_index[i] = static_cast<int>(out.nodes.size());
        out.nodes.push_back({kind, partial[i]});
    }
    for (const auto& te : t.edges) {
        int ra = group_at(te.a), rb = group_at(te.b);
        if (ra == rb) continue;
        out.edges.push_back({new_index[ra], new_index[rb], te.shared});
    }
    return out;
}

Graph spqr_recompose(const SpqrTree& t) {
    if (t.nodes.empty()) throw input_error("empty SPQR tree");
    int n = static_cast<int>(t.nodes.size());
    std::vector<int> where(n);
    std::iota(where.begin(), where.end(), 0);
    std::function<int(int)> find = [&](int v) { return where[v] == v ? v : where[v] = find(where[v]); };
    std::map<int, MultiGraph> partial;
    for (int i = 0; i < n; ++i) partial[i] = t.nodes[i].minor;
    for (const auto& te : t.edges) {
        int ra = find(te.a), rb = find(te.b);
        if (ra == rb) throw input_error("SPQR tree edges contain a cycle");
        MultiGraph m = spqr_two_sum(partial[ra], partial[rb], te.shared);
        where[rb] = ra;
        partial[ra] = std::move(m);
        partial.erase(rb);
    }
    if (partial.size() != 1) throw input_error("SPQR tree is disconnected");
    const MultiGraph& whole = partial.begin()->second;
    for (const auto& me : whole.edges)
        if (!me.real) throw input_error("unmatched virtual edge " + me.u + "--" + me.v);
    if (!whole.simple()) throw input_error("recomposition produced parallel edges");
    return whole.as_graph();
}

int spqr_tree_diameter(const SpqrTree& t) {
    int n = static_cast<int>(t.nodes.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& te : t.edges) {
        adj[te.a].push_back(te.b);
        adj[te.b].push_back(te.a);
    }
    auto bfs = [&](int src) {
        std::vector<int> dist(n, -1);
        dist[src] = 0;
        std::vector<int> queue{src};
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (int w : adj[queue[qi]])
                if (dist[w] < 0) {
                    dist[w] = dist[queue[qi]] + 1;
                    queue.push_back(w);
                }
        return dist;
    };
    int best = 0;
    for (int v = 0; v < n; ++v)
        for (int d : bfs(v)) best = std::max(best, d);
    return best;
}

bool spqr_diameter_check(const SpqrTree& contracted, int k) {
    return spqr_tree_diameter(contracted) >= 6 * k;
}

bool treewidth_at_most_2(const MultiGraph& g) {
    std::set<Vertex> verts = g.vertices;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : g.edges) edges.push_back({e.u, e.v});

    bool changed = true;
    while (changed) {
        changed = false;
        // parallel rule
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 1; i < edges.size();) {
            if (edges[i] == edges[i - 1]) {
                edges.erase(edges.begin() + i);
                changed = true;
            } else {
                ++i;
            }
        }
        // series rule
        for (const auto& v : verts) {
            std::vector<std::size_t> touching;
            for (std::size_t i = 0; i < edges.size(); ++i)
                if (edges[i].first == v || edges[i].second == v) touching.push_back(i);
            if (touching.size() != 2) continue;
            Vertex a = edges[touching[0]].first == v ? edges[touching[0]].second
                                                     : edges[touching[0]].first;
            Vertex b = edges[touching[1]].first == v ? edges[touching[1]].second
                                                     : edges[touching[1]].first;
            if (a == b) continue;  // parallel rule will collapse first
            edges.erase(edges.begin() + touching[1]);
            edges.erase(edges.begin() + touching[0]);
            edges.push_back({std::min(a, b), std::max(a, b)});
            verts.erase(v);
            changed = true;
            break;
        }
    }
    return verts.size() == 2 && edges.size() == 1;
}

bool multigraph_two_connected(const MultiGraph& g) {
    Graph simple = g.as_graph();
    if (g.vertices.size() < 2) return false;
    if (g.vertices.size() == 2) return g.edges.size() >= 2;  // a bond
    return is_two_connected(simple);
}

// ---------------------------------------------------------------------------
// fan reduction

namespace {

struct FanCandidate {
    Vertex center;
    std::vector<Vertex> path;
};

std::vector<Vertex> canonical_direction(std::vector<Vertex> p) {
    std::vector<Vertex> r(p.rbegin(), p.rend());
    return p <= r ? p : r;
}

std::optional<FanCandidate> first_reducible_fan(const Graph& g) {
    for (const auto& c : g.vertices()) {
        std::vector<Vertex> nbrs = g.neighbors(c);
        std::set<Vertex> nbr_set(nbrs.begin(), nbrs.end());
        // inner-eligible vertices: degree exactly 3, both other neighbors on the rim
        std::set<Vertex> inner;
        for (const auto& u : nbrs) {
            if (g.degree(u) != 3) continue;
            bool ok = true;
            for (const auto& w : g.neighbors(u))
                if (w != c && !nbr_set.count(w)) ok = false;
            if (ok) inner.insert(u);
        }
        if (inner.empty()) continue;

        std::vector<std::vector<Vertex>> candidates;
        std::set<Vertex> seen;
        for (const auto& start : inner) {
            if (seen.count(start)) continue;
            // walk the chain component containing `start`
            std::set<Vertex> comp{start};
            std::vector<Vertex> frontier{start};
            while (!frontier.empty()) {
                Vertex v = frontier.back();
                frontier.pop_back();
                for (const auto& w : g.neighbors(v))
                    if (inner.count(w) && !comp.count(w)) {
                        comp.insert(w);
                        frontier.push_back(w);
                    }
            }
            seen.insert(comp.begin(), comp.end());

            std::vector<Vertex> ends;
            for (const auto& v : comp) {
                int deg_in = 0;
                for (const auto& w : g.neighbors(v))
                    if (comp.count(w)) ++deg_in;
                if (deg_in < 2) ends.push_back(v);
            }

            if (ends.empty()) {
                // closed rim: walk the whole cycle as a path
                if (comp.size() < 5) continue;
                Vertex s = *comp.begin();
                std::vector<Vertex> cyc{s};
                Vertex prev = s;
                std::vector<Vertex> first_nbrs;
                for (const auto& w : g.neighbors(s))
                    if (comp.count(w)) first_nbrs.push_back(w);
                Vertex cur2 = std::min(first_nbrs[0], first_nbrs[1]);
                while (cur2 != s) {
                    cyc.push_back(cur2);
                    for (const auto& w : g.neighbors(cur2))
                        if (comp.count(w) && w != prev) {
                            prev = cur2;
                            cur2 = w;
                            break;
                        }
                }
                candidates.push_back(canonical_direction(cyc));
                continue;
            }

            // open chain: order it from one end
            std::sort(ends.begin(), ends.end());
            std::vector<Vertex> chain{ends.front()};
            Vertex prev = Vertex();
            while (chain.size() < comp.size()) {
                bool advanced = false;
                for (const auto& w : g.neighbors(chain.back()))
                    if (comp.count(w) && w != prev && !std::count(chain.begin(), chain.end(), w)) {
                        prev = chain.back();
                        chain.push_back(w);
                        advanced = true;
                        break;
                    }
                if (!advanced) break;
            }
            // extend both ends by the rim neighbor outside the chain
            auto outer_end = [&](const Vertex& u, const Vertex& chain_nb) -> std::optional<Vertex> {
                for (const auto& w : g.neighbors(u))
                    if (w != c && w != chain_nb) return w;
                return std::nullopt;
            };
            std::optional<Vertex> a, b;
            if (chain.size() == 1) {
                std::vector<Vertex> others;
                for (const auto& w : g.neighbors(chain.front()))
                    if (w != c) others.push_back(w);
                a = others[0];
                b = others[1];
            } else {
                a = outer_end(chain.front(), chain[1]);
                b = outer_end(chain.back(), chain[chain.size() - 2]);
            }
            if (!a || !b) continue;
            std::vector<Vertex> path;
            if (*a == *b) {
                path.push_back(*a);
                path.insert(path.end(), chain.begin(), chain.end());
            } else {
                path.push_back(*a);
                path.insert(path.end(), chain.begin(), chain.end());
                path.push_back(*b);
            }
            if (path.size() < 5) continue;
            candidates.push_back(canonical_direction(path));
        }
        if (candidates.empty()) continue;
        std::sort(candidates.begin(), candidates.end());
        return FanCandidate{c, candidates.front()};
    }
    return std::nullopt;
}

}  // namespace

FanReductionResult fan_reduction(const Graph& g) {
    FanReductionResult out;
    out.graph = g;
    while (auto fan = first_reducible_fan(out.graph)) {
        const auto& path = fan->path;
        std::set<Vertex> middle(path.begin() + 2, path.end() - 2);
        Vertex target = *middle.begin();
        Graph next;
        auto mapped = [&](const Vertex& v) { return middle.count(v) ? target : v; };
        for (const auto& v : out.graph.vertices()) next.add_vertex(mapped(v));
        for (const auto& e : out.graph.edges()) {
            Vertex a = mapped(e.u), b = mapped(e.v);
            if (a == b) continue;
            if (!next.has_edge(Edge(a, b))) next.add_edge(a, b);
        }
        // the merged vertex replaces the contracted path; unused names vanish
        for (const auto& v : middle)
            if (v != target) next.remove_vertex(v);
        out.log.push_back({fan->center, path, target});
        out.graph = std::move(next);
    }
    return out;
}

Graph h_reduction(const Graph& g, int h) {
    if (h < 3) throw input_error("twin-class reduction needs h >= 3");
    if (!is_three_connected(g)) throw input_error("twin-class reduction needs a 3-connected graph");
    std::map<std::vector<Vertex>, std::vector<Vertex>> classes;
    for (const auto& v : g.vertices()) classes[g.neighbors(v)].push_back(v);
    Graph out = g;
    for (auto& [nbhd, members] : classes) {
        if (static_cast<int>(nbhd.size()) > h) continue;
        if (static_cast<int>(members.size()) < h + 1) continue;
        std::sort(members.begin(), members.end());
        for (std::size_t i = h + 1; i < members.size(); ++i) out.remove_vertex(members[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// glued edges and parallel minors

void validate_glued(const GluedGraph& gg) {
    for (const auto& e : gg.glued)
        if (!gg.base.has_edge(e)) throw input_error("glued edge " + to_string(e) + " not in base");
    for (const auto& [e, att] : gg.attachments) {
        if (!gg.glued.count(e))
            throw input_error("attachment on non-glued edge " + to_string(e));
        std::set<Vertex> shared;
        for (const auto& v : att.vertices())
            if (gg.base.has_vertex(v)) shared.insert(v);
        if (shared != std::set<Vertex>{e.u, e.v})
            throw input_error("attachment at " + to_string(e) +
                              " must share exactly the edge ends with the base");
    }
}

GlumpkinResult glumpkin_search(const GluedGraph& gg, int k, std::optional<Edge> root) {
    validate_glued(gg);
    if (k < 1) throw input_error("glumpkin order must be >= 1");
    if (root && !gg.glued.count(*root))
        throw input_error("root " + to_string(*root) + " is not a glued edge");
    std::size_t n = gg.base.num_vertices();
    if (n > 14) throw input_error("glumpkin search is capped at 14 base vertices");

    std::vector<Vertex> names(gg.base.vertices().begin(), gg.base.vertices().end());
    std::map<Vertex, int> ix;
    for (std::size_t i = 0; i < names.size(); ++i) ix[names[i]] = static_cast<int>(i);
    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& e : gg.base.edges()) {
        adj[ix[e.u]] |= 1u << ix[e.v];
        adj[ix[e.v]] |= 1u << ix[e.u];
    }
    auto connected_mask = [&](std::uint32_t mask) {
        if (!mask) return false;
        std::uint32_t seen = mask & (~mask + 1);  // lowest bit
        while (true) {
            std::uint32_t grow = seen;
            for (std::uint32_t rest = seen; rest;) {
                int v = __builtin_ctz(rest);
                rest &= rest - 1;
                grow |= adj[v] & mask;
            }
            if (grow == seen) break;
            seen = grow;
        }
        return seen == mask;
    };

    GlumpkinResult res;
    std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t xmask = 1; xmask < full; ++xmask) {
        if (!connected_mask(xmask)) continue;
        std::uint32_t rest = full & ~xmask;
        // components of the complement; the whole component is the other side
        std::uint32_t left = rest;
        while (left) {
            std::uint32_t comp = left & (~left + 1);
            while (true) {
                std::uint32_t grow = comp;
                for (std::uint32_t r2 = comp; r2;) {
                    int v = __builtin_ctz(r2);
                    r2 &= r2 - 1;
                    grow |= adj[v] & rest;
                }
                if (grow == comp) break;
                comp = grow;
            }
            left &= ~comp;
            std::vector<Edge> crossing;
            for (const auto& e : gg.glued) {
                bool ux = xmask >> ix[e.u] & 1, vx = xmask >> ix[e.v] & 1;
                bool uc = comp >> ix[e.u] & 1, vc = comp >> ix[e.v] & 1;
                if ((ux && vc) || (vx && uc)) crossing.push_back(e);
            }
            if (static_cast<int>(crossing.size()) < k) continue;
            if (root && !std::count(crossing.begin(), crossing.end(), *root)) continue;
            res.found = true;
            res.model.host = gg.base;
            res.model.pattern = Graph({"a", "b"}, {Edge("a", "b")});
            std::set<Vertex> xs, ys;
            for (std::size_t i = 0; i < n; ++i) {
                if (xmask >> i & 1) xs.insert(names[i]);
                if (comp >> i & 1) ys.insert(names[i]);
            }
            res.model.images["a"] = std::move(xs);
            res.model.images["b"] = std::move(ys);
            if (root) {
                res.parallel_edges.push_back(*root);
                for (const auto& e : crossing) {
                    if (static_cast<int>(res.parallel_edges.size()) == k) break;
                    if (e != *root) res.parallel_edges.push_back(e);
                }
            } else {
                res.parallel_edges.assign(crossing.begin(), crossing.begin() + k);
            }
            return res;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// bound functions

std::string Magnitude::str() const {
    char buf[64];
    if (tower == 0) {
        std::snprintf(buf, sizeof buf, "%.6g", value);
        return buf;
    }
    std::string s;
    for (int i = 0; i < tower; ++i) s += "10^";
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return s + buf;
}

namespace {

Magnitude mag_norm(Magnitude m) {
    while (m.tower == 0 && m.value >= 1e15) {
        m.value = std::log10(m.value);
        ++m.tower;
    }
    return m;
}

Magnitude mag_log10(const Magnitude& m) {
    if (m.tower == 0) return {0, std::log10(std::max(m.value, 1e-300))};
    return {m.tower - 1, m.value};
}

Magnitude mag_exp10(const Magnitude& m) {
    if (m.tower == 0 && m.value < 300) return mag_norm({0, std::pow(10.0, m.value)});
    return {m.tower + 1, m.value};
}

int mag_compare(Magnitude a, Magnitude b) {
    while (a.tower > 0 || b.tower > 0) {
        a = mag_log10(a);
        b = mag_log10(b);
    }
    if (a.value < b.value) return -1;
    if (a.value > b.value) return 1;
    return 0;
}

Magnitude mag_add(const Magnitude& a, const Magnitude& b) {
    if (a.tower == 0 && b.tower == 0) return mag_norm({0, a.value + b.value});
    const Magnitude& hi = mag_compare(a, b) >= 0 ? a : b;
    const Magnitude& lo = mag_compare(a, b) >= 0 ? b : a;
    if (hi.tower == 1 && lo.tower <= 1) {
        double lo_log = lo.tower == 1 ? lo.value : std::log10(std::max(lo.value, 1e-300));
        double diff = lo_log - hi.value;
        if (diff > -15) return {1, hi.value + std::log10(1.0 + std::pow(10.0, diff))};
    }
    return hi;  // lower-order term is absorbed
}

Magnitude mag_mul(const Magnitude& a, const Magnitude& b) {
    if (a.tower == 0 && b.tower == 0 && a.value < 1e150 && b.value < 1e150)
        return mag_norm({0, a.value * b.value});
    return mag_exp10(mag_add(mag_log10(a), mag_log10(b)));
}

Magnitude mag_pow(const Magnitude& base, const Magnitude& exp) {
    return mag_exp10(mag_mul(exp, mag_log10(base)));
}

// exact value + magnitude estimate; the exact part is dropped once the
// decimal expansion would blow the digit guard
struct Num {
    std::optional<Int> exact;
    Magnitude mag;
};

constexpr double kDigitGuard = 20000.0;

Magnitude mag_of_int(const Int& x) {
    if (x <= 0) return {0, 0.0};
    double d = x.convert_to<double>();
    if (std::isfinite(d)) return mag_norm({0, d});
    double bits = static_cast<double>(boost::multiprecision::msb(x));
    return {1, bits * 0.30102999566398119521};
}

Num num_of(const Int& x) { return {x, mag_of_int(x)}; }

bool mag_fits_guard(const Magnitude& m) {
    return mag_compare(m, Magnitude{1, kDigitGuard}) <= 0;
}

Num num_add(const Num& a, const Num& b) {
    Num out;
    out.mag = mag_add(a.mag, b.mag);
    if (a.exact && b.exact && mag_fits_guard(out.mag)) out.exact = *a.exact + *b.exact;
    return out;
}

Num num_mul(const Num& a, const Num& b) {
    Num out;
    out.mag = mag_mul(a.mag, b.mag);
    if (a.exact && b.exact && mag_fits_guard(out.mag)) out.exact = *a.exact * *b.exact;
    return out;
}

Num num_pow(const Num& base, const Num& exp) {
    Num out;
    out.mag = mag_pow(base.mag, exp.mag);
    if (base.exact && exp.exact && *exp.exact >= 0 && *exp.exact < Int(1'000'000) &&
        mag_fits_guard(out.mag))
        out.exact = boost::multiprecision::pow(*base.exact, exp.exact->convert_to<unsigned>());
    return out;
}

Num num_max(const Num& a, const Num& b) {
    if (a.exact && b.exact) return *a.exact >= *b.exact ? a : b;
    return mag_compare(a.mag, b.mag) >= 0 ? a : b;
}

// 3 * (8 m^3)^m  -- the path bound used both at fixed arguments and deep in
// the composition chain
Num path_bound(const Num& m) {
    Num m3 = num_mul(num_mul(m, m), m);
    return num_mul(num_of(3), num_pow(num_mul(num_of(8), m3), m));
}

// 8x^4 + 4x^3 + 10x
Num subdivided_fan_at(const Num& x) {
    Num x2 = num_mul(x, x);
    Num x3 = num_mul(x2, x);
    Num x4 = num_mul(x3, x);
    return num_add(num_add(num_mul(num_of(8), x4), num_mul(num_of(4), x3)),
                   num_mul(num_of(10), x));
}

// 20x^5 + 14x^4 + 2x^3 + 5x
Num plain_fan_at(const Num& x) {
    Num x2 = num_mul(x, x);
    Num x3 = num_mul(x2, x);
    Num x4 = num_mul(x3, x);
    Num x5 = num_mul(x4, x);
    return num_add(num_add(num_mul(num_of(20), x5), num_mul(num_of(14), x4)),
                   num_add(num_mul(num_of(2), x3), num_mul(num_of(5), x)));
}

Num twin_reduced_cap(const Num& k, const Num& p) {
    Num two_pow = num_pow(num_of(2), p);
    Num inner = num_add(num_mul(num_add(p, num_of(1)), two_pow),
                        num_mul(k, num_mul(num_mul(p, p), p)));
    return num_pow(inner, num_add(p, num_of(1)));
}

}  // namespace

const BoundEntry& BoundTable::at(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw input_error("no bound entry named '" + name + "'");
}

BoundTable bound_functions(int k, std::optional<int> p, std::optional<int> q,
                           std::optional<Int> M) {
    if (k < 1 || (p && *p < 1) || (q && *q < 1) || (M && *M < 1))
        throw input_error("bound function arguments must be positive");

    BoundTable table;
    std::string kk = "k=" + std::to_string(k);
    auto put = [&](std::string name, std::string args, const Num& v) {
        table.entries.push_back({std::move(name), std::move(args), v.exact, v.mag});
    };

    Int ik(k);
    Num ladder = num_of(12 * ik * ik + 7 * ik);
    Num subdivided = subdivided_fan_at(num_of(ik));
    Num plain = plain_fan_at(num_of(ik));
    Num big_fan = num_add(num_mul(plain, num_add(subdivided, num_of(1))), subdivided);
    Num fan_to_sub = num_pow(num_of(ik), num_of(ik * ik + 2));
    Num degree_bound = path_bound(num_of(ik));

    put("ladder_threshold", kk, ladder);
    put("separating_pair_path_threshold", kk, degree_bound);
    put("subdivided_fan_threshold", kk, subdivided);
    put("plain_fan_threshold", kk, plain);
    put("fan_subdivision_threshold", kk, big_fan);
    put("fan_minor_to_subdivision_threshold", kk, fan_to_sub);
    if (q) {
        Num m3 = num_mul(num_mul(num_of(ik), num_of(ik)), num_of(ik));
        Num fp = num_mul(num_of(3), num_pow(num_mul(num_of(8), m3), num_of(Int(*q))));
        put("rooted_fan_threshold", kk + ",q=" + std::to_string(*q), fp);
    }
    if (p)
        put("twin_reduced_order_cap", kk + ",p=" + std::to_string(*p),
            twin_reduced_cap(num_of(ik), num_of(Int(*p))));

    // composition chain: ladder -> fan subdivision -> fan minor -> path cap
    Num sub_l = subdivided_fan_at(ladder);
    Num x2 = num_add(num_mul(plain_fan_at(ladder), num_add(sub_l, num_of(1))), sub_l);
    Num x3 = num_pow(x2, num_add(num_mul(x2, x2), num_of(2)));
    Num longest_path_cap = path_bound(x3);
    Num vc_cap = twin_reduced_cap(num_of(ik), longest_path_cap);
    Num three_conn = num_mul(num_of(5), vc_cap);

    put("longest_path_cap", kk, longest_path_cap);
    put("vertex_cover_cap", kk, vc_cap);
    put("three_connected_dim_cap", kk, three_conn);

    Num p3k = num_pow(num_of(3), num_of(ik));
    Num p3k2 = num_pow(num_of(3), num_of(ik * ik));
    if (M) {
        Num nm = num_of(*M);
        put("outerplanar_glue_dim_cap", kk + ",M=" + M->str(), num_mul(p3k, nm));
        put("treewidth2_glue_dim_cap", kk + ",M=" + M->str(), num_mul(p3k2, nm));
        put("glued_three_connected_dim_cap", kk + ",M=" + M->str(),
            num_mul(num_mul(num_of(2 * ik + 11), nm), vc_cap));
    }

    Num gamma = three_conn;
    for (int i = 0; i < 6 * k; ++i)
        gamma = num_max(num_mul(p3k2, gamma),
                        num_mul(num_mul(num_of(2 * ik + 11), gamma), vc_cap));
    put("overall_dim_cap", kk, gamma);
    return table;
}

}  // namespace linfdim
