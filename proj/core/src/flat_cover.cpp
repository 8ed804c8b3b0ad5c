#include "linfdim/flat_cover.hpp"

#include <algorithm>
#include <random>

namespace linfdim {

void validate_arcset(const MetricGraph& mg, const ArcSet& F) {
    for (const auto& a : F) {
        Edge e = arc_edge(a);
        if (!mg.graph.has_edge(e))
            throw input_error("arc " + to_string(a) + " has no underlying edge");
        if (F.count(reversed(a)) && mg.dist(e) != 0)
            throw input_error("both orientations of positive-length edge " + to_string(e));
    }
}

ArcSet reversed_arcs(const ArcSet& F) {
    ArcSet out;
    for (const auto& a : F) out.insert(reversed(a));
    return out;
}

ArcSet star_arcs(const Graph& g, const Vertex& center) {
    ArcSet out;
    for (const auto& w : g.neighbors(center)) out.insert(Arc{center, w});
    return out;
}

// ---------------------------------------------------------------------------
// negative-cycle detection

namespace {

struct WeightedArc {
    int from, to;
    Rat w;
    Arc original;  // arc of D(G) this constraint came from (for witnesses)
};

struct ConstraintGraph {
    std::vector<Vertex> names;
    std::map<Vertex, int> index;
    std::vector<WeightedArc> arcs;

    int id(const Vertex& v) const { return index.at(v); }
};

ConstraintGraph base_digraph(const MetricGraph& mg) {
    ConstraintGraph cg;
    for (const auto& v : mg.graph.vertices()) {
        cg.index[v] = static_cast<int>(cg.names.size());
        cg.names.push_back(v);
    }
    return cg;
}

void add_signed_arcs(ConstraintGraph& cg, const MetricGraph& mg, const ArcSet& F) {
    for (const auto& e : mg.graph.edges()) {
        const Rat& d = mg.dist(e);
        Rat wf = F.count(Arc{e.u, e.v}) ? -d : d;
        Rat wb = F.count(Arc{e.v, e.u}) ? -d : d;
        cg.arcs.push_back({cg.id(e.u), cg.id(e.v), wf, Arc{e.u, e.v}});
        cg.arcs.push_back({cg.id(e.v), cg.id(e.u), wb, Arc{e.v, e.u}});
    }
}

struct BellmanResult {
    bool has_negative_cycle = false;
    std::vector<Rat> dist;
    std::vector<int> pred_arc;       // index into arcs
    std::vector<int> cycle_arcs;     // arc indices along the cycle, in order
};

// Label-correcting relaxation started from a virtual zero-weight source to
// every vertex (all labels start at 0). A relaxation still possible after n
// rounds pins a negative cycle, extracted by predecessor walking.
BellmanResult bellman_ford(const ConstraintGraph& cg) {
    BellmanResult res;
    std::size_t n = cg.names.size();
    res.dist.assign(n, Rat(0));
    res.pred_arc.assign(n, -1);
    bool changed = true;
    for (std::size_t round = 0; round < n && changed; ++round) {
        changed = false;
        for (std::size_t i = 0; i < cg.arcs.size(); ++i) {
            const auto& a = cg.arcs[i];
            Rat cand = res.dist[a.from] + a.w;
            if (cand < res.dist[a.to]) {
                res.dist[a.to] = cand;
                res.pred_arc[a.to] = static_cast<int>(i);
                changed = true;
            }
        }
    }
    if (!changed) return res;
    for (std::size_t i = 0; i < cg.arcs.size(); ++i) {
        const auto& a = cg.arcs[i];
        if (res.dist[a.from] + a.w < res.dist[a.to]) {
            res.has_negative_cycle = true;
            // walk predecessors n times to land inside the cycle
            int v = a.from;
            for (std::size_t step = 0; step < n; ++step) v = cg.arcs[res.pred_arc[v]].from;
            std::vector<int> walk;
            int cur = v;
            do {
                int pa = res.pred_arc[cur];
                walk.push_back(pa);
                cur = cg.arcs[pa].from;
            } while (cur != v);
            std::reverse(walk.begin(), walk.end());
            res.cycle_arcs = std::move(walk);
            return res;
        }
    }
    return res;
}

FlatCheck run_flat_check(const MetricGraph& mg, const ConstraintGraph& cg) {
    BellmanResult bf = bellman_ford(cg);
    FlatCheck out;
    if (!bf.has_negative_cycle) {
        out.flat = true;
        for (std::size_t i = 0; i < cg.names.size(); ++i) out.potential[cg.names[i]] = bf.dist[i];
        return out;
    }
    out.flat = false;
    out.cycle_weight = 0;
    for (int ai : bf.cycle_arcs) {
        out.cycle.push_back(cg.arcs[ai].original);
        out.cycle_weight += cg.arcs[ai].w;
    }
    return out;
}

}  // namespace

FlatCheck is_flat(const MetricGraph& mg, const ArcSet& F) {
    validate_arcset(mg, F);
    ConstraintGraph cg = base_digraph(mg);
    add_signed_arcs(cg, mg, F);
    return run_flat_check(mg, cg);
}

FlatCheck find_potential(const MetricGraph& mg, const ArcSet& F) { return is_flat(mg, F); }

// ---------------------------------------------------------------------------
// flattenability

namespace {

bool flatten_dfs(const MetricGraph& mg, const std::vector<Edge>& edges, std::size_t pos,
                 ArcSet& chosen) {
    FlatCheck check = is_flat(mg, chosen);
    if (!check.flat) return false;
    if (pos == edges.size()) return true;
    const Edge& e = edges[pos];
    for (int dir = 0; dir < (pos == 0 ? 1 : 2); ++dir) {
        Arc a = dir == 0 ? Arc{e.u, e.v} : Arc{e.v, e.u};
        chosen.insert(a);
        if (flatten_dfs(mg, edges, pos + 1, chosen)) return true;
        chosen.erase(a);
    }
    return false;
}

}  // namespace

std::optional<ArcSet> is_flattenable(const MetricGraph& mg, const std::set<Edge>& S,
                                     const FlattenOptions& opts) {
    for (const auto& e : S)
        if (!mg.graph.has_edge(e))
            throw input_error("edge " + to_string(e) + " not in the host graph");
    if (S.size() > opts.cap && !opts.force)
        throw input_error("orientation search over " + std::to_string(S.size()) +
                          " edges exceeds the cap of " + std::to_string(opts.cap));
    std::vector<Edge> edges(S.begin(), S.end());
    ArcSet chosen;
    if (flatten_dfs(mg, edges, 0, chosen)) return chosen;
    return std::nullopt;
}

bool incompatible_exact(const MetricGraph& mg, const Edge& e, const Edge& f) {
    if (e == f) throw input_error("incompatibility needs two distinct edges");
    if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) return false;
    return !is_flattenable(mg, {e, f}).has_value();
}

bool incompatible_sufficient(const MetricGraph& mg, const Edge& e, const Edge& f) {
    if (e == f) throw input_error("incompatibility needs two distinct edges");
    if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) return false;
    auto from_u = shortest_path_lengths(mg, e.u);
    auto from_v = shortest_path_lengths(mg, e.v);
    auto it_uu = from_u.find(f.u), it_uv = from_u.find(f.v);
    auto it_vu = from_v.find(f.u), it_vv = from_v.find(f.v);
    if (it_uu == from_u.end() || it_uv == from_u.end() || it_vu == from_v.end() ||
        it_vv == from_v.end())
        return false;  // ends in different components: no connecting paths
    Rat bound = mg.dist(e) + mg.dist(f);
    return it_uu->second + it_vv->second < bound && it_uv->second + it_vu->second < bound;
}

Graph incompatibility_graph(const MetricGraph& mg, IncompatMode mode) {
    Graph out;
    std::vector<Edge> edges(mg.graph.edges().begin(), mg.graph.edges().end());
    for (const auto& e : edges) out.add_vertex(to_string(e));
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            bool inc = mode == IncompatMode::Exact
                           ? incompatible_exact(mg, edges[i], edges[j])
                           : incompatible_sufficient(mg, edges[i], edges[j]);
            if (inc) out.add_edge(to_string(edges[i]), to_string(edges[j]));
        }
    return out;
}

// ---------------------------------------------------------------------------
// coverings and embeddings

void validate_covering(const MetricGraph& mg, const FlatCovering& cov) {
    for (std::size_t i = 0; i < cov.size(); ++i) {
        validate_arcset(mg, cov[i]);
        if (!is_flat(mg, cov[i]).flat)
            throw CoveringError("covering member " + std::to_string(i) + " is not flat", i,
                                std::nullopt);
    }
    for (const auto& e : mg.graph.edges()) {
        bool covered = false;
        for (const auto& F : cov)
            if (F.count(Arc{e.u, e.v}) || F.count(Arc{e.v, e.u})) {
                covered = true;
                break;
            }
        if (!covered)
            throw CoveringError("edge " + to_string(e) + " is uncovered",
                                static_cast<std::size_t>(-1), e);
    }
}

LinfEmbedding assemble_embedding(const MetricGraph& mg, const FlatCovering& cov) {
    validate_covering(mg, cov);
    LinfEmbedding emb;
    emb.dim = cov.size();
    for (const auto& v : mg.graph.vertices()) emb.coords[v] = {};
    for (const auto& F : cov) {
        FlatCheck check = is_flat(mg, F);
        for (const auto& v : mg.graph.vertices()) emb.coords[v].push_back(check.potential.at(v));
    }
    return emb;
}

LinfVerdict verify_linf(const MetricGraph& mg, const LinfEmbedding& emb) {
    for (const auto& v : mg.graph.vertices()) {
        auto it = emb.coords.find(v);
        if (it == emb.coords.end() || it->second.size() != emb.dim)
            throw input_error("embedding not defined on vertex '" + v + "'");
    }
    for (const auto& e : mg.graph.edges()) {
        const auto& pu = emb.coords.at(e.u);
        const auto& pv = emb.coords.at(e.v);
        Rat gap(0);
        for (std::size_t i = 0; i < emb.dim; ++i) {
            Rat g = pu[i] - pv[i];
            if (g < 0) g = -g;
            if (g > gap) gap = g;
        }
        if (gap != mg.dist(e))
            return LinfVerdict{false, e, mg.dist(e), gap};
    }
    return LinfVerdict{};
}

// ---------------------------------------------------------------------------
// frames

Frame merge_frames_2sum(const Frame& fr1, const Frame& fr2, const Edge& e) {
    auto in = [](const std::set<Edge>& s, const Edge& x) { return s.count(x) > 0; };
    bool tight_only_1 = in(fr1.tight, e) && !in(fr1.shrinkable, e);
    bool tight_only_2 = in(fr2.tight, e) && !in(fr2.shrinkable, e);
    Frame out;
    std::set_union(fr1.shrinkable.begin(), fr1.shrinkable.end(), fr2.shrinkable.begin(),
                   fr2.shrinkable.end(), std::inserter(out.shrinkable, out.shrinkable.end()));
    std::set_union(fr1.tight.begin(), fr1.tight.end(), fr2.tight.begin(), fr2.tight.end(),
                   std::inserter(out.tight, out.tight.end()));
    if (tight_only_1 && tight_only_2) return out;  // shared equality survives
    if (in(fr1.shrinkable, e) || in(fr2.shrinkable, e)) {
        out.shrinkable.erase(e);
        out.tight.erase(e);
        return out;
    }
    throw input_error("shared edge " + to_string(e) +
                      " is neither tight on both sides nor shrinkable on either");
}

namespace {

// Frames on a triangle, ordered so the two cheapest edges share a vertex:
// with d(u1u2) <= d(u1u3) <= d(u2u3),
//   frame 0 = ({u1u2,u1u3}, {u1u2,u1u3})
//   frame 1 = ({u2u3},      {u1u2,u2u3})
//   frame 2 = ({},          {u1u3,u2u3})
std::array<Frame, 3> triangle_frames(const MetricGraph& mg, const Vertex& a, const Vertex& b,
                                     const Vertex& c) {
    std::vector<Edge> es{Edge(a, b), Edge(a, c), Edge(b, c)};
    std::sort(es.begin(), es.end(), [&](const Edge& x, const Edge& y) {
        if (mg.dist(x) != mg.dist(y)) return mg.dist(x) < mg.dist(y);
        return x < y;
    });
    // u1 = common end of the two cheapest edges
    Vertex u1 = (es[0].u == es[1].u || es[0].u == es[1].v) ? es[0].u : es[0].v;
    Vertex u2 = es[0].u == u1 ? es[0].v : es[0].u;
    Vertex u3 = es[1].u == u1 ? es[1].v : es[1].u;
    Edge e12(u1, u2), e13(u1, u3), e23(u2, u3);
    std::array<Frame, 3> fr;
    fr[0] = Frame{{e12, e13}, {e12, e13}};
    fr[1] = Frame{{e23}, {e12, e23}};
    fr[2] = Frame{{}, {e13, e23}};
    return fr;
}

// Positions of an edge inside a frame triple: index where it is tight but not
// shrinkable, index where it is shrinkable, index where it is absent.
struct EdgeSlots {
    int tight_only = -1;
    int shrinking = -1;
    int absent = -1;
};

EdgeSlots edge_slots(const std::array<Frame, 3>& fr, const Edge& e) {
    EdgeSlots s;
    for (int j = 0; j < 3; ++j) {
        bool t = fr[j].tight.count(e) > 0;
        bool g = fr[j].shrinkable.count(e) > 0;
        if (t && !g) s.tight_only = j;
        else if (g) s.shrinking = j;
        else s.absent = j;
    }
    return s;
}

}  // namespace

std::array<Frame, 3> three_frames_outerplanar(const MetricGraph& mg) {
    auto cycle = outer_cycle(mg.graph);
    if (!cycle) throw input_error("host is not a 2-connected outerplanar graph");
    const std::vector<Vertex>& order = *cycle;
    std::size_t n = order.size();

    // triangulate inner faces; helper chords take shortest-path distances
    MetricGraph tg = mg;
    std::set<Edge> added;
    {
        // polygons are index lists into `order`; split on existing chords,
        // fan-triangulate chordless polygons
        std::vector<std::vector<int>> workstack;
        std::vector<int> whole(n);
        for (std::size_t i = 0; i < n; ++i) whole[i] = static_cast<int>(i);
        workstack.push_back(whole);
        while (!workstack.empty()) {
            std::vector<int> poly = workstack.back();
            workstack.pop_back();
            std::size_t m = poly.size();
            if (m <= 3) continue;
            bool split = false;
            for (std::size_t i = 0; i < m && !split; ++i)
                for (std::size_t j = i + 2; j < m && !split; ++j) {
                    if (i == 0 && j == m - 1) continue;  // boundary pair
                    Edge ch(order[poly[i]], order[poly[j]]);
                    if (!tg.graph.has_edge(ch)) continue;
                    std::vector<int> left(poly.begin() + i, poly.begin() + j + 1);
                    std::vector<int> right(poly.begin() + j, poly.end());
                    right.insert(right.end(), poly.begin(), poly.begin() + i + 1);
                    workstack.push_back(left);
                    workstack.push_back(right);
                    split = true;
                }
            if (split) continue;
            for (std::size_t j = 2; j + 1 < m; ++j) {
                const Vertex& a = order[poly[0]];
                const Vertex& b = order[poly[j]];
                Edge ch(a, b);
                auto sp = shortest_path_lengths(mg, a);
                tg.graph.add_edge(a, b);
                tg.set(a, b, sp.at(b));
                added.insert(ch);
            }
        }
    }

    // strip ears down to a triangle, remembering each removed corner
    struct Ear {
        Vertex v, n1, n2;
    };
    std::vector<Ear> ears;
    Graph shrink = tg.graph;
    while (shrink.num_vertices() > 3) {
        Vertex pick;
        for (const auto& v : shrink.vertices())
            if (shrink.degree(v) == 2) {
                pick = v;
                break;
            }
        if (pick.empty()) throw input_error("triangulated host is not maximal outerplanar");
        auto nb = shrink.neighbors(pick);
        if (!shrink.adjacent(nb[0], nb[1]))
            throw input_error("triangulated host is not maximal outerplanar");
        ears.push_back({pick, nb[0], nb[1]});
        shrink.remove_vertex(pick);
    }

    std::vector<Vertex> base(shrink.vertices().begin(), shrink.vertices().end());
    std::array<Frame, 3> frames = triangle_frames(tg, base[0], base[1], base[2]);

    for (auto it = ears.rbegin(); it != ears.rend(); ++it) {
        Edge shared(it->n1, it->n2);
        std::array<Frame, 3> corner = triangle_frames(tg, it->v, it->n1, it->n2);
        EdgeSlots lhs = edge_slots(frames, shared);
        EdgeSlots rhs = edge_slots(corner, shared);
        if (lhs.tight_only < 0 || lhs.shrinking < 0 || rhs.tight_only < 0 || rhs.shrinking < 0)
            throw input_error("frame bookkeeping lost the shared edge " + to_string(shared));
        std::array<Frame, 3> merged;
        merged[0] = merge_frames_2sum(frames[lhs.tight_only], corner[rhs.tight_only], shared);
        merged[1] = merge_frames_2sum(frames[lhs.shrinking], corner[rhs.absent], shared);
        merged[2] = merge_frames_2sum(frames[lhs.absent], corner[rhs.shrinking], shared);
        frames = merged;
    }

    for (auto& fr : frames) {
        for (const auto& ch : added) {
            fr.tight.erase(ch);
            fr.shrinkable.erase(ch);
        }
    }
    return frames;
}

OuterFramesVerdict check_outer_frames(const MetricGraph& mg, const std::array<Frame, 3>& frames) {
    auto fail = [](std::string why) { return OuterFramesVerdict{false, std::move(why)}; };
    auto cycle = outer_cycle(mg.graph);
    if (!cycle) return fail("host is not 2-connected outerplanar");
    std::set<Edge> outer;
    for (std::size_t i = 0; i < cycle->size(); ++i)
        outer.insert(Edge((*cycle)[i], (*cycle)[(i + 1) % cycle->size()]));

    for (int j = 0; j < 3; ++j) {
        for (const auto& e : frames[j].shrinkable)
            if (!frames[j].tight.count(e))
                return fail("frame " + std::to_string(j) + ": shrinkable edge " + to_string(e) +
                            " missing from its tight set");
        if (!is_flattenable(mg, frames[j].tight, {.cap = 64, .force = true}))
            return fail("frame " + std::to_string(j) + ": tight set is not flattenable");
    }
    for (const auto& e : mg.graph.edges()) {
        int tight_count = 0, shrink_count = 0;
        for (int j = 0; j < 3; ++j) {
            tight_count += frames[j].tight.count(e) ? 1 : 0;
            shrink_count += frames[j].shrinkable.count(e) ? 1 : 0;
        }
        if (tight_count < 1) return fail("edge " + to_string(e) + " is in no tight set");
        if (outer.count(e) && (tight_count != 2 || shrink_count != 1))
            return fail("outer edge " + to_string(e) + " has tight/shrinkable counts " +
                        std::to_string(tight_count) + "/" + std::to_string(shrink_count));
    }
    return OuterFramesVerdict{};
}

// ---------------------------------------------------------------------------
// frame checking

namespace {

// Feasibility of: |p(u)-p(v)| <= d everywhere, p gap exactly target(e) for
// e in `targets`. Searched over sign patterns with incremental pruning.
struct SignSearch {
    const MetricGraph& mg;
    std::vector<std::pair<Edge, Rat>> targets;
    std::vector<int> preferred;  // preferred sign per target (+1 maps u->v drop)
    ConstraintGraph cg;
    std::vector<WeightedArc> fixed;

    bool feasible_prefix() {
        BellmanResult bf = bellman_ford(cg);
        return !bf.has_negative_cycle;
    }

    bool dfs(std::size_t pos) {
        if (!feasible_prefix()) return false;
        if (pos == targets.size()) return true;
        const auto& [e, t] = targets[pos];
        int first = preferred[pos];
        for (int attempt = 0; attempt < (pos == 0 ? 1 : 2); ++attempt) {
            int sign = attempt == 0 ? first : -first;
            // sign +1 encodes p(u) - p(v) = t
            int u = cg.id(e.u), v = cg.id(e.v);
            Rat tt = sign > 0 ? t : -t;
            cg.arcs.push_back({u, v, -tt, Arc{e.u, e.v}});
            cg.arcs.push_back({v, u, tt, Arc{e.v, e.u}});
            if (dfs(pos + 1)) return true;
            cg.arcs.pop_back();
            cg.arcs.pop_back();
        }
        return false;
    }
};

bool lambda_feasible(const MetricGraph& mg, const Frame& frame,
                     const std::map<Edge, Rat>& lambda, const std::optional<ArcSet>& warm) {
    SignSearch ss{mg};
    ss.cg = base_digraph(mg);
    add_signed_arcs(ss.cg, mg, {});
    for (const auto& e : frame.tight) {
        Rat target = mg.dist(e);
        auto it = lambda.find(e);
        if (it != lambda.end()) target = target * it->second;
        ss.targets.push_back({e, target});
        int pref = 1;
        if (warm && warm->count(Arc{e.v, e.u})) pref = -1;
        ss.preferred.push_back(pref);
    }
    return ss.dfs(0);
}

}  // namespace

FrameCheck check_frame(const MetricGraph& mg, const Frame& frame, const FrameSamplePlan& plan) {
    for (const auto& e : frame.tight)
        if (!mg.graph.has_edge(e))
            throw input_error("frame edge " + to_string(e) + " not in the host graph");
    for (const auto& e : frame.shrinkable)
        if (!frame.tight.count(e))
            throw input_error("shrinkable edge " + to_string(e) + " missing from the tight set");

    std::vector<Edge> gamma(frame.shrinkable.begin(), frame.shrinkable.end());
    std::vector<std::map<Edge, Rat>> samples;

    auto corner = [&](std::uint64_t mask) {
        std::map<Edge, Rat> lam;
        for (std::size_t i = 0; i < gamma.size(); ++i)
            lam[gamma[i]] = (mask >> i) & 1 ? Rat(1) : Rat(0);
        return lam;
    };

    if (gamma.size() <= plan.corner_limit) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << gamma.size()); ++mask)
            samples.push_back(corner(mask));
    } else {
        samples.push_back(corner(0));
        samples.push_back(corner(~std::uint64_t(0)));
    }
    {
        std::map<Edge, Rat> mid;
        for (const auto& e : gamma) mid[e] = Rat(1, 2);
        samples.push_back(mid);
    }
    std::mt19937_64 rng(plan.seed);
    std::uniform_int_distribution<int> pick(0, plan.denominator);
    for (int s = 0; s < plan.random_samples; ++s) {
        std::map<Edge, Rat> lam;
        for (const auto& e : gamma) lam[e] = Rat(pick(rng), plan.denominator);
        samples.push_back(lam);
    }

    std::optional<ArcSet> warm;
    if (frame.tight.size() <= 30)
        warm = is_flattenable(mg, frame.tight, {.cap = 30, .force = true});

    FrameCheck out;
    for (const auto& lam : samples) {
        if (!lambda_feasible(mg, frame, lam, warm)) {
            out.refuted = true;
            out.witness_lambda = lam;
            return out;
        }
        ++out.samples_passed;
    }
    return out;
}

}  // namespace linfdim
