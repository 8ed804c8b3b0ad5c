#include "linfdim/flat_cover.hpp"

#include "linfdim/dimension.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace linfdim;
using linfdim::testing::random_connected_graph;
using linfdim::testing::random_outerplanar;

namespace {

MetricGraph unit_triangle() {
    MetricGraph mg;
    mg.graph = Graph({"a", "b", "c"}, {Edge("a", "b"), Edge("a", "c"), Edge("b", "c")});
    for (const auto& e : mg.graph.edges()) mg.d[e] = 1;
    return mg;
}

MetricGraph unit_k4() {
    MetricGraph mg;
    mg.graph = gen_family(Family::Complete, 4);
    for (const auto& e : mg.graph.edges()) mg.d[e] = 1;
    return mg;
}

}  // namespace

TEST_CASE("flatness of fixed arc sets on the unit triangle") {
    MetricGraph mg = unit_triangle();

    FlatCheck star = is_flat(mg, star_arcs(mg.graph, "a"));
    CHECK(star.flat);
    // the potential drops by exactly d along every chosen arc
    CHECK(star.potential.at("a") - star.potential.at("b") == Rat(1));
    CHECK(star.potential.at("a") - star.potential.at("c") == Rat(1));

    ArcSet cyclic{Arc{"a", "b"}, Arc{"b", "c"}, Arc{"c", "a"}};
    FlatCheck spin = is_flat(mg, cyclic);
    CHECK_FALSE(spin.flat);
    CHECK(spin.cycle_weight == Rat(-3));
    CHECK(spin.cycle.size() == 3);

    FlatCheck empty = is_flat(mg, {});
    CHECK(empty.flat);
    for (const auto& [v, p] : empty.potential) CHECK(p == Rat(0));
}

TEST_CASE("arc sets are validated against the host") {
    MetricGraph mg = unit_triangle();
    CHECK_THROWS_AS(is_flat(mg, ArcSet{Arc{"a", "z"}}), input_error);
    CHECK_THROWS_AS(is_flat(mg, ArcSet{Arc{"a", "b"}, Arc{"b", "a"}}), input_error);

    // both orientations are fine on a zero-length edge
    MetricGraph zero = unit_triangle();
    zero.set("a", "b", 0);
    CHECK(is_flat(zero, ArcSet{Arc{"a", "b"}, Arc{"b", "a"}}).flat);
}

TEST_CASE("potentials from shortest-path labels") {
    MetricGraph path;
    path.graph = Graph({"u", "v", "w"}, {Edge("u", "v"), Edge("v", "w")});
    path.set("u", "v", 1);
    path.set("v", "w", 2);
    FlatCheck pc = find_potential(path, ArcSet{Arc{"u", "v"}, Arc{"v", "w"}});
    REQUIRE(pc.flat);
    Rat shift = pc.potential.at("u");
    CHECK(pc.potential.at("v") - shift == Rat(-1));
    CHECK(pc.potential.at("w") - shift == Rat(-3));

    MetricGraph k4 = unit_k4();
    FlatCheck pair = find_potential(k4, ArcSet{Arc{"v1", "v2"}, Arc{"v3", "v4"}});
    REQUIRE(pair.flat);
    CHECK(pair.potential.at("v1") - pair.potential.at("v2") == Rat(1));
    CHECK(pair.potential.at("v3") - pair.potential.at("v4") == Rat(1));

    FlatCheck cyc =
        find_potential(unit_triangle(), ArcSet{Arc{"a", "b"}, Arc{"b", "c"}, Arc{"c", "a"}});
    CHECK_FALSE(cyc.flat);
    CHECK_FALSE(cyc.cycle.empty());
}

TEST_CASE("flattenability search") {
    MetricGraph mg = unit_triangle();
    CHECK(is_flattenable(mg, {Edge("a", "b")}).has_value());
    CHECK_FALSE(is_flattenable(mg, {Edge("a", "b"), Edge("a", "c"), Edge("b", "c")}).has_value());

    MetricGraph k4 = unit_k4();
    std::set<Edge> star;
    for (const auto& w : k4.graph.neighbors("v1")) star.insert(Edge("v1", w));
    auto orient = is_flattenable(k4, star);
    REQUIRE(orient.has_value());
    CHECK(is_flat(k4, *orient).flat);

    // the cap refuses large sets unless forced
    MetricGraph big;
    big.graph = gen_family(Family::Complete, 7);
    for (const auto& e : big.graph.edges()) big.d[e] = 1;
    std::set<Edge> all(big.graph.edges().begin(), big.graph.edges().end());
    CHECK_THROWS_AS(is_flattenable(big, all), input_error);
    CHECK_NOTHROW(is_flattenable(big, all, {.cap = 21, .force = true}));
}

TEST_CASE("pairwise incompatibility on certificates") {
    MetricGraph s2 = gen_family_certificate(Family::S, 2);
    CHECK(incompatible_exact(s2, Edge("v", "v1"), Edge("w", "w1")));
    CHECK_FALSE(incompatible_exact(s2, Edge("v", "v1"), Edge("v", "v2")));  // adjacent

    MetricGraph k4 = unit_k4();
    CHECK_FALSE(incompatible_exact(k4, Edge("v1", "v2"), Edge("v3", "v4")));

    MetricGraph n2 = gen_family_certificate(Family::N, 2);
    CHECK(incompatible_sufficient(n2, Edge("v0", "w0"), Edge("v1", "w1")));
    CHECK_FALSE(incompatible_sufficient(k4, Edge("v1", "v2"), Edge("v3", "v4")));

    Graph k2({"v", "w"}, {Edge("v", "w")});
    MetricGraph gadget = coloring_gadget(k2);
    CHECK(incompatible_sufficient(gadget, Edge("v_1", "v_2"), Edge("w_1", "w_2")));

    CHECK_THROWS_AS(incompatible_exact(k4, Edge("v1", "v2"), Edge("v1", "v2")), input_error);
}

TEST_CASE("incompatibility graphs") {
    MetricGraph s2 = gen_family_certificate(Family::S, 2);
    Graph inc = incompatibility_graph(s2, IncompatMode::Exact);
    // the certified triple is pairwise incompatible
    Vertex a = to_string(Edge("v", "v1"));
    Vertex b = to_string(Edge("w", "w1"));
    Vertex c = to_string(Edge("v2", "w2"));
    CHECK(inc.adjacent(a, b));
    CHECK(inc.adjacent(a, c));
    CHECK(inc.adjacent(b, c));

    Graph suff = incompatibility_graph(s2, IncompatMode::Sufficient);
    for (const auto& e : suff.edges()) CHECK(inc.has_edge(e));

    // trees: every edge set flattens toward a root, so nothing is incompatible
    MetricGraph tree;
    tree.graph = Graph({"r", "a", "b", "c"}, {Edge("r", "a"), Edge("a", "b"), Edge("a", "c")});
    tree.set("r", "a", 3);
    tree.set("a", "b", 1);
    tree.set("a", "c", 5);
    CHECK(incompatibility_graph(tree, IncompatMode::Exact).num_edges() == 0);
}

TEST_CASE("assembling and verifying max-norm embeddings") {
    MetricGraph mg = unit_triangle();
    FlatCovering cov{star_arcs(mg.graph, "a"), ArcSet{Arc{"b", "c"}}};
    LinfEmbedding emb = assemble_embedding(mg, cov);
    CHECK(emb.dim == 2);
    CHECK(verify_linf(mg, emb).valid);

    MetricGraph single;
    single.graph = Graph({"v", "w"}, {Edge("v", "w")});
    single.set("v", "w", Rat(7, 2));
    LinfEmbedding line = assemble_embedding(single, {ArcSet{Arc{"v", "w"}}});
    CHECK(line.dim == 1);
    Rat gap = line.coords.at("v")[0] - line.coords.at("w")[0];
    if (gap < 0) gap = -gap;
    CHECK(gap == Rat(7, 2));

    LinfEmbedding broken = emb;
    broken.coords.at("b")[0] += 1;
    LinfVerdict bad = verify_linf(mg, broken);
    CHECK_FALSE(bad.valid);

    // hand-built unit square in two coordinates
    MetricGraph c4;
    c4.graph = Graph({"a", "b", "c", "d"},
                     {Edge("a", "b"), Edge("b", "c"), Edge("c", "d"), Edge("a", "d")});
    for (const auto& e : c4.graph.edges()) c4.d[e] = 1;
    LinfEmbedding square;
    square.dim = 2;
    square.coords = {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {1, 1}}, {"d", {0, 1}}};
    CHECK(verify_linf(c4, square).valid);

    // invalid coverings carry a structured reason
    FlatCovering not_flat{ArcSet{Arc{"a", "b"}, Arc{"b", "c"}, Arc{"c", "a"}}};
    CHECK_THROWS_AS(assemble_embedding(mg, not_flat), CoveringError);
    FlatCovering uncovered{star_arcs(mg.graph, "a")};
    try {
        assemble_embedding(mg, uncovered);
        FAIL("expected a covering error");
    } catch (const CoveringError& e) {
        REQUIRE(e.uncovered.has_value());
        CHECK(*e.uncovered == Edge("b", "c"));
    }
}

TEST_CASE("frame merging across a shared edge") {
    Edge shared("a", "b");
    Frame left{{}, {shared, Edge("a", "c")}};
    Frame right{{}, {shared, Edge("b", "d")}};
    Frame kept = merge_frames_2sum(left, right, shared);
    CHECK(kept.tight.count(shared) == 1);
    CHECK(kept.tight.size() == 3);

    Frame gammad{{shared}, {shared, Edge("a", "c")}};
    Frame dropped = merge_frames_2sum(gammad, right, shared);
    CHECK(dropped.tight.count(shared) == 0);
    CHECK(dropped.shrinkable.count(shared) == 0);

    Frame absent{{}, {Edge("a", "c")}};
    CHECK_THROWS_AS(merge_frames_2sum(absent, Frame{{}, {Edge("b", "d")}}, shared), input_error);
}

TEST_CASE("triangle frames and the covering property") {
    MetricGraph mg = unit_triangle();
    auto frames = three_frames_outerplanar(mg);
    CHECK(check_outer_frames(mg, frames).ok);
    // base shape: shrinkable sizes 2, 1, 0
    std::multiset<std::size_t> sizes;
    for (const auto& f : frames) sizes.insert(f.shrinkable.size());
    CHECK(sizes == std::multiset<std::size_t>{0, 1, 2});

    // 4-cycle plus a chord
    MetricGraph diamond;
    diamond.graph = Graph({"a", "b", "c", "d"}, {Edge("a", "b"), Edge("b", "c"), Edge("c", "d"),
                                                 Edge("a", "d"), Edge("a", "c")});
    diamond.set("a", "b", 1);
    diamond.set("b", "c", 1);
    diamond.set("c", "d", 2);
    diamond.set("a", "d", 2);
    diamond.set("a", "c", 2);
    REQUIRE(validate_metric(diamond).valid);
    auto dfr = three_frames_outerplanar(diamond);
    CHECK(check_outer_frames(diamond, dfr).ok);

    // fan with five outer vertices
    MetricGraph fan;
    fan.graph = gen_family(Family::Fan, 5);
    for (const auto& e : fan.graph.edges()) fan.d[e] = 1;
    auto ffr = three_frames_outerplanar(fan);
    CHECK(check_outer_frames(fan, ffr).ok);

    CHECK_THROWS_AS(three_frames_outerplanar(unit_k4()), input_error);
}

TEST_CASE("frame checking accepts built frames and refutes bogus ones") {
    MetricGraph mg = unit_triangle();
    auto frames = three_frames_outerplanar(mg);
    for (const auto& fr : frames) {
        FrameCheck fc = check_frame(mg, fr);
        CHECK_FALSE(fc.refuted);
        CHECK(fc.samples_passed > 0);
    }

    // empty shrinkable set: the sample cube is a single point
    Frame point{{}, {Edge("a", "b")}};
    CHECK_FALSE(check_frame(mg, point).refuted);

    // all three triangle edges can never be simultaneously tight
    Frame bogus{{Edge("a", "b"), Edge("a", "c"), Edge("b", "c")},
                {Edge("a", "b"), Edge("a", "c"), Edge("b", "c")}};
    FrameCheck fc = check_frame(mg, bogus);
    CHECK(fc.refuted);
    CHECK(fc.witness_lambda.size() == 3);
}

TEST_CASE("random frames over outerplanar hosts pass the checker") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 12; ++t) {
        std::uniform_int_distribution<int> size(4, 9);
        Graph g = random_outerplanar(size(rng), rng);
        MetricGraph mg = random_distance_function(g, 500 + t);
        auto frames = three_frames_outerplanar(mg);
        auto verdict = check_outer_frames(mg, frames);
        CAPTURE(verdict.reason);
        CHECK(verdict.ok);
        for (const auto& fr : frames) CHECK_FALSE(check_frame(mg, fr).refuted);
    }
}

TEST_CASE("star arc sets of random metric graphs are always flat") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 60; ++t) {
        std::uniform_int_distribution<int> size(3, 9);
        Graph g = random_connected_graph(size(rng), 0.45, rng);
        MetricGraph mg = random_distance_function(g, 900 + t);
        for (const auto& v : g.vertices()) {
            FlatCheck fc = is_flat(mg, star_arcs(g, v));
            CHECK(fc.flat);
            for (const auto& w : g.neighbors(v))
                CHECK(fc.potential.at(v) - fc.potential.at(w) == mg.dist(Edge(v, w)));
        }
    }
}

TEST_CASE("flatness is preserved under full reversal and subsets") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> size(4, 8);
    for (int t = 0; t < 40; ++t) {
        Graph g = random_connected_graph(size(rng), 0.5, rng);
        MetricGraph mg = random_distance_function(g, 1500 + t);
        ArcSet F;
        std::uniform_real_distribution<double> coin(0, 1);
        for (const auto& e : g.edges()) {
            double c = coin(rng);
            if (c < 0.35)
                F.insert(Arc{e.u, e.v});
            else if (c < 0.7)
                F.insert(Arc{e.v, e.u});
        }
        bool flat = is_flat(mg, F).flat;
        CHECK(is_flat(mg, reversed_arcs(F)).flat == flat);
        if (flat && !F.empty()) {
            ArcSet sub;
            for (const auto& a : F)
                if (coin(rng) < 0.5) sub.insert(a);
            CHECK(is_flat(mg, sub).flat);
        }
    }
}

TEST_CASE("no two directed walks between the same ends are both negative") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 25; ++t) {
        Graph g = random_connected_graph(6, 0.5, rng);
        MetricGraph mg = random_distance_function(g, 2500 + t);
        std::vector<Vertex> vs(g.vertices().begin(), g.vertices().end());
        std::uniform_int_distribution<int> pick(0, static_cast<int>(vs.size()) - 1);
        ArcSet F = star_arcs(g, vs[pick(rng)]);
        REQUIRE(is_flat(mg, F).flat);
        // signed shortest-walk lengths by label correction
        auto signed_dist = [&](const Vertex& src) {
            std::map<Vertex, Rat> dist;
            dist[src] = 0;
            for (std::size_t round = 0; round < vs.size() + 1; ++round)
                for (const auto& e : g.edges())
                    for (const auto& [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                        if (!dist.count(a)) continue;
                        Rat w = F.count(Arc{a, b}) ? -mg.dist(e) : mg.dist(e);
                        if (!dist.count(b) || dist[a] + w < dist[b]) dist[b] = dist[a] + w;
                    }
            return dist;
        };
        for (const auto& u : vs) {
            auto du = signed_dist(u);
            for (const auto& v : vs) {
                if (u == v) continue;
                auto dv = signed_dist(v);
                bool both_negative = du.count(v) && dv.count(u) && du[v] < 0 && dv[u] < 0;
                CHECK_FALSE(both_negative);
            }
        }
    }
}
