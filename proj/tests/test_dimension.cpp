#include "linfdim/dimension.hpp"

#include "linfdim/structure.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace linfdim;
using linfdim::testing::random_connected_graph;

namespace {

MetricGraph unit(const Graph& g) {
    MetricGraph mg;
    mg.graph = g;
    for (const auto& e : g.edges()) mg.d[e] = 1;
    return mg;
}

MetricGraph unit_triangle() {
    return unit(Graph({"a", "b", "c"}, {Edge("a", "b"), Edge("a", "c"), Edge("b", "c")}));
}

Graph petersen() {
    Graph g;
    for (int i = 0; i < 5; ++i) {
        g.add_vertex("o" + std::to_string(i));
        g.add_vertex("i" + std::to_string(i));
    }
    for (int i = 0; i < 5; ++i) {
        g.add_edge("o" + std::to_string(i), "o" + std::to_string((i + 1) % 5));
        g.add_edge("i" + std::to_string(i), "i" + std::to_string((i + 2) % 5));
        g.add_edge("o" + std::to_string(i), "i" + std::to_string(i));
    }
    return g;
}

}  // namespace

TEST_CASE("exact dimension on fixed instances") {
    DimOutcome tri = exact_dim(unit_triangle());
    REQUIRE(tri.status == DimStatus::Solved);
    CHECK(tri.result.dimension == 2);
    CHECK(verify_linf(unit_triangle(), assemble_embedding(unit_triangle(), tri.result.covering))
              .valid);

    MetricGraph path;
    path.graph = Graph({"a", "b", "c", "d"}, {Edge("a", "b"), Edge("b", "c"), Edge("c", "d")});
    path.set("a", "b", 3);
    path.set("b", "c", Rat(1, 2));
    path.set("c", "d", 5);
    DimOutcome pd = exact_dim(path);
    REQUIRE(pd.status == DimStatus::Solved);
    CHECK(pd.result.dimension == 1);

    MetricGraph s2 = gen_family_certificate(Family::S, 2);
    DimOutcome sd = exact_dim(s2);
    REQUIRE(sd.status == DimStatus::Solved);
    CHECK(sd.result.dimension == 3);
    CHECK(sd.result.covering.size() == 3);
    CHECK(sd.result.lower_bound_witness.size() == 3);
    LinfEmbedding emb = assemble_embedding(s2, sd.result.covering);
    CHECK(emb.dim == 3);
    CHECK(verify_linf(s2, emb).valid);

    MetricGraph k4 = unit(gen_family(Family::Complete, 4));
    DimOutcome kd = exact_dim(k4);
    REQUIRE(kd.status == DimStatus::Solved);
    CHECK(kd.result.dimension == 2);

    MetricGraph empty;
    empty.graph.add_vertex("lonely");
    CHECK(exact_dim(empty).result.dimension == 0);

    CHECK_THROWS_AS(exact_dim(MetricGraph{unit_triangle().graph, {}}), input_error);
}

TEST_CASE("dimension is invariant under positive scaling") {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 8; ++t) {
        Graph g = random_connected_graph(6, 0.5, rng);
        MetricGraph mg = random_distance_function(g, 3100 + t);
        MetricGraph scaled = mg;
        for (auto& [e, d] : scaled.d) d *= Rat(3, 7);
        DimOutcome a = exact_dim(mg);
        DimOutcome b = exact_dim(scaled);
        REQUIRE(a.status == DimStatus::Solved);
        REQUIRE(b.status == DimStatus::Solved);
        CHECK(a.result.dimension == b.result.dimension);
    }
}

TEST_CASE("incompatibility lower bounds on the certified families") {
    MetricGraph p3 = gen_family_certificate(Family::P, 3);
    auto lb = lower_bound_incompat(p3, IncompatMode::Exact);
    CHECK(lb.first == 4);
    CHECK(lb.second.size() == 4);
    for (std::size_t i = 0; i < lb.second.size(); ++i)
        for (std::size_t j = i + 1; j < lb.second.size(); ++j)
            CHECK(incompatible_exact(p3, lb.second[i], lb.second[j]));

    auto f5 = lower_bound_incompat(gen_family_certificate(Family::F, 5), IncompatMode::Exact);
    CHECK(f5.first == 6);

    auto tri = lower_bound_incompat(unit_triangle(), IncompatMode::Exact);
    CHECK(tri.first == 1);
}

TEST_CASE("vertex cover bounds") {
    VertexCoverResult k4 = upper_bound_tau(gen_family(Family::Complete, 4));
    CHECK(k4.size == 3);
    CHECK(k4.exact);

    VertexCoverResult l5 = upper_bound_tau(gen_family(Family::Ladder, 5));
    CHECK(l5.size == 5);

    Graph star;
    star.add_vertex("hub");
    for (int i = 0; i < 7; ++i) {
        star.add_vertex("leaf" + std::to_string(i));
        star.add_edge("hub", "leaf" + std::to_string(i));
    }
    CHECK(upper_bound_tau(star).size == 1);

    // exhaustive cross-check on small random graphs
    std::mt19937_64 rng(61);
    for (int t = 0; t < 15; ++t) {
        Graph g = linfdim::testing::random_graph(7, 0.45, rng);
        VertexCoverResult vc = upper_bound_tau(g);
        std::vector<Vertex> vs(g.vertices().begin(), g.vertices().end());
        std::size_t brute = vs.size();
        for (std::uint32_t mask = 0; mask < (1u << vs.size()); ++mask) {
            std::set<Vertex> cover;
            for (std::size_t i = 0; i < vs.size(); ++i)
                if (mask >> i & 1) cover.insert(vs[i]);
            bool covers = true;
            for (const auto& e : g.edges())
                if (!cover.count(e.u) && !cover.count(e.v)) covers = false;
            if (covers) brute = std::min(brute, cover.size());
        }
        CHECK(vc.size == brute);
    }
}

TEST_CASE("wheel covers stay within four sets") {
    MetricGraph w3 = unit(gen_family(Family::Wheel, 3));
    FlatCovering c3 = wheel_cover(w3);
    CHECK(c3.size() <= 4);
    CHECK_NOTHROW(validate_covering(w3, c3));

    MetricGraph w6;
    w6.graph = gen_family(Family::Wheel, 6);
    for (int i = 1; i <= 6; ++i) {
        w6.set("v0", "v" + std::to_string(i), 1);
        w6.set("v" + std::to_string(i), "v" + std::to_string(i % 6 + 1), 2);
    }
    REQUIRE(validate_metric(w6).valid);
    FlatCovering c6 = wheel_cover(w6);
    CHECK(c6.size() <= 4);
    CHECK_NOTHROW(validate_covering(w6, c6));

    for (int t = 0; t < 6; ++t) {
        MetricGraph wd = random_distance_function(gen_family(Family::Wheel, 4), 3300 + t);
        FlatCovering cv = wheel_cover(wd);
        CHECK(cv.size() <= 4);
        CHECK_NOTHROW(validate_covering(wd, cv));
    }

    CHECK_THROWS_AS(wheel_cover(unit(gen_family(Family::Ladder, 3))), input_error);
}

TEST_CASE("the coloring gadget tracks the chromatic number") {
    Graph k1;
    k1.add_vertex("v");
    MetricGraph g1 = coloring_gadget(k1);
    CHECK(g1.graph.num_vertices() == 2);
    CHECK(g1.dist(Edge("v_1", "v_2")) == Rat(2));
    CHECK(exact_dim(g1).result.dimension == 1);

    Graph k2({"v", "w"}, {Edge("v", "w")});
    MetricGraph g2 = coloring_gadget(k2);
    CHECK(g2.graph.num_vertices() == 4);
    CHECK(g2.graph.num_edges() == 6);
    CHECK(exact_dim(g2).result.dimension == 2);
    CHECK(chromatic_oracle(k2) == 2);

    Graph k3({"a", "b", "c"}, {Edge("a", "b"), Edge("a", "c"), Edge("b", "c")});
    CHECK(exact_dim(coloring_gadget(k3)).result.dimension == 3);
    CHECK(chromatic_oracle(k3) == 3);
}

TEST_CASE("chromatic oracle on fixed graphs") {
    Graph c5;
    for (int i = 0; i < 5; ++i) c5.add_vertex("c" + std::to_string(i));
    for (int i = 0; i < 5; ++i)
        c5.add_edge("c" + std::to_string(i), "c" + std::to_string((i + 1) % 5));
    CHECK(chromatic_oracle(c5) == 3);
    CHECK(chromatic_oracle(gen_family(Family::Complete, 4)) == 4);
    CHECK(chromatic_oracle(petersen()) == 3);
    CHECK_THROWS_AS(chromatic_oracle(gen_family(Family::SquareGrid, 4)), input_error);
}

TEST_CASE("block-wise dimension") {
    // two unit triangles joined at a cut vertex
    Graph bowtie({"a", "b", "m", "c", "d"}, {Edge("m", "a"), Edge("m", "b"), Edge("a", "b"),
                                             Edge("m", "c"), Edge("m", "d"), Edge("c", "d")});
    DimOutcome bow = dim_blocks(unit(bowtie));
    REQUIRE(bow.status == DimStatus::Solved);
    CHECK(bow.result.dimension == 2);
    CHECK_NOTHROW(validate_covering(unit(bowtie), bow.result.covering));
    CHECK(verify_linf(unit(bowtie), assemble_embedding(unit(bowtie), bow.result.covering)).valid);

    MetricGraph tree;
    tree.graph = Graph({"r", "a", "b", "c"}, {Edge("r", "a"), Edge("a", "b"), Edge("a", "c")});
    tree.set("r", "a", 2);
    tree.set("a", "b", 1);
    tree.set("a", "c", 4);
    CHECK(dim_blocks(tree).result.dimension == 1);

    // the star certificate glued to a unit triangle at vertex v
    MetricGraph s2 = gen_family_certificate(Family::S, 2);
    MetricGraph mixed = s2;
    mixed.graph.add_vertex("p");
    mixed.graph.add_vertex("q");
    mixed.graph.add_edge("v", "p");
    mixed.graph.add_edge("v", "q");
    mixed.graph.add_edge("p", "q");
    mixed.set("v", "p", 1);
    mixed.set("v", "q", 1);
    mixed.set("p", "q", 1);
    REQUIRE(validate_metric(mixed).valid);
    DimOutcome md = dim_blocks(mixed);
    REQUIRE(md.status == DimStatus::Solved);
    CHECK(md.result.dimension == 3);
    CHECK(verify_linf(mixed, assemble_embedding(mixed, md.result.covering)).valid);
}

TEST_CASE("sandwich between the certified bounds on random instances") {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 20; ++t) {
        std::uniform_int_distribution<int> size(4, 7);
        Graph g = random_connected_graph(size(rng), 0.45, rng);
        MetricGraph mg = random_distance_function(g, 4200 + t);
        DimOutcome out = exact_dim(mg);
        REQUIRE(out.status == DimStatus::Solved);
        auto lb = lower_bound_incompat(mg, IncompatMode::Exact);
        VertexCoverResult tau = upper_bound_tau(g);
        CHECK(lb.first <= out.result.dimension);
        CHECK(out.result.dimension <= static_cast<int>(tau.size));
        CHECK_NOTHROW(validate_covering(mg, out.result.covering));
        CHECK(verify_linf(mg, assemble_embedding(mg, out.result.covering)).valid);
    }
}

TEST_CASE("two-sum dimension bound at fixed distances") {
    std::mt19937_64 rng(81);
    for (int t = 0; t < 6; ++t) {
        Graph g1 = random_connected_graph(5, 0.55, rng);
        Graph g2raw = random_connected_graph(5, 0.55, rng);
        Graph g2;
        for (const auto& v : g2raw.vertices()) g2.add_vertex("y" + v);
        for (const auto& e : g2raw.edges()) g2.add_edge("y" + e.u, "y" + e.v);
        Vertex s = *g1.vertices().begin();
        Vertex tt = *std::next(g1.vertices().begin());
        if (!g1.has_edge(Edge(s, tt))) g1.add_edge(s, tt);
        Vertex ys = *g2.vertices().begin();
        Vertex yt = *std::next(g2.vertices().begin());
        if (!g2.has_edge(Edge(ys, yt))) g2.add_edge(ys, yt);
        Graph g2id;
        auto rename = [&](const Vertex& v) { return v == ys ? s : v == yt ? tt : v; };
        for (const auto& v : g2.vertices()) g2id.add_vertex(rename(v));
        for (const auto& e : g2.edges()) g2id.add_edge(rename(e.u), rename(e.v));
        Graph sum = graph_sum(g1, g2id, SumKind::TwoSumKeep, s, tt);
        MetricGraph mg = random_distance_function(sum, 5000 + t);

        MetricGraph m1;
        m1.graph = g1;
        for (const auto& e : g1.edges()) m1.d[e] = mg.dist(e);
        MetricGraph m2;
        m2.graph = g2id;
        for (const auto& e : g2id.edges()) m2.d[e] = mg.dist(e);
        int whole = exact_dim(mg).result.dimension;
        int left = exact_dim(m1).result.dimension;
        int right = exact_dim(m2).result.dimension;
        CHECK(whole <= left + right - 1);
    }
}

TEST_CASE("family recognition and the supremum probe") {
    CHECK(recognize_family(gen_family(Family::S, 2)) == std::make_pair(Family::S, 2));
    CHECK(recognize_family(gen_family(Family::N, 3)) == std::make_pair(Family::N, 3));
    CHECK_FALSE(recognize_family(gen_family(Family::Wheel, 5)).has_value());

    ProbeResult k4 = sup_dim_probe(gen_family(Family::Complete, 4), 6, 99);
    CHECK(k4.best_dimension == 2);  // attained and never exceeded
    CHECK(k4.certificate_included);  // recognized as the k = 1 family member

    ProbeResult lad = sup_dim_probe(gen_family(Family::Ladder, 4), 6, 99);
    CHECK(lad.best_dimension <= 2);

    ProbeResult s2 = sup_dim_probe(gen_family(Family::S, 2), 3, 99);
    CHECK(s2.best_dimension == 3);
    CHECK(s2.certificate_included);
}

TEST_CASE("budget exhaustion reports a proven interval") {
    MetricGraph s2 = gen_family_certificate(Family::S, 2);
    Budget tiny;
    tiny.max_nodes = 3;
    DimOutcome out = exact_dim(s2, tiny);
    CHECK(out.status == DimStatus::BudgetExhausted);
    CHECK(out.lower_bound >= 1);
    CHECK(out.upper_bound >= out.lower_bound);
    CHECK_NOTHROW(validate_covering(s2, out.result.covering));
}
