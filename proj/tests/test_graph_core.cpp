#include "linfdim/graph.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace linfdim;
using linfdim::testing::exhaustive_has_model;
using linfdim::testing::random_connected_graph;

namespace {

MetricGraph unit_triangle() {
    MetricGraph mg;
    mg.graph = Graph({"a", "b", "c"}, {Edge("a", "b"), Edge("a", "c"), Edge("b", "c")});
    for (const auto& e : mg.graph.edges()) mg.d[e] = 1;
    return mg;
}

}  // namespace

TEST_CASE("metric validation on fixed triangles") {
    CHECK(validate_metric(unit_triangle()).valid);

    MetricGraph bad = unit_triangle();
    bad.set("b", "c", 3);
    MetricVerdict v = validate_metric(bad);
    CHECK_FALSE(v.valid);
    CHECK(v.violating == Edge("b", "c"));
    CHECK(v.path_weight == Rat(2));
    CHECK(v.shorter_path.size() == 3);  // b-a-c

    MetricGraph missing;
    missing.graph = unit_triangle().graph;
    CHECK_THROWS_AS(validate_metric(missing), input_error);
}

TEST_CASE("certificate distance functions are valid metrics") {
    for (Family fam : {Family::S, Family::P, Family::F, Family::N})
        for (int k = 1; k <= 8; ++k) {
            MetricGraph mg = gen_family_certificate(fam, k);
            CAPTURE(family_to_string(fam));
            CAPTURE(k);
            CHECK(validate_metric(mg).valid);
        }
}

TEST_CASE("family sizes match their definitions") {
    for (int k = 1; k <= 10; ++k) {
        Graph s = gen_family(Family::S, k);
        CHECK(s.num_vertices() == 2 * static_cast<std::size_t>(k) + 2);
        CHECK(s.num_edges() == (k == 1 ? 6 : 5 * static_cast<std::size_t>(k)));
        for (Family fam : {Family::P, Family::F, Family::N}) {
            Graph g = gen_family(fam, k);
            CHECK(g.num_vertices() == 2 * static_cast<std::size_t>(k) + 2);
            CHECK(g.num_edges() == 4 * static_cast<std::size_t>(k) + 2);
        }
    }
    // the k = 1 members collapse to the complete graph on 4 vertices
    Graph k4 = gen_family(Family::Complete, 4);
    CHECK(isomorphic(gen_family(Family::S, 1), k4));
    CHECK(isomorphic(gen_family(Family::P, 1), k4));
    CHECK(isomorphic(gen_family(Family::F, 1), k4));
    CHECK(isomorphic(gen_family(Family::N, 1), k4));

    Graph ladder = gen_family(Family::Ladder, 5);
    CHECK(ladder.num_vertices() == 10);
    CHECK(ladder.num_edges() == 13);

    CHECK(gen_family(Family::Wheel, 3).num_edges() == 6);
    CHECK_THROWS_AS(gen_family(Family::Wheel, 2), input_error);
    CHECK_THROWS_AS(gen_family_certificate(Family::Wheel, 4), input_error);
    CHECK_THROWS_AS(gen_family(Family::S, 0), input_error);
}

TEST_CASE("necklace certificate values at k = 2") {
    MetricGraph mg = gen_family_certificate(Family::N, 2);
    CHECK(mg.graph.num_vertices() == 6);
    CHECK(mg.graph.num_edges() == 10);
    CHECK(mg.dist(Edge("v1", "w1")) == Rat(3));
    CHECK(mg.dist(Edge("v0", "w1")) == Rat(2));
    CHECK(mg.dist(Edge("v0", "v1")) == Rat(1));
    CHECK(mg.dist(Edge("w0", "v2")) == Rat(1));
}

TEST_CASE("graph sums") {
    Graph k4a({"v", "w", "v1", "w1"}, {Edge("v", "w"), Edge("v", "v1"), Edge("v", "w1"),
                                       Edge("w", "v1"), Edge("w", "w1"), Edge("v1", "w1")});
    Graph k4b({"v", "w", "v2", "w2"}, {Edge("v", "w"), Edge("v", "v2"), Edge("v", "w2"),
                                       Edge("w", "v2"), Edge("w", "w2"), Edge("v2", "w2")});
    Graph s2 = graph_sum(k4a, k4b, SumKind::TwoSumDelete, "v", "w");
    CHECK(s2.num_vertices() == 6);
    CHECK(s2 == gen_family(Family::S, 2));

    Graph keep = graph_sum(k4a, k4b, SumKind::TwoSumKeep, "v", "w");
    Graph readded = s2;
    readded.add_edge("v", "w");
    CHECK(keep == readded);

    Graph t1({"a", "b", "c"}, {Edge("a", "b"), Edge("a", "c"), Edge("b", "c")});
    Graph t2({"a", "d", "e"}, {Edge("a", "d"), Edge("a", "e"), Edge("d", "e")});
    Graph bowtie = graph_sum(t1, t2, SumKind::OneSum, "a");
    CHECK(bowtie.num_vertices() == 5);
    CHECK(bowtie.num_edges() == 6);

    Graph k3({"v", "w", "z"}, {Edge("v", "w"), Edge("v", "z"), Edge("w", "z")});
    Graph glued = graph_sum(k4a, k3, SumKind::TwoSumKeep, "v", "w");
    CHECK(glued.num_vertices() == 5);
    CHECK(glued.num_edges() == 8);

    // shared structure missing
    CHECK_THROWS_AS(graph_sum(t1, k4b, SumKind::TwoSumKeep, "v", "w"), input_error);
    Graph overlap({"a", "b", "x"}, {Edge("a", "b"), Edge("a", "x"), Edge("b", "x")});
    CHECK_THROWS_AS(graph_sum(t1, overlap, SumKind::OneSum, "a"), input_error);
}

TEST_CASE("degree-2 suppression") {
    Graph path({"a", "v", "b"}, {Edge("a", "v"), Edge("v", "b")});
    Graph ab = suppress_degree2(path, "v");
    CHECK(ab.num_vertices() == 2);
    CHECK(ab.has_edge(Edge("a", "b")));

    Graph c4 = gen_family(Family::Ladder, 2);  // the 4-cycle
    CHECK(c4.num_edges() == 4);
    Graph tri = suppress_degree2(c4, "v1");
    CHECK(tri.num_vertices() == 3);
    CHECK(tri.num_edges() == 3);

    // a ladder shrinks to the triangle under repeated suppression
    Graph g = gen_family(Family::Ladder, 6);
    while (g.num_vertices() > 3) {
        Vertex pick;
        for (const auto& v : g.vertices())
            if (g.degree(v) == 2) {
                pick = v;
                break;
            }
        REQUIRE_FALSE(pick.empty());
        g = suppress_degree2(g, pick);
    }
    CHECK(isomorphic(g, Graph({"a", "b", "c"}, {Edge("a", "b"), Edge("a", "c"), Edge("b", "c")})));

    CHECK_THROWS_AS(suppress_degree2(gen_family(Family::Complete, 4), "v1"), input_error);
}

TEST_CASE("minor model search") {
    MinorSearchOptions wide;
    wide.host_cap = 20;

    auto grid4 = gen_family(Family::SquareGrid, 4);
    auto tri3 = gen_family(Family::TriGrid, 3);
    MinorSearchResult found = find_minor_model(grid4, tri3, wide);
    REQUIRE(found.status == MinorSearchStatus::Found);
    CHECK(verify_model(found.model));

    auto k4 = gen_family(Family::Complete, 4);
    auto k5 = gen_family(Family::Complete, 5);
    CHECK(find_minor_model(k4, k5).status == MinorSearchStatus::NotFound);

    auto w4 = gen_family(Family::Wheel, 4);
    MinorSearchResult wk = find_minor_model(w4, k4);
    REQUIRE(wk.status == MinorSearchStatus::Found);
    CHECK(verify_model(wk.model));

    Graph huge = gen_family(Family::Complete, 9);
    CHECK_THROWS_AS(find_minor_model(k4, huge), input_error);
}

TEST_CASE("verify_model rejects broken witnesses") {
    auto w4 = gen_family(Family::Wheel, 4);
    auto k4 = gen_family(Family::Complete, 4);
    MinorModel good = find_minor_model(w4, k4).model;
    REQUIRE(verify_model(good));

    MinorModel overlapping = good;
    Vertex stolen = *overlapping.images.begin()->second.begin();
    (++overlapping.images.begin())->second.insert(stolen);
    CHECK_FALSE(verify_model(overlapping));

    MinorModel missing_edge = good;
    missing_edge.host.remove_edge(*missing_edge.host.edges().begin());
    bool still = verify_model(missing_edge);
    // deleting a host edge can only break it
    MinorModel empty_image = good;
    empty_image.images.begin()->second.clear();
    CHECK_FALSE(verify_model(empty_image));
    (void)still;
}

TEST_CASE("search agrees with the exhaustive enumerator on small hosts") {
    std::mt19937_64 rng(7);
    auto tri = Graph({"a", "b", "c"}, {Edge("a", "b"), Edge("a", "c"), Edge("b", "c")});
    auto k4 = gen_family(Family::Complete, 4);
    int disagreements = 0;
    for (int t = 0; t < 25; ++t) {
        Graph host = linfdim::testing::random_graph(6, 0.45, rng);
        for (const Graph* pat : {&tri, &k4}) {
            MinorSearchResult r = find_minor_model(host, *pat);
            REQUIRE(r.status != MinorSearchStatus::BudgetExhausted);
            bool oracle = exhaustive_has_model(host, *pat);
            if ((r.status == MinorSearchStatus::Found) != oracle) ++disagreements;
            if (r.status == MinorSearchStatus::Found) CHECK(verify_model(r.model));
        }
    }
    CHECK(disagreements == 0);
}

TEST_CASE("outer cycle recognition") {
    Graph c5;
    for (int i = 0; i < 5; ++i) c5.add_vertex("c" + std::to_string(i));
    for (int i = 0; i < 5; ++i) c5.add_edge("c" + std::to_string(i), "c" + std::to_string((i + 1) % 5));
    auto cyc = outer_cycle(c5);
    REQUIRE(cyc.has_value());
    CHECK(cyc->size() == 5);

    // K4 is not outerplanar
    CHECK_FALSE(outer_cycle(gen_family(Family::Complete, 4)).has_value());

    // 4-cycle plus one chord is
    Graph diamond({"a", "b", "c", "d"},
                  {Edge("a", "b"), Edge("b", "c"), Edge("c", "d"), Edge("a", "d"), Edge("a", "c")});
    CHECK(outer_cycle(diamond).has_value());
}

TEST_CASE("random metrics from the closure construction are always valid") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        Graph g = random_connected_graph(7, 0.4, rng);
        MetricGraph mg = random_distance_function(g, 1000 + t);
        CHECK(validate_metric(mg).valid);
    }
}
