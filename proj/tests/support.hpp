#pragma once

// Shared fixtures for the test suites: seeded random graph generators and an
// exhaustive minor-model enumerator used as an independent cross-check.

#include "linfdim/dimension.hpp"
#include "linfdim/graph.hpp"

#include <random>

namespace linfdim::testing {

inline std::string vname(int i) { return "x" + std::to_string(i); }

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex(vname(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng) < p) g.add_edge(vname(i), vname(j));
    return g;
}

inline Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
    for (int tries = 0; tries < 10000; ++tries) {
        Graph g = random_graph(n, p, rng);
        if (g.num_edges() > 0 && is_connected(g)) return g;
    }
    throw std::runtime_error("could not sample a connected graph");
}

inline Graph random_two_connected_graph(int n, double p, std::mt19937_64& rng) {
    for (int tries = 0; tries < 20000; ++tries) {
        Graph g = random_graph(n, p, rng);
        if (is_two_connected(g)) return g;
    }
    throw std::runtime_error("could not sample a 2-connected graph");
}

inline Graph random_two_connected_min_deg3(int n, double p, std::mt19937_64& rng) {
    for (int tries = 0; tries < 50000; ++tries) {
        Graph g = random_graph(n, p, rng);
        if (!is_two_connected(g)) continue;
        bool ok = true;
        for (const auto& v : g.vertices())
            if (g.degree(v) < 3) ok = false;
        if (ok) return g;
    }
    throw std::runtime_error("could not sample a 2-connected min-degree-3 graph");
}

// cycle on n vertices plus a random non-crossing chord set: always a
// 2-connected outerplanar graph
inline Graph random_outerplanar(int n, std::mt19937_64& rng) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex(vname(i));
    for (int i = 0; i < n; ++i) g.add_edge(vname(i), vname((i + 1) % n));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    // recursive fan-style chords over random sub-polygons
    std::vector<std::pair<int, int>> stack{{0, n - 1}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        if (b - a < 2) continue;
        std::uniform_int_distribution<int> mid(a + 1, b - 1);
        int m = mid(rng);
        if (coin(rng) < 0.7) {
            if (m - a >= 2 && !g.has_edge(Edge(vname(a), vname(m)))) g.add_edge(vname(a), vname(m));
            if (b - m >= 2 && !g.has_edge(Edge(vname(m), vname(b)))) g.add_edge(vname(m), vname(b));
        }
        stack.push_back({a, m});
        stack.push_back({m, b});
    }
    return g;
}

// a wheel-based 3-connected core with planted twin classes: `twins` new
// vertices all attached to the same 3 core vertices
inline Graph random_three_connected_with_twins(int core, int twins, std::mt19937_64& rng) {
    Graph g = gen_family(Family::Wheel, core);
    std::vector<Vertex> vs(g.vertices().begin(), g.vertices().end());
    std::uniform_int_distribution<int> pick(0, static_cast<int>(vs.size()) - 1);
    int a = pick(rng), b = pick(rng), c = pick(rng);
    while (b == a) b = pick(rng);
    while (c == a || c == b) c = pick(rng);
    for (int t = 0; t < twins; ++t) {
        Vertex w = "t" + std::to_string(t);
        g.add_vertex(w);
        g.add_edge(w, vs[a]);
        g.add_edge(w, vs[b]);
        g.add_edge(w, vs[c]);
    }
    return g;
}

// brute force over all image assignments; the independent oracle for
// find_minor_model's not-found answers on hosts with <= 7 vertices
inline bool exhaustive_has_model(const Graph& host, const Graph& pattern) {
    std::vector<Vertex> hs(host.vertices().begin(), host.vertices().end());
    std::vector<Vertex> ps(pattern.vertices().begin(), pattern.vertices().end());
    std::size_t n = hs.size(), p = ps.size();
    if (p == 0) return true;
    std::vector<std::size_t> label(n, 0);  // 0 = unused, 1..p = pattern index
    while (true) {
        MinorModel m;
        m.host = host;
        m.pattern = pattern;
        for (const auto& pv : ps) m.images[pv] = {};
        for (std::size_t i = 0; i < n; ++i)
            if (label[i] > 0) m.images[ps[label[i] - 1]].insert(hs[i]);
        if (verify_model(m)) return true;
        std::size_t pos = 0;
        while (pos < n && label[pos] == p) label[pos++] = 0;
        if (pos == n) return false;
        ++label[pos];
    }
}

}  // namespace linfdim::testing
