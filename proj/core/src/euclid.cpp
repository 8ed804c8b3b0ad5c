#include "linfdim/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace linfdim {

namespace {
std::string tri_name(int i, int j) { return "v" + std::to_string(i) + "," + std::to_string(j); }
std::string grid_name(int i, int j) { return "v" + std::to_string(i) + "," + std::to_string(j); }
}  // namespace

MetricGraph TriGridEmbedding::rationalized(const Int& denominator) const {
    MetricGraph mg;
    mg.graph = graph;
    for (const auto& [e, sq] : squared) {
        Int num = ceil_sqrt_scaled(sq, denominator);
        mg.d[e] = Rat(num, denominator);
    }
    return mg;
}

TriGridEmbedding tri_grid_embedding(int r) {
    if (r < 2) throw input_error("triangular grid embedding needs r >= 2");
    TriGridEmbedding out;
    out.graph = gen_family(Family::TriGrid, r);

    // row 1 maps to the standard basis; every deeper vertex is the midpoint
    // of its two upper neighbors
    for (int j = 1; j <= r; ++j) {
        std::vector<Rat> e(r, Rat(0));
        e[j - 1] = 1;
        out.coords_exact[tri_name(1, j)] = std::move(e);
    }
    for (int i = 2; i <= r; ++i)
        for (int j = i; j <= r; ++j) {
            const auto& a = out.coords_exact.at(tri_name(i - 1, j - 1));
            const auto& b = out.coords_exact.at(tri_name(i - 1, j));
            std::vector<Rat> mid(r);
            for (int t = 0; t < r; ++t) mid[t] = (a[t] + b[t]) / 2;
            out.coords_exact[tri_name(i, j)] = std::move(mid);
        }

    out.embedding.dim = static_cast<std::size_t>(r);
    for (const auto& [v, exact] : out.coords_exact) {
        std::vector<double> c(exact.size());
        for (std::size_t t = 0; t < exact.size(); ++t) c[t] = rat_to_double(exact[t]);
        out.embedding.coords[v] = std::move(c);
    }
    for (const auto& e : out.graph.edges()) {
        const auto& a = out.coords_exact.at(e.u);
        const auto& b = out.coords_exact.at(e.v);
        Rat sq(0);
        for (int t = 0; t < r; ++t) sq += (a[t] - b[t]) * (a[t] - b[t]);
        out.squared[e] = sq;
        out.lengths[e] = std::sqrt(rat_to_double(sq));
    }
    return out;
}

L2Verdict verify_l2(const Graph& g, const std::map<Edge, double>& d, const L2Embedding& emb,
                    double tol) {
    for (const auto& v : g.vertices()) {
        auto it = emb.coords.find(v);
        if (it == emb.coords.end() || it->second.size() != emb.dim)
            throw input_error("embedding not defined on vertex '" + v + "'");
    }
    L2Verdict verdict;
    for (const auto& e : g.edges()) {
        auto it = d.find(e);
        if (it == d.end()) throw input_error("missing distance on edge " + to_string(e));
        const auto& pu = emb.coords.at(e.u);
        const auto& pv = emb.coords.at(e.v);
        double sq = 0;
        for (std::size_t t = 0; t < emb.dim; ++t) sq += (pu[t] - pv[t]) * (pu[t] - pv[t]);
        double err = std::abs(std::sqrt(sq) - it->second);
        if (err > verdict.error) {
            verdict.error = err;
            verdict.worst = e;
        }
    }
    verdict.valid = verdict.error <= tol;
    return verdict;
}

L2Verdict verify_l2(const MetricGraph& mg, const L2Embedding& emb, double tol) {
    std::map<Edge, double> d;
    for (const auto& [e, w] : mg.d) d[e] = rat_to_double(w);
    return verify_l2(mg.graph, d, emb, tol);
}

SimplexReport simplex_check(int r) {
    if (r < 2) throw input_error("simplex check needs r >= 2");
    TriGridEmbedding grid = tri_grid_embedding(r);
    SimplexReport rep;
    for (int j = 1; j <= r; ++j) rep.points.push_back(tri_name(1, j));
    rep.distances.assign(r, std::vector<double>(r, 0.0));
    const double root2 = std::sqrt(2.0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            const auto& a = grid.embedding.coords.at(rep.points[i]);
            const auto& b = grid.embedding.coords.at(rep.points[j]);
            double sq = 0;
            for (std::size_t t = 0; t < a.size(); ++t) sq += (a[t] - b[t]) * (a[t] - b[t]);
            rep.distances[i][j] = std::sqrt(sq);
            rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.distances[i][j] - root2));
        }
    return rep;
}

// ---------------------------------------------------------------------------
// rigidity probe

namespace {

struct StressProblem {
    std::vector<std::pair<int, int>> edges;
    std::vector<double> target;
    int n, dim;

    double stress(const std::vector<double>& x) const {
        double s = 0;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [a, b] = edges[e];
            double sq = 0;
            for (int t = 0; t < dim; ++t) {
                double diff = x[a * dim + t] - x[b * dim + t];
                sq += diff * diff;
            }
            double gap = std::sqrt(sq) - target[e];
            s += gap * gap;
        }
        return s;
    }

    void gradient(const std::vector<double>& x, std::vector<double>& g) const {
        std::fill(g.begin(), g.end(), 0.0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [a, b] = edges[e];
            double sq = 0;
            for (int t = 0; t < dim; ++t) {
                double diff = x[a * dim + t] - x[b * dim + t];
                sq += diff * diff;
            }
            double len = std::sqrt(sq);
            if (len < 1e-12) continue;
            double coef = 2.0 * (len - target[e]) / len;
            for (int t = 0; t < dim; ++t) {
                double diff = x[a * dim + t] - x[b * dim + t];
                g[a * dim + t] += coef * diff;
                g[b * dim + t] -= coef * diff;
            }
        }
    }

    // gradient descent with a backtracking/adaptive step
    double minimize(std::vector<double>& x, int iterations) const {
        std::vector<double> g(x.size()), trial(x.size());
        double step = 0.05;
        double cur = stress(x);
        for (int it = 0; it < iterations && cur > 1e-24; ++it) {
            gradient(x, g);
            double gnorm = 0;
            for (double v : g) gnorm += v * v;
            if (gnorm < 1e-28) break;
            while (step > 1e-14) {
                for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - step * g[i];
                double cand = stress(trial);
                if (cand < cur) {
                    x.swap(trial);
                    cur = cand;
                    step *= 1.2;
                    break;
                }
                step *= 0.5;
            }
            if (step <= 1e-14) break;
        }
        return cur;
    }
};

}  // namespace

StressProbe rigidity_probe(int r, int target_dim, int attempts, std::uint64_t seed) {
    if (r < 2) throw input_error("rigidity probe needs r >= 2");
    if (target_dim < 1) throw input_error("target dimension must be positive");
    TriGridEmbedding grid = tri_grid_embedding(r);

    std::vector<Vertex> names(grid.graph.vertices().begin(), grid.graph.vertices().end());
    std::map<Vertex, int> ix;
    for (std::size_t i = 0; i < names.size(); ++i) ix[names[i]] = static_cast<int>(i);

    StressProblem prob;
    prob.n = static_cast<int>(names.size());
    prob.dim = target_dim;
    for (const auto& e : grid.graph.edges()) {
        prob.edges.push_back({ix[e.u], ix[e.v]});
        prob.target.push_back(grid.lengths.at(e));
    }

    StressProbe out;
    double best = std::numeric_limits<double>::infinity();

    // warm start: the known embedding lives in an (r-1)-dimensional affine
    // hull, so project it whenever the target dimension allows
    if (target_dim >= r - 1) {
        std::vector<std::vector<double>> basis;
        const auto& origin = grid.embedding.coords.at(tri_name(1, 1));
        for (int j = 2; j <= r; ++j) {
            std::vector<double> dir(r);
            const auto& pj = grid.embedding.coords.at(tri_name(1, j));
            for (int t = 0; t < r; ++t) dir[t] = pj[t] - origin[t];
            for (const auto& b : basis) {
                double dot = 0;
                for (int t = 0; t < r; ++t) dot += dir[t] * b[t];
                for (int t = 0; t < r; ++t) dir[t] -= dot * b[t];
            }
            double norm = 0;
            for (double v : dir) norm += v * v;
            norm = std::sqrt(norm);
            if (norm > 1e-12) {
                for (double& v : dir) v /= norm;
                basis.push_back(std::move(dir));
            }
        }
        std::vector<double> x(prob.n * target_dim, 0.0);
        for (int i = 0; i < prob.n; ++i) {
            const auto& pv = grid.embedding.coords.at(names[i]);
            for (std::size_t b = 0; b < basis.size() && b < static_cast<std::size_t>(target_dim);
                 ++b) {
                double dot = 0;
                for (int t = 0; t < r; ++t) dot += (pv[t] - origin[t]) * basis[b][t];
                x[i * target_dim + b] = dot;
            }
        }
        best = std::min(best, prob.minimize(x, 500));
        ++out.attempts;
    }

    for (int a = 0; a < attempts; ++a) {
        std::mt19937_64 rng(seed + a);
        std::uniform_real_distribution<double> coord(-1.5, 1.5);
        std::vector<double> x(prob.n * target_dim);
        for (double& v : x) v = coord(rng);
        best = std::min(best, prob.minimize(x, 3000));
        ++out.attempts;
    }
    out.best_residual = std::sqrt(std::max(best, 0.0));
    return out;
}

// ---------------------------------------------------------------------------
// triangular grid inside the square grid

MinorModel tri_in_square_model(int k) {
    if (k < 1) throw input_error("triangular-in-square model needs k >= 1");
    int r = k + 2;
    int n = 2 * k + 2;  // grid order, equals 2r - 2

    MinorModel m;
    m.host = gen_family(Family::SquareGrid, n);
    m.pattern = gen_family(Family::TriGrid, r);

    // 0-indexed band layout: level 1 owns row 0 (plus spikes into row 1),
    // levels 2..r-1 own row pairs {2i-3, 2i-2}, level r owns row 2r-3;
    // columns mirror the rows. Host names are 1-indexed.
    auto cell = [&](int row, int col) { return grid_name(row + 1, col + 1); };
    auto image = [&](int i, int j) {
        std::set<Vertex> img;
        if (i == 1) {
            if (j == 1) {
                img.insert(cell(0, 0));
            } else if (j < r) {
                img.insert(cell(1, 2 * j - 3));
                img.insert(cell(0, 2 * j - 3));
                img.insert(cell(0, 2 * j - 2));
            } else {
                img.insert(cell(0, 2 * r - 3));
                img.insert(cell(1, 2 * r - 3));
            }
        } else if (i == j) {
            if (i < r) {
                img.insert(cell(2 * i - 3, 0));
                img.insert(cell(2 * i - 2, 0));
            } else {
                img.insert(cell(2 * r - 3, 0));
            }
        } else {
            // staircase descending left out of the (i,j) block
            img.insert(cell(2 * i - 1, 2 * (j - i) - 1));
            img.insert(cell(2 * i - 2, 2 * (j - i) - 1));
            img.insert(cell(2 * i - 2, 2 * (j - i)));
            img.insert(cell(2 * i - 3, 2 * (j - i)));
        }
        return img;
    };
    for (int i = 1; i <= r; ++i)
        for (int j = i; j <= r; ++j) m.images[tri_name(i, j)] = image(i, j);
    return m;
}

}  // namespace linfdim
