#include "jointdisp/graph/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>

#include "jointdisp/core/errors.hpp"

namespace jd::graph {

MetricGraph::MetricGraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n), adj_(n) {
    if (n < 1 || n > kMaxVertices) throw InputError("graph needs 1 to 64 vertices, got " + std::to_string(n));
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("graph loops are not allowed");
        if (std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end()) continue;
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    dist_.assign(n * n, -1);
    for (int s = 0; s < n; ++s) {
        int* d = &dist_[s * n];
        std::queue<int> q;
        d[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj_[v])
                if (d[w] < 0) {
                    d[w] = d[v] + 1;
                    q.push(w);
                }
        }
        for (int v = 0; v < n; ++v)
            if (d[v] < 0) throw InputError("graph is not connected");
    }
}

std::vector<int> MetricGraph::interval(int u, int v) const {
    std::vector<int> out;
    for (int w = 0; w < n_; ++w)
        if (distance(u, w) + distance(w, v) == distance(u, v)) out.push_back(w);
    return out;
}

MetricGraph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return MetricGraph(n, e);
}

MetricGraph cycle_graph(int n) {
    if (n < 3) throw InputError("cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return MetricGraph(n, e);
}

MetricGraph grid_graph(int rows, int cols) {
    if (rows < 1 || cols < 1) throw InputError("grid needs positive sides");
    std::vector<std::pair<int, int>> e;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.emplace_back(r * cols + c, r * cols + c + 1);
            if (r + 1 < rows) e.emplace_back(r * cols + c, (r + 1) * cols + c);
        }
    return MetricGraph(rows * cols, e);
}

MetricGraph random_tree(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < n; ++v) e.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
    return MetricGraph(n, e);
}

MetricGraph random_graph(int n, double p, std::uint64_t seed) {
    if (!(p > 0 && p <= 1)) throw InputError("edge probability must be in (0, 1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (coin(rng)) e.emplace_back(u, v);
        try {
            return MetricGraph(n, e);
        } catch (const InputError&) {
        }
    }
    throw InputError("no connected G(n, p) sample in 1000 draws; raise p");
}

double four_point_delta(const MetricGraph& g) {
    int n = g.size(), best = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    int s[3] = {g.distance(a, b) + g.distance(c, d), g.distance(a, c) + g.distance(b, d),
                                g.distance(a, d) + g.distance(b, c)};
                    std::sort(s, s + 3);
                    best = std::max(best, s[2] - s[1]);
                }
    return best / 2.0;
}

SlimDelta slim_delta(const MetricGraph& g) {
    const int n = g.size();
    // far[(p n + y) n + z]: largest d(p, σ) over geodesics σ from y to z, by a max-min pass over the BFS DAG of y
    std::vector<int> far(n * n * n);
    std::vector<std::vector<int>> order(n);
    for (int y = 0; y < n; ++y) {
        order[y].resize(n);
        std::iota(order[y].begin(), order[y].end(), 0);
        std::stable_sort(order[y].begin(), order[y].end(),
                         [&](int a, int b) { return g.distance(y, a) < g.distance(y, b); });
    }
    for (int p = 0; p < n; ++p)
        for (int y = 0; y < n; ++y) {
            int* f = &far[(p * n + y) * n];
            for (int v : order[y]) {
                if (v == y) {
                    f[v] = g.distance(p, y);
                    continue;
                }
                int up = -1;
                for (int w : g.neighbours(v))
                    if (g.distance(y, w) + 1 == g.distance(y, v)) up = std::max(up, f[w]);
                f[v] = std::min(g.distance(p, v), up);
            }
        }
    SlimDelta out;
    std::vector<std::vector<int>> intervals(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) intervals[x * n + y] = g.interval(x, y);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int p : intervals[x * n + y]) {
                    // p on a side [x, y]; the other sides run y → z and x → z
                    int v = std::min(far[(p * n + y) * n + z], far[(p * n + x) * n + z]);
                    if (v > out.value) out = {v, true, x, y, z};
                }
    return out;
}

bool ConvexSet::contains(int v) const { return std::binary_search(v_.begin(), v_.end(), v); }

ConvexSet convex_hull(const MetricGraph& g, const std::vector<int>& seed) {
    if (seed.empty()) throw InputError("convex hull of an empty set");
    std::vector<char> in(g.size(), 0);
    for (int v : seed) {
        if (v < 0 || v >= g.size()) throw InputError("hull vertex out of range");
        in[v] = 1;
    }
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<int> cur;
        for (int v = 0; v < g.size(); ++v)
            if (in[v]) cur.push_back(v);
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j)
                for (int w : g.interval(cur[i], cur[j]))
                    if (!in[w]) in[w] = 1, grew = true;
    }
    ConvexSet c;
    for (int v = 0; v < g.size(); ++v)
        if (in[v]) c.v_.push_back(v);
    return c;
}

bool is_convex(const MetricGraph& g, const std::vector<int>& vertices) {
    std::vector<char> in(g.size(), 0);
    for (int v : vertices) in[v] = 1;
    for (int u : vertices)
        for (int v : vertices)
            for (int w : g.interval(u, v))
                if (!in[w]) return false;
    return true;
}

int helly_min_radius(const MetricGraph& g, const std::vector<ConvexSet>& sets) {
    if (sets.empty()) throw InputError("helly_min_radius needs at least one set");
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            const auto& a = sets[i].vertices();
            if (std::none_of(a.begin(), a.end(), [&](int v) { return sets[j].contains(v); }))
                throw InputError("convex sets " + std::to_string(i) + " and " + std::to_string(j) + " do not meet");
        }
    int best = g.size();
    for (int w = 0; w < g.size(); ++w) {
        int worst = 0;
        for (const auto& c : sets) {
            int d = g.size();
            for (int v : c.vertices()) d = std::min(d, g.distance(w, v));
            worst = std::max(worst, d);
        }
        best = std::min(best, worst);
    }
    return best;
}

}  // namespace jd::graph
